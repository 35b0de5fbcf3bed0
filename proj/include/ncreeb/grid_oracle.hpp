#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ncreeb/domain.hpp"
#include "ncreeb/leveled_graph.hpp"

namespace ncreeb {

struct GridBox {
  std::vector<double> lo;
  std::vector<double> hi;
};

struct GridOptions {
  std::optional<GridBox> box;  // default: inside-positive circle bounds padded by 5%
  std::size_t resolution = 400;
  double eps_scale = 0.25;    // marking tolerance as a multiple of the cell diagonal
  bool snap = true;
  double snap_window = 1.0;   // in slab widths
  bool parallel = true;
};

/// Occupancy of a regular grid; axis 0 is the slab axis and varies slowest.
struct GridMask {
  std::vector<std::size_t> shape;
  std::vector<double> lo, step;
  std::vector<std::uint8_t> cells;

  std::size_t slab_size() const;
};

/// Per-slab component labels (-1 for empty cells) and component counts.
struct SlabLabels {
  std::vector<std::int32_t> label;
  std::vector<std::int32_t> count;
  bool operator==(const SlabLabels&) const = default;
};

GridBox default_box(const NCDomain& d);

GridMask grid_mask(const NCDomain& d, const GridBox& box, std::size_t resolution, double eps_scale,
                   bool parallel);

/// Face-adjacent union-find inside each slab. Labels are numbered by first
/// occurrence in cell order, so both kernels produce identical output.
SlabLabels label_slabs_serial(const GridMask& m);
SlabLabels label_slabs_parallel(const GridMask& m);

/// Slab graph: a node per slab component, an edge per adjacent pair across
/// consecutive slabs. Levels are slab indices.
LeveledGraph slab_graph(const GridMask& m, const SlabLabels& l);

/// Independent numeric Reeb graph of the first-coordinate projection in
/// dimension 2 or 3. Levels are snapped to the exact circle extreme levels
/// when snapping is on; otherwise they are slab-boundary estimates.
LeveledGraph reeb_grid_oracle(const NCDomain& d, const GridOptions& opts = {});

}  // namespace ncreeb
