#pragma once

#include <initializer_list>
#include <tuple>

#include "ncreeb/domain.hpp"
#include "ncreeb/leveled_graph.hpp"

namespace fx {

using ncreeb::Rational;

inline ncreeb::BandSpec bands(std::initializer_list<std::tuple<long, long, unsigned>> b, long cx = 0, long cy = 0,
                              long radius = 10) {
  ncreeb::BandSpec s;
  for (auto [lo, hi, n] : b) s.bands.push_back({Rational(lo), Rational(hi), n});
  s.outer_center = {Rational(cx), Rational(cy)};
  s.outer_radius = radius;
  return s;
}

inline ncreeb::NCDomain band_domain(long lo, long hi, unsigned holes, long cx = 0, long radius = 10) {
  return ncreeb::build_band_domain(bands({{lo, hi, holes}}, cx, 0, radius));
}

// Path with one vertex per level.
inline ncreeb::LeveledGraph path(std::initializer_list<long> levels) {
  ncreeb::LeveledGraph g;
  for (long l : levels) g.add_vertex(Rational(l));
  for (std::size_t v = 1; v < g.num_vertices(); ++v) g.add_edge(v - 1, v);
  return g;
}

// Min at lo, split at a, merge at b, max at hi; `sheets` parallel edges in between.
inline ncreeb::LeveledGraph theta(Rational lo, Rational a, Rational b, Rational hi, unsigned sheets = 2) {
  ncreeb::LeveledGraph g;
  g.add_vertex(lo);
  g.add_vertex(a);
  g.add_vertex(b);
  g.add_vertex(hi);
  g.add_edge(0, 1);
  for (unsigned i = 0; i < sheets; ++i) g.add_edge(1, 2);
  g.add_edge(2, 3);
  return g;
}

inline ncreeb::LeveledGraph proper_k22() {
  ncreeb::LeveledGraph g;
  for (int i = 0; i < 2; ++i) g.add_vertex(Rational(0));
  for (int i = 0; i < 2; ++i) g.add_vertex(Rational(1));
  g.add_edge(0, 2);
  g.add_edge(0, 3);
  g.add_edge(1, 2);
  g.add_edge(1, 3);
  return g;
}

}  // namespace fx
