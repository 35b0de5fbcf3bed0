#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "ncreeb/algebraic.hpp"
#include "ncreeb/domain.hpp"
#include "ncreeb/leveled_graph.hpp"
#include "ncreeb/planarity.hpp"

namespace ncreeb {

// Line-oriented text formats. Every file starts with "kind: <name>" and
// "version: 1"; rationals are written as num/den. The writers are canonical,
// so serialize(parse(s)) == s for any s produced by a writer.

std::string serialize(const NCDomain& d);
std::string serialize(const BandSpec& s);
std::string serialize(const LeveledGraph& g);
std::string serialize(const AlgebraicModel& m);

/// Value of the "kind:" header, or ParseError when it is missing.
std::string file_kind(std::string_view text);

// The parsers collect every schema violation, each prefixed with its line
// number, and throw them together as one ParseError.
NCDomain parse_domain(std::string_view text);
BandSpec parse_band_spec(std::string_view text);
LeveledGraph parse_graph(std::string_view text);
AlgebraicModel parse_model(std::string_view text);

using SpecObject = std::variant<NCDomain, BandSpec, LeveledGraph, AlgebraicModel>;
SpecObject parse_spec(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view text);

struct DotOptions {
  std::string name = "reeb";
  /// Highlighted in red; edges of every path and all branch vertices.
  std::optional<KuratowskiWitness> witness;
};

/// Graphviz source with level increasing left to right and one rank per level.
std::string to_dot(const LeveledGraph& g, const DotOptions& opts = {});

}  // namespace ncreeb
