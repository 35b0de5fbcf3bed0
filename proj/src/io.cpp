#include "ncreeb/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ncreeb/error.hpp"

namespace ncreeb {

namespace {

constexpr const char* kVersion = "1";

void header(std::ostringstream& os, const char* kind) { os << "kind: " << kind << "\nversion: " << kVersion << "\n"; }

void write_poly(std::ostringstream& os, const char* tag, const Polynomial& p) {
  os << tag << "\n";
  for (const auto& [e, c] : p.terms()) {
    os << "term " << to_string(c);
    for (auto x : e) os << ' ' << x;
    os << "\n";
  }
}

void write_neighborhood(std::ostringstream& os, const Neighborhood& n) {
  if (const auto* b = std::get_if<Ball>(&n)) {
    os << "neighborhood ball " << to_string(b->radius);
    for (const auto& c : b->center) os << ' ' << to_string(c);
    os << "\n";
  } else {
    os << "neighborhood whole\n";
  }
}

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
  std::string rest;  // text after the first token
};

// Tokenised body of a file after its two header lines, plus the violation log.
class Reader {
public:
  Reader(std::string_view text, const char* expected) {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t n = 0;
    std::vector<Line> all;
    while (std::getline(in, raw)) {
      ++n;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      if (raw.empty() || raw[0] == '#') continue;
      Line l{n, {}, {}};
      std::istringstream ls(raw);
      for (std::string t; ls >> t;) l.tokens.push_back(t);
      if (l.tokens.empty()) continue;
      const auto sp = raw.find(' ');
      l.rest = sp == std::string::npos ? "" : raw.substr(sp + 1);
      all.push_back(std::move(l));
    }
    if (all.size() < 2 || all[0].tokens.size() != 2 || all[0].tokens[0] != "kind:") {
      fail(all.empty() ? 1 : all[0].number, "missing 'kind:' header");
    } else if (all[0].tokens[1] != expected) {
      fail(all[0].number, "kind is '" + all[0].tokens[1] + "', expected '" + expected + "'");
    }
    if (all.size() < 2 || all[1].tokens.size() != 2 || all[1].tokens[0] != "version:") {
      fail(all.size() < 2 ? 1 : all[1].number, "missing 'version:' header");
    } else if (all[1].tokens[1] != kVersion) {
      fail(all[1].number, "unsupported version '" + all[1].tokens[1] + "'");
    }
    if (all.size() > 2) lines.assign(all.begin() + 2, all.end());
  }

  void fail(std::size_t line, const std::string& msg) {
    violations.push_back("line " + std::to_string(line) + ": " + msg);
  }

  std::optional<Rational> rational(const Line& l, std::size_t i, const char* field) {
    if (i >= l.tokens.size()) {
      fail(l.number, std::string("missing ") + field);
      return std::nullopt;
    }
    try {
      return parse_rational(l.tokens[i]);
    } catch (const InvalidArgument&) {
      fail(l.number, std::string(field) + ": malformed rational '" + l.tokens[i] + "'");
      return std::nullopt;
    }
  }

  std::optional<std::size_t> count(const Line& l, std::size_t i, const char* field) {
    if (i >= l.tokens.size()) {
      fail(l.number, std::string("missing ") + field);
      return std::nullopt;
    }
    const auto& t = l.tokens[i];
    if (t.empty() || t.size() > 9 || t.find_first_not_of("0123456789") != std::string::npos) {
      fail(l.number, std::string(field) + ": expected a non-negative integer, got '" + t + "'");
      return std::nullopt;
    }
    return std::stoul(t);
  }

  bool arity(const Line& l, std::size_t n) {
    if (l.tokens.size() == n) return true;
    fail(l.number, "'" + l.tokens[0] + "' takes " + std::to_string(n - 1) + " fields, got " +
                       std::to_string(l.tokens.size() - 1));
    return false;
  }

  // Terms of a polynomial over nvars variables.
  void term(const Line& l, Polynomial::TermMap& terms, std::size_t nvars) {
    if (l.tokens.size() != nvars + 2) {
      fail(l.number, "term needs a coefficient and " + std::to_string(nvars) + " exponents");
      return;
    }
    auto c = rational(l, 1, "coefficient");
    Exponents e;
    for (std::size_t i = 0; i < nvars; ++i) {
      auto x = count(l, i + 2, "exponent");
      if (!x) return;
      e.push_back(static_cast<std::uint32_t>(*x));
    }
    if (!c) return;
    if (*c == 0) fail(l.number, "zero coefficient");
    if (!terms.emplace(e, *c).second) fail(l.number, "repeated monomial");
  }

  void finish() {
    if (!violations.empty()) throw ParseError(violations);
  }

  std::vector<Line> lines;
  std::vector<std::string> violations;
};

std::vector<std::string> layout_names(std::size_t k, const std::vector<std::size_t>& dims) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back("x" + std::to_string(i + 1));
  for (std::size_t b = 0; b < dims.size(); ++b)
    for (std::size_t j = 0; j < dims[b]; ++j) out.push_back("y" + std::to_string(b + 1) + "." + std::to_string(j + 1));
  return out;
}

std::optional<Neighborhood> read_neighborhood(Reader& r, const Line& l, std::size_t dim) {
  if (l.tokens.size() == 2 && l.tokens[1] == "whole") return WholeSpace{};
  if (l.tokens.size() >= 2 && l.tokens[1] == "ball") {
    if (l.tokens.size() != 3 + dim) {
      r.fail(l.number, "ball needs a radius and " + std::to_string(dim) + " centre coordinates");
      return std::nullopt;
    }
    Ball b;
    auto rad = r.rational(l, 2, "radius");
    for (std::size_t i = 0; i < dim; ++i) {
      auto c = r.rational(l, 3 + i, "centre");
      if (!c) return std::nullopt;
      b.center.push_back(*c);
    }
    if (!rad) return std::nullopt;
    b.radius = *rad;
    return b;
  }
  r.fail(l.number, "neighborhood must be 'whole' or 'ball <radius> <centre>'");
  return std::nullopt;
}

}  // namespace

std::string serialize(const NCDomain& d) {
  if (d.provenance.find('\n') != std::string::npos) throw InvalidArgument("provenance must be a single line");
  std::ostringstream os;
  header(os, "domain");
  os << "ambient_dim " << d.ambient_dim << "\n";
  write_neighborhood(os, d.neighborhood);
  if (!d.provenance.empty()) os << "provenance " << d.provenance << "\n";
  for (const auto& c : d.constraints) write_poly(os, "constraint", c);
  for (const auto& [i, j] : d.expected_intersections) os << "intersect " << i << ' ' << j << "\n";
  return os.str();
}

NCDomain parse_domain(std::string_view text) {
  Reader r(text, "domain");
  NCDomain d;
  std::optional<std::size_t> dim;
  std::optional<Polynomial::TermMap> current;
  std::vector<Polynomial::TermMap> polys;
  bool have_neighborhood = false;
  auto flush = [&] {
    if (current) polys.push_back(std::move(*current));
    current.reset();
  };
  for (const auto& l : r.lines) {
    const auto& key = l.tokens[0];
    if (key == "term") {
      if (!current) {
        r.fail(l.number, "term outside a constraint");
      } else if (dim) {
        r.term(l, *current, *dim);
      }
      continue;
    }
    flush();
    if (key == "ambient_dim") {
      if (r.arity(l, 2)) dim = r.count(l, 1, "ambient_dim");
      if (dim && *dim == 0) {
        r.fail(l.number, "ambient_dim must be positive");
        dim.reset();
      }
      if (dim) d.ambient_dim = *dim;
    } else if (key == "neighborhood") {
      if (!dim) {
        r.fail(l.number, "neighborhood before ambient_dim");
        continue;
      }
      if (auto n = read_neighborhood(r, l, *dim)) d.neighborhood = *n;
      have_neighborhood = true;
    } else if (key == "provenance") {
      d.provenance = l.rest;
    } else if (key == "constraint") {
      if (r.arity(l, 1)) current.emplace();
    } else if (key == "intersect") {
      if (!r.arity(l, 3)) continue;
      auto i = r.count(l, 1, "first index"), j = r.count(l, 2, "second index");
      if (i && j) d.expected_intersections.push_back({*i, *j});
    } else {
      r.fail(l.number, "unknown field '" + key + "'");
    }
  }
  flush();
  if (!dim) r.violations.push_back("ambient_dim is missing");
  if (!have_neighborhood) r.violations.push_back("neighborhood is missing");
  if (r.violations.empty()) {
    for (std::size_t i = 0; i < polys.size(); ++i) {
      if (polys[i].empty()) r.violations.push_back("constraint " + std::to_string(i) + " is the zero polynomial");
      d.constraints.emplace_back(d.ambient_dim, std::move(polys[i]));
    }
    try {
      d.validate();
    } catch (const Error& e) {
      r.violations.push_back(e.what());
    }
  }
  r.finish();
  return d;
}

std::string serialize(const BandSpec& s) {
  std::ostringstream os;
  header(os, "bandspec");
  os << "outer_center " << to_string(s.outer_center.at(0)) << ' ' << to_string(s.outer_center.at(1)) << "\n";
  os << "outer_radius " << to_string(s.outer_radius) << "\n";
  for (const auto& b : s.bands) os << "band " << to_string(b.t_lo) << ' ' << to_string(b.t_hi) << ' ' << b.holes << "\n";
  return os.str();
}

BandSpec parse_band_spec(std::string_view text) {
  Reader r(text, "bandspec");
  BandSpec s;
  for (const auto& l : r.lines) {
    const auto& key = l.tokens[0];
    if (key == "outer_center") {
      if (!r.arity(l, 3)) continue;
      auto x = r.rational(l, 1, "x"), y = r.rational(l, 2, "y");
      if (x && y) s.outer_center = {*x, *y};
    } else if (key == "outer_radius") {
      if (!r.arity(l, 2)) continue;
      if (auto v = r.rational(l, 1, "outer_radius")) {
        if (sgn(*v) <= 0) r.fail(l.number, "outer_radius must be positive");
        s.outer_radius = *v;
      }
    } else if (key == "band") {
      if (!r.arity(l, 4)) continue;
      auto lo = r.rational(l, 1, "t_lo"), hi = r.rational(l, 2, "t_hi");
      auto n = r.count(l, 3, "holes");
      if (!lo || !hi || !n) continue;
      if (*lo >= *hi) r.fail(l.number, "band needs t_lo < t_hi");
      if (*n == 0) r.fail(l.number, "band needs at least one hole");
      s.bands.push_back({*lo, *hi, static_cast<unsigned>(*n)});
    } else {
      r.fail(l.number, "unknown field '" + key + "'");
    }
  }
  if (s.bands.empty()) r.violations.push_back("no bands");
  r.finish();
  return s;
}

std::string serialize(const LeveledGraph& g) {
  std::ostringstream os;
  header(os, "graph");
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    os << "vertex " << v << ' ' << to_string(g.level(v)) << (g.vertex(v).essential ? " essential" : " plain") << "\n";
  for (std::size_t e = 0; e < g.num_edges(); ++e)
    os << "edge " << e << ' ' << g.edge(e).lower << ' ' << g.edge(e).upper << "\n";
  return os.str();
}

LeveledGraph parse_graph(std::string_view text) {
  Reader r(text, "graph");
  LeveledGraph g;
  bool edges_started = false;
  std::size_t vertex_lines = 0, edge_lines = 0;
  for (const auto& l : r.lines) {
    const auto& key = l.tokens[0];
    if (key == "vertex") {
      if (edges_started) r.fail(l.number, "vertices must precede edges");
      if (l.tokens.size() != 3 && l.tokens.size() != 4) {
        r.fail(l.number, "vertex takes an id, a level and optionally 'essential' or 'plain'");
        continue;
      }
      auto id = r.count(l, 1, "vertex id");
      auto level = r.rational(l, 2, "level");
      bool essential = true;
      if (l.tokens.size() == 4) {
        if (l.tokens[3] == "plain") {
          essential = false;
        } else if (l.tokens[3] != "essential") {
          r.fail(l.number, "vertex flag must be 'essential' or 'plain'");
        }
      }
      const auto expected = vertex_lines++;
      if (!id || !level) continue;
      if (*id != expected) {
        r.fail(l.number, "vertex id " + std::to_string(*id) + " out of sequence, expected " + std::to_string(expected));
        continue;
      }
      g.add_vertex(*level, essential);
    } else if (key == "edge") {
      edges_started = true;
      const auto expected = edge_lines++;
      if (!r.arity(l, 4)) continue;
      auto id = r.count(l, 1, "edge id");
      auto a = r.count(l, 2, "endpoint"), b = r.count(l, 3, "endpoint");
      if (!id || !a || !b) continue;
      const std::string name = "edge " + std::to_string(*id);
      if (*id != expected) {
        r.fail(l.number, name + " out of sequence, expected " + std::to_string(expected));
        continue;
      }
      if (*a >= g.num_vertices() || *b >= g.num_vertices()) {
        r.fail(l.number, name + " refers to a missing vertex");
        continue;
      }
      if (g.level(*a) == g.level(*b)) {
        r.fail(l.number, name + " joins vertices " + std::to_string(*a) + " and " + std::to_string(*b) +
                             " at the same level " + to_string(g.level(*a)));
        continue;
      }
      if (g.level(*a) > g.level(*b)) {
        r.fail(l.number, name + " must list its lower endpoint first");
        continue;
      }
      g.add_edge(*a, *b);
    } else {
      r.fail(l.number, "unknown field '" + key + "'");
    }
  }
  if (r.violations.empty()) {
    try {
      g.validate();
    } catch (const Error& e) {
      r.violations.push_back(e.what());
    }
  }
  r.finish();
  return g;
}

std::string serialize(const AlgebraicModel& m) {
  std::ostringstream os;
  header(os, "model");
  os << "k " << m.k << "\nl " << m.l << "\nm " << m.m << "\ndims";
  for (auto d : m.dims) os << ' ' << d;
  os << "\nlayout";
  for (const auto& name : layout_names(m.k, m.dims)) os << ' ' << name;
  os << "\n";
  write_neighborhood(os, m.neighborhood);
  for (const auto& f : m.base) write_poly(os, "base", f);
  for (const auto& F : m.system) write_poly(os, "equation", F);
  return os.str();
}

AlgebraicModel parse_model(std::string_view text) {
  Reader r(text, "model");
  AlgebraicModel m;
  std::optional<std::size_t> k, l, dim_m;
  std::vector<std::size_t> dims;
  std::vector<Polynomial::TermMap> base, eqs;
  Polynomial::TermMap* current = nullptr;
  std::size_t current_vars = 0;
  std::optional<std::size_t> layout_line;
  std::vector<std::string> layout;
  for (const auto& line : r.lines) {
    const auto& key = line.tokens[0];
    if (key == "term") {
      if (!current) {
        r.fail(line.number, "term outside a polynomial");
      } else {
        r.term(line, *current, current_vars);
      }
      continue;
    }
    current = nullptr;
    if (key == "k" || key == "l" || key == "m") {
      if (!r.arity(line, 2)) continue;
      auto v = r.count(line, 1, key.c_str());
      (key == "k" ? k : key == "l" ? l : dim_m) = v;
    } else if (key == "dims") {
      for (std::size_t i = 1; i < line.tokens.size(); ++i)
        if (auto d = r.count(line, i, "dims")) {
          if (*d == 0) r.fail(line.number, "block dimensions must be at least 1");
          dims.push_back(*d);
        }
    } else if (key == "layout") {
      layout_line = line.number;
      layout.assign(line.tokens.begin() + 1, line.tokens.end());
    } else if (key == "neighborhood") {
      if (!k) {
        r.fail(line.number, "neighborhood before k");
        continue;
      }
      if (auto n = read_neighborhood(r, line, *k)) m.neighborhood = *n;
    } else if (key == "base" || key == "equation") {
      if (!r.arity(line, 1)) continue;
      if (!k || !l || !dim_m) {
        r.fail(line.number, "polynomials must follow k, l and m");
        continue;
      }
      auto& list = key == "base" ? base : eqs;
      list.emplace_back();
      current = &list.back();
      current_vars = key == "base" ? *k : *dim_m + *l;
    } else {
      r.fail(line.number, "unknown field '" + key + "'");
    }
  }
  if (!k || !l || !dim_m) r.violations.push_back("k, l and m are all required");
  if (r.violations.empty()) {
    m.k = *k;
    m.l = *l;
    m.m = *dim_m;
    m.dims = dims;
    std::size_t total = 0;
    for (auto d : dims) total += d;
    if (dims.size() != m.l) r.violations.push_back("dims lists " + std::to_string(dims.size()) + " blocks for l = " + std::to_string(m.l));
    if (m.m < m.k) r.violations.push_back("m must be at least k");
    else if (total != m.m + m.l - m.k)
      r.violations.push_back("dims sum to " + std::to_string(total) + ", expected m + l - k = " +
                             std::to_string(m.m + m.l - m.k));
    if (base.size() != m.l) r.violations.push_back("expected " + std::to_string(m.l) + " base polynomials");
    if (eqs.size() != m.l) r.violations.push_back("expected " + std::to_string(m.l) + " equations");
  }
  if (r.violations.empty()) {
    NCDomain d;
    d.ambient_dim = m.k;
    d.neighborhood = m.neighborhood;
    for (auto& t : base) d.constraints.emplace_back(m.k, std::move(t));
    for (auto& t : eqs) m.system.emplace_back(m.m + m.l, std::move(t));
    m.base = d.constraints;
    try {
      d.validate();
      const std::size_t n = m.m + m.l;
      std::vector<std::optional<std::size_t>> embed(m.k);
      for (std::size_t i = 0; i < m.k; ++i) embed[i] = i;
      for (std::size_t i = 0; i < m.l; ++i) {
        Polynomial F = d.constraints[i].substitute_coords(embed, n);
        const std::size_t s = m.block_start(i);
        for (std::size_t j = s; j < s + m.dims[i]; ++j) F -= Polynomial::variable(n, j) * Polynomial::variable(n, j);
        if (!(F == m.system[i]))
          r.violations.push_back("equation " + std::to_string(i) + " is not its base polynomial minus the block norm");
      }
      if (layout_line && layout != layout_names(m.k, m.dims))
        r.fail(*layout_line, "layout does not match the variable blocks");
    } catch (const Error& e) {
      r.violations.push_back(e.what());
    }
  }
  r.finish();
  return m;
}

std::string file_kind(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string key, kind;
    ls >> key >> kind;
    if (key == "kind:" && !kind.empty()) return kind;
    break;
  }
  throw ParseError({"line 1: missing 'kind:' header"});
}

SpecObject parse_spec(std::string_view text) {
  const auto kind = file_kind(text);
  if (kind == "domain") return parse_domain(text);
  if (kind == "bandspec") return parse_band_spec(text);
  if (kind == "graph") return parse_graph(text);
  if (kind == "model") return parse_model(text);
  throw ParseError({"unknown kind '" + kind + "'"});
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << text;
}

std::string to_dot(const LeveledGraph& g, const DotOptions& opts) {
  std::set<std::size_t> hot_v, hot_e;
  if (opts.witness) {
    hot_v.insert(opts.witness->branch.begin(), opts.witness->branch.end());
    for (const auto& p : opts.witness->paths) hot_e.insert(p.edges.begin(), p.edges.end());
  }
  std::map<Rational, std::vector<std::size_t>> by_level;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) by_level[g.level(v)].push_back(v);
  std::ostringstream os;
  os << "digraph " << opts.name << " {\n  rankdir=LR;\n  node [shape=circle, width=0.2, fontsize=8];\n"
     << "  edge [arrowhead=none];\n";
  for (const auto& [level, vs] : by_level) {
    os << "  { rank=same;";
    for (auto v : vs) os << " v" << v << ';';
    os << " }  // level " << to_string(level) << "\n";
  }
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    os << "  v" << v << " [label=\"" << v << "\"";
    if (!g.vertex(v).essential) os << ", shape=point";
    if (hot_v.count(v)) os << ", color=red, style=filled, fillcolor=mistyrose";
    os << "];\n";
  }
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    os << "  v" << g.edge(e).lower << " -> v" << g.edge(e).upper;
    if (hot_e.count(e)) os << " [color=red, penwidth=2]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace ncreeb
