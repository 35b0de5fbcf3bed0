#include "ncreeb/report.hpp"

#include <algorithm>

#include "ncreeb/reeb.hpp"

namespace ncreeb {

namespace {

Json base(const char* kind) { return Json{{"kind", kind}, {"version", 1}}; }

Json rationals(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

Json witness_json(const KuratowskiWitness& w) {
  Json paths = Json::array();
  for (const auto& p : w.paths) paths.push_back({{"vertices", p.vertices}, {"edges", p.edges}});
  return {{"kind", to_string(w.kind)}, {"branch", w.branch}, {"paths", paths}};
}

}  // namespace

Json graph_stats(const LeveledGraph& g) {
  Json j = base("graph-stats");
  j["vertices"] = g.num_vertices();
  j["edges"] = g.num_edges();
  const auto comps = g.components();
  j["components"] = comps.size();
  j["betti1"] = comps.size() <= 1 ? Json(betti1(g)) : Json(nullptr);
  std::vector<std::size_t> deg;
  std::size_t essential = 0;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    deg.push_back(g.degree(v));
    essential += g.vertex(v).essential;
  }
  std::sort(deg.rbegin(), deg.rend());
  j["degree_sequence"] = deg;
  j["essential_vertices"] = essential;
  const auto levels = g.distinct_levels();
  j["levels"] = rationals(levels);
  Json sheets = Json::array();
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    const Rational mid = (levels[i] + levels[i + 1]) / 2;
    sheets.push_back({{"lo", to_string(levels[i])}, {"hi", to_string(levels[i + 1])}, {"sheets", sheet_count(g, mid)}});
  }
  j["sheet_counts"] = sheets;
  return j;
}

Json to_json(const ConditionReport& r) {
  Json j = base("condition-report");
  j["tag"] = to_string(r.tag);
  j["pass"] = r.pass;
  Json conds = Json::array();
  for (const auto& c : r.conditions) conds.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["conditions"] = conds;
  Json arcs = Json::array();
  for (const auto& a : r.arcs)
    arcs.push_back({{"label", a.label},
                    {"from", {{"edge", a.from.edge}, {"level", to_string(a.from.level)}}},
                    {"to", {{"edge", a.to.edge}, {"level", to_string(a.to.level)}}},
                    {"vertices", a.vertices},
                    {"lo", to_string(a.lo)},
                    {"hi", to_string(a.hi)}});
  j["arcs"] = arcs;
  j["diagnostics"] = r.diagnostics;
  return j;
}

Json to_json(const TransversalityReport& r) {
  Json j = base("transversality-report");
  j["pass"] = r.pass;
  j["samples"] = r.samples.size();
  j["warnings"] = r.warnings;
  Json failing = Json::array();
  for (auto i : r.failing()) {
    const auto& s = r.samples[i];
    failing.push_back({{"point", s.point}, {"active", s.active}, {"rank", s.rank}, {"exact", s.exact}});
  }
  j["failing"] = failing;
  return j;
}

Json to_json(const PlanarityResult& r) {
  Json j = base("planarity-report");
  j["planar"] = r.planar;
  if (r.planar) j["rotation"] = r.rotation;
  if (r.witness) j["witness"] = witness_json(*r.witness);
  return j;
}

Json to_json(const LevelPlanarityResult& r) {
  Json j = base("level-planarity-report");
  j["level_planar"] = r.level_planar;
  if (r.embedding) {
    j["levels"] = rationals(r.embedding->levels);
    j["proper_vertices"] = r.embedding->proper.num_vertices();
    j["order"] = r.embedding->order;
    j["inversions"] = count_inversions(*r.embedding);
  }
  return j;
}

Json to_json(const CertificateReport& r) {
  Json j = base("certificate-report");
  j["pass"] = r.pass;
  j["samples"] = {{"interior", r.interior_samples}, {"boundary", r.boundary_samples}, {"outside", r.outside_samples}};
  j["failures"] = {{"rank", r.rank_failures},
                   {"dimension", r.dimension_failures},
                   {"emptiness", r.emptiness_failures},
                   {"image", r.image_failures}};
  j["diagnostics"] = r.diagnostics;
  return j;
}

Json to_json(const FiberType& t) {
  Json j = base("fiber-type");
  j["empty"] = t.empty;
  j["description"] = t.describe();
  if (!t.empty) j["dimension"] = t.dimension();
  Json blocks = Json::array();
  for (const auto& b : t.blocks) blocks.push_back({{"sphere_dim", b.sphere_dim}, {"radius_squared", to_string(b.radius_squared)}});
  j["blocks"] = blocks;
  return j;
}

Json to_json(const FamilyResult& f) {
  Json j = base("family-report");
  j["tag"] = to_string(f.tag);
  j["indices"] = f.indices;
  if (f.tag == TheoremTag::MT3) j["reduction"] = to_string(f.reduction);
  j["fold_counts"] = f.fold_counts;
  j["coincident_levels"] = rationals(f.coincident_levels);
  Json bands = Json::array();
  for (const auto& b : f.factor_spec.bands)
    bands.push_back({{"t_lo", to_string(b.t_lo)}, {"t_hi", to_string(b.t_hi)}, {"holes", b.holes}});
  j["factor"] = {{"bands", bands},
                 {"outer_center", rationals(f.factor_spec.outer_center)},
                 {"outer_radius", to_string(f.factor_spec.outer_radius)}};
  j["domain"] = {{"ambient_dim", f.domain.ambient_dim}, {"constraints", f.domain.constraints.size()}};
  j["prediction"] = {{"vertices", f.prediction.num_vertices()},
                     {"edges", f.prediction.num_edges()},
                     {"betti1", betti1(f.prediction)}};
  j["conditions_pass"] = f.conditions.pass;
  return j;
}

Json to_json(const IsoResult& r) {
  Json j = base("isomorphism-report");
  j["isomorphic"] = r.isomorphic;
  if (r.isomorphic) j["mapping"] = r.mapping;
  return j;
}

std::string render(const Json& j, ReportFormat f) {
  if (f == ReportFormat::Structured) return j.dump(2) + "\n";
  std::string out;
  for (const auto& [key, value] : j.items()) {
    out += key + ": ";
    if (value.is_string()) {
      out += value.get<std::string>();
    } else if (value.is_array() && std::all_of(value.begin(), value.end(), [](const Json& x) { return x.is_primitive(); })) {
      for (std::size_t i = 0; i < value.size(); ++i)
        out += (i ? " " : "") + (value[i].is_string() ? value[i].get<std::string>() : value[i].dump());
    } else {
      out += value.dump();
    }
    out += "\n";
  }
  return out;
}

}  // namespace ncreeb
