// Command-line front end. Exit codes: 0 success, 1 negative verdict from a
// deciding subcommand, 2 input error, 3 capacity error.

#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ncreeb/algebraic.hpp"
#include "ncreeb/error.hpp"
#include "ncreeb/grid_oracle.hpp"
#include "ncreeb/io.hpp"
#include "ncreeb/planarity.hpp"
#include "ncreeb/reeb.hpp"
#include "ncreeb/report.hpp"
#include "ncreeb/theorems.hpp"

using namespace ncreeb;

namespace {

constexpr int kOk = 0, kNegative = 1, kInputError = 2, kCapacity = 3;

struct Global {
  std::string format = "text";
  std::string out;
  std::size_t resolution = 400;
  double eps_scale = 0.25;
  double tolerance = 1e-9;
  std::size_t cap = 0;  // 0 keeps each module's default
};

Global opt;

void emit(const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
  } else {
    write_file(opt.out, text);
  }
}

void emit_report(const Json& j) {
  if (opt.format == "dot") throw InvalidArgument("this subcommand has no dot output");
  emit(render(j, opt.format == "structured" ? ReportFormat::Structured : ReportFormat::Text));
}

void emit_graph(const LeveledGraph& g, const DotOptions& dot = {}) { emit(opt.format == "dot" ? to_dot(g, dot) : serialize(g)); }

NCDomain load_domain(const std::string& path) {
  auto obj = parse_spec(read_file(path));
  if (auto* d = std::get_if<NCDomain>(&obj)) return *d;
  if (auto* s = std::get_if<BandSpec>(&obj)) return build_band_domain(*s);
  throw InvalidArgument("'" + path + "' is neither a domain nor a band spec");
}

LeveledGraph load_graph(const std::string& path) { return parse_graph(read_file(path)); }

RationalPoint parse_point(const std::string& text) {
  RationalPoint p;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) p.push_back(parse_rational(part));
  return p;
}

std::optional<Rational> optional_rational(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_rational(s);
}

std::size_t cap_or(std::size_t fallback) { return opt.cap ? opt.cap : fallback; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reeb graphs of band domains, their fiber products and planarity obstructions"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", opt.format, "Output format for reports and graphs")
      ->check(CLI::IsMember({"text", "structured", "dot"}));
  app.add_option("--out", opt.out, "Write the main output here instead of stdout");
  app.add_option("--resolution", opt.resolution, "Grid cells per axis for the sampling oracle")
      ->check(CLI::Range(64, 4000));
  app.add_option("--eps-scale", opt.eps_scale, "Oracle marking tolerance in cell diagonals")
      ->check(CLI::Range(0.0, 4.0));
  app.add_option("--tolerance", opt.tolerance, "Floating tolerance for zero and on-variety tests")
      ->check(CLI::Range(1e-15, 1e-2));
  app.add_option("--cap", opt.cap, "Size cap for exponential searches");

  std::function<int()> action;
  static std::string domain_path, graph_path, other_path, bands_path, model_path, prefix;

  // domain
  auto* domain = app.add_subcommand("domain", "Build or check domains")->require_subcommand(1);
  {
    auto* build = domain->add_subcommand("build", "Write a domain file");
    static std::string disk;
    static std::vector<std::string> lift;
    auto* ob = build->add_option("--bands", bands_path, "Band spec file");
    auto* od = build->add_option("--disk", disk, "Radius of a disk centred at the origin");
    auto* ol = build->add_option("--lift", lift, "Two domain files to lift and intersect")->expected(2);
    ob->excludes(od)->excludes(ol);
    od->excludes(ol);
    build->callback([&] {
      action = [&] {
        NCDomain d;
        if (!bands_path.empty()) {
          d = build_band_domain(parse_band_spec(read_file(bands_path)));
        } else if (!disk.empty()) {
          d.ambient_dim = 2;
          d.constraints.push_back(
              sphere_poly(make_point({0, 0}), parse_rational(disk), 2, Orientation::InsidePositive));
        } else if (lift.size() == 2) {
          d = lift_product(load_domain(lift[0]), load_domain(lift[1]));
        } else {
          throw InvalidArgument("give one of --bands, --disk or --lift");
        }
        emit(serialize(d));
        return kOk;
      };
    });

    auto* check = domain->add_subcommand("check", "Transversality and membership probes; exit 1 when not transversal");
    static std::size_t budget = 200;
    static unsigned long seed = 1;
    static std::vector<std::string> probes;
    check->add_option("--domain", domain_path)->required();
    check->add_option("--budget", budget, "Samples per constraint and pair");
    check->add_option("--seed", seed);
    check->add_option("--probe", probes, "Point x,y,... to classify");
    check->callback([&] {
      action = [&] {
        const auto d = load_domain(domain_path);
        TransversalityOptions to;
        to.zero_tolerance = opt.tolerance;
        const auto r = check_transversality(d, budget, seed, to);
        Json j = to_json(r);
        Json pj = Json::array();
        for (const auto& p : probes) {
          const auto x = parse_point(p);
          if (x.size() != d.ambient_dim) throw DimensionError("probe '" + p + "' has the wrong dimension");
          pj.push_back({{"point", p}, {"membership", to_string(closure_membership(d, x))}});
        }
        j["probes"] = pj;
        emit_report(j);
        return r.pass ? kOk : kNegative;
      };
    });
  }

  // reeb
  auto* reeb = app.add_subcommand("reeb", "Compute Reeb graphs")->require_subcommand(1);
  {
    auto* exact = reeb->add_subcommand("exact", "Exact sweep of a plane circle arrangement");
    exact->add_option("--domain", domain_path)->required();
    exact->callback([&] {
      action = [&] {
        emit_graph(reeb_exact(load_domain(domain_path)));
        return kOk;
      };
    });
    auto* oracle = reeb->add_subcommand("oracle", "Grid sampling oracle");
    static bool no_snap = false;
    oracle->add_option("--domain", domain_path)->required();
    oracle->add_flag("--no-snap", no_snap, "Keep estimated levels instead of snapping to circle extremes");
    oracle->callback([&] {
      action = [&] {
        GridOptions go;
        go.resolution = opt.resolution;
        go.eps_scale = opt.eps_scale;
        go.snap = !no_snap;
        emit_graph(reeb_grid_oracle(load_domain(domain_path), go));
        return kOk;
      };
    });
    auto* product = reeb->add_subcommand("product", "Fiber product of two graphs");
    product->add_option("--graph", graph_path)->required();
    product->add_option("--with", other_path)->required();
    product->callback([&] {
      action = [&] {
        const auto fp = fiber_product(load_graph(graph_path), load_graph(other_path));
        for (const auto& t : fp.coincident_levels) std::cerr << "note: both factors have a vertex at " << to_string(t) << "\n";
        emit_graph(fp.graph);
        return kOk;
      };
    });
  }

  // graph
  auto* graph = app.add_subcommand("graph", "Graph statistics and isomorphism")->require_subcommand(1);
  {
    auto* stats = graph->add_subcommand("stats", "Betti number, sheet counts and degree sequence");
    stats->add_option("--graph", graph_path)->required();
    stats->callback([&] {
      action = [&] {
        emit_report(graph_stats(load_graph(graph_path)));
        return kOk;
      };
    });
    auto* iso = graph->add_subcommand("iso", "Isomorphism test; exit 1 when not isomorphic");
    static std::string mode = "leveled";
    iso->add_option("--graph", graph_path)->required();
    iso->add_option("--with", other_path)->required();
    iso->add_option("--mode", mode)->check(CLI::IsMember({"plain", "leveled"}));
    iso->callback([&] {
      action = [&] {
        const auto r = is_isomorphic(load_graph(graph_path), load_graph(other_path),
                                     mode == "plain" ? IsoMode::Plain : IsoMode::Leveled, cap_or(64));
        emit_report(to_json(r));
        return r.isomorphic ? kOk : kNegative;
      };
    });
  }

  // conditions
  static std::string tag, t1, t2, t1_outer, t2_outer;
  auto* conditions = app.add_subcommand("conditions", "Theorem hypotheses")->require_subcommand(1);
  {
    auto* check = conditions->add_subcommand("check", "Validate a graph; exit 1 when a hypothesis fails");
    check->add_option("--tag", tag)->required()->check(CLI::IsMember({"mt1", "mt2", "mt3", "thm2"}));
    auto* g = check->add_option("--graph", graph_path);
    auto* d = check->add_option("--domain", domain_path, "Domain whose exact Reeb graph is checked");
    g->excludes(d);
    check->add_option("--t1", t1);
    check->add_option("--t2", t2);
    check->add_option("--t1-outer", t1_outer);
    check->add_option("--t2-outer", t2_outer);
    check->callback([&] {
      action = [&] {
        const auto graph = !graph_path.empty() ? load_graph(graph_path) : reeb_exact(load_domain(domain_path));
        const auto t = parse_theorem_tag(tag);
        ConditionParams p;
        if (t != TheoremTag::THM2) {
          if (t1.empty() || t2.empty()) throw InvalidArgument("--t1 and --t2 are required for this tag");
          p = {parse_rational(t1), parse_rational(t2), optional_rational(t1_outer), optional_rational(t2_outer)};
        }
        const auto r = validate_conditions(graph, p, t);
        emit_report(to_json(r));
        return r.pass ? kOk : kNegative;
      };
    });
  }

  // family
  auto* family = app.add_subcommand("family", "Generate a theorem family member")->require_subcommand(1);
  {
    static unsigned i = 1, i1 = 1, i2 = 1, i3 = 1;
    static std::string reduction = "none", factor_radius;
    auto common = [&](CLI::App* sub) {
      sub->add_option("--base", domain_path, "Base domain or band spec")->required();
      sub->add_option("--t1", t1)->required();
      sub->add_option("--t2", t2)->required();
      sub->add_option("--factor-radius", factor_radius, "Outer radius of the factor domain");
      sub->add_option("--prefix", prefix, "Write PREFIX.domain, PREFIX.graph, PREFIX.factor and PREFIX.report");
    };
    auto run = [&](TheoremTag t) {
      const auto base = load_domain(domain_path);
      const auto base_graph = reeb_exact(base);
      FactorOuter outer;
      outer.radius = optional_rational(factor_radius);
      FamilyResult f;
      try {
        if (t == TheoremTag::MT1) {
          f = mt1_family(base, base_graph, parse_rational(t1), parse_rational(t2), i, outer);
        } else if (t == TheoremTag::MT2) {
          f = mt2_family(base, base_graph, parse_rational(t1), parse_rational(t2), i, outer);
        } else {
          ConditionParams p{parse_rational(t1), parse_rational(t2), optional_rational(t1_outer),
                            optional_rational(t2_outer)};
          f = mt3_family(base, base_graph, p, i1, i2, i3, parse_reduction(reduction), outer);
        }
      } catch (const ConditionFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        emit_report(to_json(e.report()));
        return kNegative;
      }
      const auto report = to_json(f);
      if (!prefix.empty()) {
        write_file(prefix + ".domain", serialize(f.domain));
        write_file(prefix + ".graph", serialize(f.prediction));
        write_file(prefix + ".factor", serialize(f.factor_spec));
        write_file(prefix + ".report", render(report, ReportFormat::Structured));
      }
      emit_report(report);
      return kOk;
    };
    auto* m1 = family->add_subcommand("mt1", "Covering family over a converging arc pair");
    common(m1);
    m1->add_option("--i", i)->check(CLI::Range(1u, 1000u));
    m1->callback([&, run] { action = [run] { return run(TheoremTag::MT1); }; });
    auto* m2 = family->add_subcommand("mt2", "Family over a 3x3 arc configuration");
    common(m2);
    m2->add_option("--i", i)->check(CLI::Range(1u, 1000u));
    m2->callback([&, run] { action = [run] { return run(TheoremTag::MT2); }; });
    auto* m3 = family->add_subcommand("mt3", "Three-band family with optional reductions");
    common(m3);
    m3->add_option("--i1", i1)->check(CLI::Range(1u, 1000u));
    m3->add_option("--i2", i2)->check(CLI::Range(1u, 1000u));
    m3->add_option("--i3", i3)->check(CLI::Range(1u, 1000u));
    m3->add_option("--reduction", reduction)->check(CLI::IsMember({"none", "C", "B", "BC"}));
    m3->add_option("--t1-outer", t1_outer);
    m3->add_option("--t2-outer", t2_outer);
    m3->callback([&, run] { action = [run] { return run(TheoremTag::MT3); }; });
  }

  // planarity
  {
    auto* planar = app.add_subcommand("planarity", "Planarity test with an obstruction; exit 1 when not planar");
    static std::string prefer;
    planar->add_option("--graph", graph_path)->required();
    planar->add_option("--prefer", prefer, "Obstruction kind to search for first")->check(CLI::IsMember({"K5", "K33"}));
    planar->callback([&] {
      action = [&] {
        const auto g = load_graph(graph_path);
        PlanarityOptions po;
        po.cap = cap_or(po.cap);
        if (!prefer.empty()) po.prefer = prefer == "K5" ? KuratowskiKind::K5 : KuratowskiKind::K33;
        const auto r = planarity_test(g, po);
        if (opt.format == "dot") {
          emit(to_dot(g, {"planarity", r.witness}));
        } else {
          emit_report(to_json(r));
        }
        return r.planar ? kOk : kNegative;
      };
    });
    auto* level = app.add_subcommand("levelplanarity", "Level planarity test; exit 1 when not level planar");
    level->add_option("--graph", graph_path)->required();
    level->callback([&] {
      action = [&] {
        const auto r = level_planarity_test(load_graph(graph_path), cap_or(200));
        emit_report(to_json(r));
        return r.level_planar ? kOk : kNegative;
      };
    });
  }

  // algebraic
  auto* algebraic = app.add_subcommand("algebraic", "Polynomial models over domains")->require_subcommand(1);
  {
    static std::size_t m = 0;
    static std::string policy = "balanced";
    auto* emit_cmd = algebraic->add_subcommand("emit", "Write the model file");
    emit_cmd->add_option("--domain", domain_path)->required();
    emit_cmd->add_option("--m", m, "Manifold dimension, default k + l");
    emit_cmd->add_option("--policy", policy)->check(CLI::IsMember({"balanced", "front-loaded"}));
    emit_cmd->callback([&] {
      action = [&] {
        const auto d = load_domain(domain_path);
        emit(serialize(emit_model(d, m ? m : d.ambient_dim + d.constraints.size(), parse_dim_policy(policy))));
        return kOk;
      };
    });
    auto* certify = algebraic->add_subcommand("certify", "Sampled rank, fiber and emptiness checks; exit 1 on failure");
    static unsigned long seed = 1;
    certify->add_option("--domain", domain_path)->required();
    certify->add_option("--model", model_path, "Model file; emitted from the domain when absent");
    certify->add_option("--m", m, "Manifold dimension when emitting, default k + l");
    certify->add_option("--seed", seed);
    certify->callback([&] {
      action = [&] {
        const auto d = load_domain(domain_path);
        const auto model = !model_path.empty() ? parse_model(read_file(model_path))
                                               : emit_model(d, m ? m : d.ambient_dim + d.constraints.size());
        if (model.base != d.constraints) throw InvalidArgument("model was not emitted from this domain");
        CertificateOptions co;
        co.seed = seed;
        co.tolerance = opt.tolerance;
        const auto r = certify_model(d, model, co);
        emit_report(to_json(r));
        return r.pass ? kOk : kNegative;
      };
    });
  }

  // export
  auto* exp = app.add_subcommand("export", "Render graphs")->require_subcommand(1);
  {
    auto* dot = exp->add_subcommand("dot", "Graphviz source, level increasing left to right");
    static bool witness = false;
    dot->add_option("--graph", graph_path)->required();
    dot->add_flag("--witness", witness, "Highlight a Kuratowski subdivision when the graph is not planar");
    dot->callback([&] {
      action = [&] {
        const auto g = load_graph(graph_path);
        DotOptions d;
        if (witness) d.witness = planarity_test(g, {.cap = cap_or(512)}).witness;
        emit(to_dot(g, d));
        return kOk;
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }
  try {
    return action ? action() : kInputError;
  } catch (const CapacityError& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return kCapacity;
  } catch (const ParseError& e) {
    for (const auto& v : e.violations()) std::cerr << "error: " << v << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
