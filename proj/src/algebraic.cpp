#include "ncreeb/algebraic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "ncreeb/error.hpp"
#include "ncreeb/grid_oracle.hpp"

namespace ncreeb {

const char* to_string(DimPolicy p) { return p == DimPolicy::Balanced ? "balanced" : "front-loaded"; }

DimPolicy parse_dim_policy(std::string_view s) {
  if (s == "balanced") return DimPolicy::Balanced;
  if (s == "front-loaded") return DimPolicy::FrontLoaded;
  throw InvalidArgument("unknown dimension policy '" + std::string(s) + "'");
}

std::size_t AlgebraicModel::block_start(std::size_t i) const {
  std::size_t s = k;
  for (std::size_t j = 0; j < i; ++j) s += dims.at(j);
  return s;
}

std::vector<std::size_t> allocate_dims(std::size_t k, std::size_t l, std::size_t m, DimPolicy policy) {
  if (l == 0) throw InvalidArgument("the domain has no constraints");
  if (m < k) throw InvalidArgument("m = " + std::to_string(m) + " is below the floor m >= k = " + std::to_string(k));
  const std::size_t total = m + l - k;
  std::vector<std::size_t> dims(l, 1);
  if (policy == DimPolicy::FrontLoaded) {
    dims[0] = total - (l - 1);
  } else {
    for (std::size_t i = 0; i < l; ++i) dims[i] = total / l + (i < total % l ? 1 : 0);
  }
  return dims;
}

AlgebraicModel emit_model(const NCDomain& d, std::size_t m, DimPolicy policy) {
  d.validate();
  AlgebraicModel model;
  model.k = d.ambient_dim;
  model.l = d.constraints.size();
  model.m = m;
  model.dims = allocate_dims(model.k, model.l, m, policy);
  model.base = d.constraints;
  model.neighborhood = d.neighborhood;
  const std::size_t n = model.num_vars();
  std::vector<std::optional<std::size_t>> embed(model.k);
  for (std::size_t i = 0; i < model.k; ++i) embed[i] = i;
  for (std::size_t i = 0; i < model.l; ++i) {
    Polynomial F = d.constraints[i].substitute_coords(embed, n);
    const std::size_t s = model.block_start(i);
    for (std::size_t j = s; j < s + model.dims[i]; ++j) {
      const auto y = Polynomial::variable(n, j);
      F -= y * y;
    }
    model.system.push_back(std::move(F));
  }
  return model;
}

namespace {

bool in_closed_neighborhood(const AlgebraicModel& model, std::span<const Rational> x) {
  const auto* b = std::get_if<Ball>(&model.neighborhood);
  if (!b) return true;
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - b->center[i]) * (x[i] - b->center[i]);
  return s <= b->radius * b->radius;
}

void check_point(const AlgebraicModel& model, std::span<const Rational> x) {
  if (x.size() != model.k)
    throw DimensionError("point has " + std::to_string(x.size()) + " coordinates, expected " +
                         std::to_string(model.k));
}

}  // namespace

std::vector<double> sample_fiber_point(const AlgebraicModel& model, std::span<const Rational> x) {
  check_point(model, x);
  if (!in_closed_neighborhood(model, x))
    throw InvalidArgument("point lies outside the neighborhood, so no point of the model maps to it");
  std::vector<double> p(model.num_vars(), 0.0);
  for (std::size_t i = 0; i < model.k; ++i) p[i] = to_double(x[i]);
  for (std::size_t i = 0; i < model.l; ++i) {
    const Rational v = model.base[i].eval(x);
    if (sgn(v) < 0)
      throw InvalidArgument("constraint " + std::to_string(i) +
                            " is negative at the point; the image of the model is the closure of the domain");
    Rational root;
    p[model.block_start(i)] = exact_sqrt(v, root) ? to_double(root) : std::sqrt(to_double(v));
  }
  return p;
}

double residual(const AlgebraicModel& model, std::span<const double> p) {
  if (p.size() != model.num_vars()) throw DimensionError("point has the wrong number of coordinates");
  double worst = 0;
  for (const auto& F : model.system) worst = std::max(worst, std::abs(F.eval(p)));
  return worst;
}

std::size_t jacobian_rank(const AlgebraicModel& model, std::span<const double> p, double on_variety_tol,
                          double rank_tol) {
  const double r = residual(model, p);
  if (r > on_variety_tol) {
    std::ostringstream os;
    os << "point is not on the variety: residual " << r << " exceeds " << on_variety_tol;
    throw InvalidArgument(os.str());
  }
  Eigen::MatrixXd J(model.l, model.num_vars());
  for (std::size_t i = 0; i < model.l; ++i) {
    const auto g = model.system[i].gradient(p);
    for (std::size_t j = 0; j < g.size(); ++j) J(i, j) = g[j];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rank_tol * s(0)) ++rank;
  return rank;
}

bool FiberType::is_point() const {
  return !empty && std::all_of(blocks.begin(), blocks.end(), [](const auto& b) { return b.point(); });
}

std::size_t FiberType::dimension() const {
  std::size_t d = 0;
  for (const auto& b : blocks)
    if (!b.point()) d += b.sphere_dim;
  return d;
}

std::string FiberType::describe() const {
  if (empty) return "empty";
  if (is_point()) return "point";
  std::string out;
  for (const auto& b : blocks) {
    if (!out.empty()) out += " x ";
    out += b.point() ? "point" : "S^" + std::to_string(b.sphere_dim) + "(r^2=" + to_string(b.radius_squared) + ")";
  }
  return out;
}

FiberType fiber_type(const AlgebraicModel& model, std::span<const Rational> x) {
  check_point(model, x);
  FiberType t;
  if (!in_closed_neighborhood(model, x)) {
    t.empty = true;
    return t;
  }
  for (std::size_t i = 0; i < model.l; ++i) {
    const Rational v = model.base[i].eval(x);
    if (sgn(v) < 0) {
      t.empty = true;
      t.blocks.clear();
      return t;
    }
    t.blocks.push_back({model.dims[i] - 1, v});
  }
  return t;
}

namespace {

struct Sampler {
  const NCDomain& d;
  std::mt19937_64 rng;
  GridBox box;
  std::vector<CircleForm> circles;

  Rational uniform(double lo, double hi) {
    std::uniform_int_distribution<long> step(0, 1 << 12);
    return from_double(lo) + (from_double(hi) - from_double(lo)) * Rational(step(rng), 1 << 12);
  }

  RationalPoint interior() {
    for (int tries = 0; tries < 100000; ++tries) {
      RationalPoint x{uniform(box.lo[0], box.hi[0]), uniform(box.lo[1], box.hi[1])};
      if (closure_membership(d, x) == Membership::Interior) return x;
    }
    throw BuildError("could not find interior samples");
  }

  // Rational point on a circle through the stereographic parametrisation.
  std::optional<RationalPoint> on_circle(const CircleForm& c) {
    std::uniform_int_distribution<long> num(-48, 48);
    const Rational t(num(rng), 16);
    const Rational den = 1 + t * t;
    RationalPoint x{c.center_x + *c.radius * (1 - t * t) / den, c.center_y + *c.radius * 2 * t / den};
    if (closure_membership(d, x) != Membership::Boundary) return std::nullopt;
    return x;
  }
};

}  // namespace

CertificateReport certify_model(const NCDomain& d, const AlgebraicModel& model, const CertificateOptions& opts) {
  if (d.ambient_dim != 2) throw UnsupportedDomain("certification samples plane circle arrangements only");
  Sampler s{d, std::mt19937_64(opts.seed), default_box(d), {}};
  for (const auto& f : d.constraints) {
    auto c = as_circle(f);
    if (!c) throw UnsupportedDomain("certification needs every constraint to be a circle");
    if (c->radius) s.circles.push_back(*c);
  }
  if (s.circles.empty()) throw UnsupportedDomain("no circle has a rational radius to sample on");

  CertificateReport r;
  const std::size_t full = model.m - model.k;
  auto check_rank = [&](std::span<const Rational> x, const char* where) {
    std::vector<double> p;
    try {
      p = sample_fiber_point(model, x);
    } catch (const InvalidArgument&) {
      ++r.image_failures;
      r.diagnostics.push_back(std::string("sampler refused a ") + where + " point");
      return;
    }
    if (jacobian_rank(model, p, opts.tolerance, opts.rank_tolerance) != model.l) {
      ++r.rank_failures;
      r.diagnostics.push_back(std::string("rank below l at a ") + where + " point");
    }
  };

  for (std::size_t i = 0; i < opts.interior; ++i) {
    const auto x = s.interior();
    ++r.interior_samples;
    check_rank(x, "interior");
    const auto t = fiber_type(model, x);
    if (t.empty || t.dimension() != full) {
      ++r.dimension_failures;
      r.diagnostics.push_back("interior fiber is " + t.describe());
    }
  }

  // Extreme points of the circles come first; they are where the boundary is
  // tangent to a level set.
  std::vector<RationalPoint> boundary;
  for (const auto& lvl : singular_levels(d))
    for (const auto& p : lvl.points)
      if (boundary.size() < opts.boundary && closure_membership(d, p) == Membership::Boundary) boundary.push_back(p);
  for (std::size_t tries = 0; boundary.size() < opts.boundary && tries < 100000; ++tries)
    if (auto p = s.on_circle(s.circles[tries % s.circles.size()])) boundary.push_back(*p);

  for (const auto& x : boundary) {
    ++r.boundary_samples;
    check_rank(x, "boundary");
    const auto t = fiber_type(model, x);
    if (t.empty || t.dimension() >= full) {
      ++r.dimension_failures;
      r.diagnostics.push_back("boundary fiber is " + t.describe() + ", not below dimension " + std::to_string(full));
    }
  }

  // Just outside: step from a boundary point against the gradient of a
  // vanishing constraint.
  for (std::size_t tries = 0; r.outside_samples < opts.outside && tries < 100000; ++tries) {
    auto base = s.on_circle(s.circles[tries % s.circles.size()]);
    if (!base) continue;
    for (const auto& f : d.constraints) {
      if (f.eval(*base) != 0) continue;
      const auto g = f.gradient(*base);
      Rational scale = abs(g[0]) + abs(g[1]);
      RationalPoint x{(*base)[0] - g[0] / (64 * scale), (*base)[1] - g[1] / (64 * scale)};
      if (closure_membership(d, x) != Membership::Outside || !in_neighborhood(d, x, false)) continue;
      ++r.outside_samples;
      bool negative = false;
      for (const auto& fi : model.base) negative |= sgn(fi.eval(x)) < 0;
      if (!negative || !fiber_type(model, x).empty) {
        ++r.emptiness_failures;
        r.diagnostics.push_back("outside point with a nonempty fiber");
      }
      try {
        sample_fiber_point(model, x);
        ++r.image_failures;
        r.diagnostics.push_back("sampler accepted an outside point");
      } catch (const InvalidArgument&) {
      }
      break;
    }
  }

  r.pass = r.rank_failures == 0 && r.dimension_failures == 0 && r.emptiness_failures == 0 &&
           r.image_failures == 0 && r.interior_samples == opts.interior && r.boundary_samples == opts.boundary &&
           r.outside_samples == opts.outside;
  return r;
}

}  // namespace ncreeb
