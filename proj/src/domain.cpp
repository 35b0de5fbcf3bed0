#include "ncreeb/domain.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "ncreeb/error.hpp"

namespace ncreeb {

void NCDomain::validate() const {
  if (ambient_dim < 2) throw InvalidArgument("ambient_dim must be at least 2");
  if (constraints.empty()) throw InvalidArgument("a domain needs at least one constraint");
  for (std::size_t j = 0; j < constraints.size(); ++j)
    if (constraints[j].num_vars() != ambient_dim)
      throw InvalidArgument("constraint " + std::to_string(j + 1) + " has " +
                            std::to_string(constraints[j].num_vars()) + " variables, expected " +
                            std::to_string(ambient_dim));
  if (const auto* b = std::get_if<Ball>(&neighborhood)) {
    if (b->center.size() != ambient_dim) throw InvalidArgument("neighborhood centre has wrong length");
    if (sgn(b->radius) <= 0) throw InvalidArgument("neighborhood radius must be positive");
  }
  for (auto [i, j] : expected_intersections)
    if (i >= j || j >= constraints.size())
      throw InvalidArgument("expected intersection pair out of range");
}

std::vector<long> hole_offsets(unsigned holes) {
  std::vector<long> out;
  out.reserve(holes);
  if (holes % 2 == 1) out.push_back(0);
  for (long step = 1; out.size() < holes; ++step) {
    out.push_back(-3 * step);
    if (out.size() < holes) out.push_back(3 * step);
  }
  return out;
}

namespace {

struct Hole {
  Rational cx, cy, r;
};

Rational dist2(const Rational& ax, const Rational& ay, const Rational& bx, const Rational& by) {
  Rational dx = ax - bx, dy = ay - by;
  return dx * dx + dy * dy;
}

}  // namespace

NCDomain build_band_domain(const BandSpec& spec) {
  if (spec.bands.empty()) throw InvalidArgument("band spec has no bands");
  if (spec.outer_center.size() != 2) throw InvalidArgument("outer centre must be a plane point");
  if (sgn(spec.outer_radius) <= 0) throw InvalidArgument("outer radius must be positive");
  for (std::size_t j = 0; j < spec.bands.size(); ++j) {
    const Band& b = spec.bands[j];
    if (b.t_lo >= b.t_hi)
      throw InvalidArgument("band " + std::to_string(j + 1) + " needs t_lo < t_hi");
    if (b.holes == 0) throw InvalidArgument("band " + std::to_string(j + 1) + " needs at least one hole");
    if (j + 1 < spec.bands.size() && b.t_hi > spec.bands[j + 1].t_lo)
      throw InvalidArgument("bands " + std::to_string(j + 1) + " and " + std::to_string(j + 2) +
                            " overlap (t_hi must not exceed the next t_lo)");
  }

  const Rational& ox = spec.outer_center[0];
  const Rational& oy = spec.outer_center[1];
  const Rational R = spec.outer_radius;

  std::vector<Hole> holes;
  Rational reach2 = 0;  // squared distance from the outer centre to the farthest tangency point
  for (const Band& b : spec.bands) {
    const Rational r = (b.t_hi - b.t_lo) / 2;
    const Rational cx = (b.t_lo + b.t_hi) / 2;
    const auto offs = hole_offsets(b.holes);
    long far = 0;
    for (long o : offs) far = std::max(far, std::labs(o));
    if (far * r + r > R - r)
      throw BuildError("holes of band (" + to_string(b.t_lo) + ", " + to_string(b.t_hi) +
                       ") do not fit inside the outer circle of radius " + to_string(R));
    for (long o : offs) {
      Hole h{cx, oy + r * o, r};
      holes.push_back(h);
      reach2 = std::max(reach2, dist2(b.t_lo, h.cy, ox, oy));
      reach2 = std::max(reach2, dist2(b.t_hi, h.cy, ox, oy));
    }
  }
  if (R * R < 9 * reach2)
    throw BuildError("outer radius " + to_string(R) +
                     " is not large enough: it must be at least three times the distance from the "
                     "outer centre to every hole tangency point");

  NCDomain d;
  d.ambient_dim = 2;
  d.neighborhood = WholeSpace{};
  d.constraints.push_back(sphere_poly(spec.outer_center, R, 2, Orientation::InsidePositive));
  for (std::size_t a = 0; a < holes.size(); ++a) {
    const Hole& h = holes[a];
    if (dist2(h.cx, h.cy, ox, oy) >= (R - h.r) * (R - h.r))
      throw BuildError("hole centred at (" + to_string(h.cx) + ", " + to_string(h.cy) +
                       ") is not strictly inside the outer circle");
    for (std::size_t b = 0; b < a; ++b) {
      const Hole& g = holes[b];
      const Rational d2 = dist2(h.cx, h.cy, g.cx, g.cy);
      const Rational rr = (h.r + g.r) * (h.r + g.r);
      if (d2 < rr)
        throw BuildError("hole disks centred at (" + to_string(g.cx) + ", " + to_string(g.cy) +
                         ") and (" + to_string(h.cx) + ", " + to_string(h.cy) + ") overlap");
      if (d2 == rr) d.expected_intersections.emplace_back(b + 1, a + 1);
    }
    RationalPoint c{h.cx, h.cy};
    d.constraints.push_back(sphere_poly(c, h.r, 2, Orientation::OutsidePositive));
  }
  std::sort(d.expected_intersections.begin(), d.expected_intersections.end());

  std::ostringstream tag;
  tag << "band";
  for (const Band& b : spec.bands)
    tag << " (" << to_string(b.t_lo) << "," << to_string(b.t_hi) << "," << b.holes << ")";
  tag << " outer (" << to_string(ox) << "," << to_string(oy) << ") r=" << to_string(R);
  d.provenance = tag.str();
  return d;
}

NCDomain lift_product(const NCDomain& d1, const NCDomain& d2) {
  d1.validate();
  d2.validate();
  if (d2.ambient_dim != 2)
    throw DimensionError("the second factor of lift_product must be a plane domain");
  const std::size_t k = d1.ambient_dim;
  const std::size_t n = k + 1;

  NCDomain out;
  out.ambient_dim = n;
  std::vector<std::optional<std::size_t>> map1(k);
  for (std::size_t i = 0; i < k; ++i) map1[i] = i;
  const std::vector<std::optional<std::size_t>> map2{std::size_t{0}, k};
  for (const auto& f : d1.constraints) out.constraints.push_back(f.substitute_coords(map1, n));
  for (const auto& f : d2.constraints) out.constraints.push_back(f.substitute_coords(map2, n));

  for (auto p : d1.expected_intersections) out.expected_intersections.push_back(p);
  const std::size_t l1 = d1.constraints.size();
  for (auto [i, j] : d2.expected_intersections) out.expected_intersections.emplace_back(i + l1, j + l1);
  // Cylinders over the two factors meet transversally; every cross pair may intersect.
  for (std::size_t i = 0; i < l1; ++i)
    for (std::size_t j = 0; j < d2.constraints.size(); ++j)
      out.expected_intersections.emplace_back(i, l1 + j);
  std::sort(out.expected_intersections.begin(), out.expected_intersections.end());

  const auto* b1 = std::get_if<Ball>(&d1.neighborhood);
  const auto* b2 = std::get_if<Ball>(&d2.neighborhood);
  if (!b1 && !b2) {
    out.neighborhood = WholeSpace{};
  } else if (b1 && b2) {
    Ball b;
    b.center = b1->center;
    b.center.push_back(b2->center[1]);
    b.radius = b1->radius + b2->radius;
    out.neighborhood = b;
  } else {
    throw InvalidArgument(
        "lift_product needs both neighborhoods to be the whole space or both to be balls");
  }
  out.provenance = "lift(" + d1.provenance + " ; " + d2.provenance + ")";
  return out;
}

const char* to_string(Membership m) {
  switch (m) {
    case Membership::Interior: return "Interior";
    case Membership::Boundary: return "Boundary";
    case Membership::Outside: return "Outside";
  }
  return "?";
}

bool in_neighborhood(const NCDomain& d, std::span<const Rational> x, bool closed) {
  const auto* b = std::get_if<Ball>(&d.neighborhood);
  if (!b) return true;
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    Rational t = x[i] - b->center[i];
    s += t * t;
  }
  const Rational r2 = b->radius * b->radius;
  return closed ? s <= r2 : s < r2;
}

Membership closure_membership(const NCDomain& d, std::span<const Rational> x) {
  if (x.size() != d.ambient_dim)
    throw DimensionError("point has " + std::to_string(x.size()) + " coordinates, domain lives in R^" +
                         std::to_string(d.ambient_dim));
  bool any_zero = false;
  for (const auto& f : d.constraints) {
    const int s = sgn(f.eval(x));
    if (s < 0) return Membership::Outside;
    if (s == 0) any_zero = true;
  }
  if (!any_zero) return in_neighborhood(d, x, false) ? Membership::Interior : Membership::Outside;
  return in_neighborhood(d, x, true) ? Membership::Boundary : Membership::Outside;
}

Membership closure_membership(const NCDomain& d, std::span<const double> x, double tol) {
  if (x.size() != d.ambient_dim) throw DimensionError("point dimension differs from the domain");
  bool any_zero = false;
  for (const auto& f : d.constraints) {
    const double v = f.eval(x);
    if (v < -tol) return Membership::Outside;
    if (v <= tol) any_zero = true;
  }
  double s = 0.0, r2 = 0.0;
  if (const auto* b = std::get_if<Ball>(&d.neighborhood)) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double t = x[i] - b->center[i].get_d();
      s += t * t;
    }
    r2 = b->radius.get_d() * b->radius.get_d();
  } else {
    r2 = 1.0;
  }
  if (!any_zero) return s < r2 ? Membership::Interior : Membership::Outside;
  return s <= r2 + tol ? Membership::Boundary : Membership::Outside;
}

std::vector<std::size_t> TransversalityReport::failing() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < samples.size(); ++i)
    if (!samples[i].pass) out.push_back(i);
  return out;
}

namespace {

std::size_t exact_rank(std::vector<std::vector<Rational>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && sgn(rows[piv][c]) == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (sgn(rows[r][c]) == 0) continue;
      const Rational f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

std::size_t float_rank(std::vector<std::vector<double>> rows, double rel_tol) {
  double scale = 0.0;
  for (const auto& r : rows)
    for (double v : r) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0;
  const double thresh = rel_tol * scale;
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    for (std::size_t r = rank + 1; r < rows.size(); ++r)
      if (std::abs(rows[r][c]) > std::abs(rows[piv][c])) piv = r;
    if (std::abs(rows[piv][c]) <= thresh) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      const double f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

std::vector<double> to_doubles(std::span<const Rational> x) {
  std::vector<double> out;
  out.reserve(x.size());
  for (const auto& v : x) out.push_back(v.get_d());
  return out;
}

std::string describe_point(std::span<const double> x) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ")";
  return os.str();
}

void finish(TransversalityReport& rep) {
  rep.pass = std::all_of(rep.samples.begin(), rep.samples.end(), [](const auto& s) { return s.pass; });
}

}  // namespace

TransversalityReport check_transversality(const NCDomain& d, const std::vector<RationalPoint>& samples) {
  d.validate();
  TransversalityReport rep;
  for (const auto& x : samples) {
    if (x.size() != d.ambient_dim) throw DimensionError("sample dimension differs from the domain");
    TransversalitySample s;
    s.point = to_doubles(x);
    s.exact = true;
    std::vector<std::vector<Rational>> rows;
    for (std::size_t j = 0; j < d.constraints.size(); ++j) {
      if (sgn(d.constraints[j].eval(x)) != 0) continue;
      s.active.push_back(j);
      rows.push_back(d.constraints[j].gradient(x));
      s.normals.push_back(to_doubles(rows.back()));
    }
    if (s.active.empty()) {
      rep.warnings.push_back("sample " + describe_point(s.point) + " lies on no constraint; skipped");
      continue;
    }
    s.rank = exact_rank(std::move(rows));
    s.pass = s.rank == s.active.size();
    rep.samples.push_back(std::move(s));
  }
  finish(rep);
  return rep;
}

TransversalityReport check_transversality(const NCDomain& d,
                                          const std::vector<std::vector<double>>& samples,
                                          const TransversalityOptions& opts) {
  d.validate();
  TransversalityReport rep;
  for (const auto& x : samples) {
    if (x.size() != d.ambient_dim) throw DimensionError("sample dimension differs from the domain");
    TransversalitySample s;
    s.point = x;
    for (std::size_t j = 0; j < d.constraints.size(); ++j) {
      const auto g = d.constraints[j].gradient(std::span<const double>(x));
      double gn = 0.0;
      for (double v : g) gn += v * v;
      gn = std::sqrt(gn);
      if (std::abs(d.constraints[j].eval(std::span<const double>(x))) >
          opts.zero_tolerance * std::max(1.0, gn))
        continue;
      s.active.push_back(j);
      s.normals.push_back(g);
    }
    if (s.active.empty()) {
      rep.warnings.push_back("sample " + describe_point(s.point) + " lies on no constraint; skipped");
      continue;
    }
    s.rank = float_rank(s.normals, opts.rank_tolerance);
    s.pass = s.rank == s.active.size();
    rep.samples.push_back(std::move(s));
  }
  finish(rep);
  return rep;
}

TransversalityReport check_transversality(const NCDomain& d, std::size_t budget, unsigned long seed,
                                          const TransversalityOptions& opts) {
  d.validate();
  const std::size_t n = d.ambient_dim;
  std::vector<std::optional<CircleForm>> forms;
  for (const auto& f : d.constraints) forms.push_back(as_circle(f));

  // Bounding box of all circle extents, used for the free coordinates.
  double lo = -1.0, hi = 1.0;
  for (const auto& f : forms) {
    if (!f) continue;
    const double r = std::sqrt(f->radius_squared.get_d());
    lo = std::min({lo, f->center_x.get_d() - r, f->center_y.get_d() - r});
    hi = std::max({hi, f->center_x.get_d() + r, f->center_y.get_d() + r});
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> numer(-64, 64);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Rational box_lo = from_double(std::floor(lo));
  const Rational box_width = from_double(std::ceil(hi) - std::floor(lo));
  std::uniform_int_distribution<long> step(0, 64);
  auto free_coord = [&]() -> Rational { return box_lo + box_width * Rational(step(rng), 64); };

  std::vector<RationalPoint> exact;
  std::vector<std::vector<double>> approx;
  std::vector<std::string> warnings;
  for (std::size_t j = 0; j < forms.size(); ++j) {
    if (!forms[j]) {
      warnings.push_back("constraint " + std::to_string(j + 1) + " is not a circle cylinder; no sampler");
      continue;
    }
    const auto& c = *forms[j];
    for (std::size_t s = 0; s < budget; ++s) {
      RationalPoint p(n);
      for (std::size_t i = 0; i < n; ++i) p[i] = free_coord();
      if (c.radius) {
        // Rational parametrisation of the circle.
        const Rational t(numer(rng), 16 + static_cast<long>(s));
        const Rational den = 1 + t * t;
        p[0] = c.center_x + *c.radius * (1 - t * t) / den;
        p[c.axis] = c.center_y + *c.radius * 2 * t / den;
        exact.push_back(std::move(p));
      } else {
        const double th = 2 * M_PI * unit(rng);
        const double r = std::sqrt(c.radius_squared.get_d());
        std::vector<double> q(n);
        for (std::size_t i = 0; i < n; ++i) q[i] = p[i].get_d();
        q[0] = c.center_x.get_d() + r * std::cos(th);
        q[c.axis] = c.center_y.get_d() + r * std::sin(th);
        approx.push_back(std::move(q));
      }
    }
  }
  for (std::size_t a = 0; a < forms.size(); ++a)
    for (std::size_t b = a + 1; b < forms.size(); ++b) {
      if (!forms[a] || !forms[b]) continue;
      const auto& A = *forms[a];
      const auto& B = *forms[b];
      const double ax = A.center_x.get_d(), ay = A.center_y.get_d(), ar = std::sqrt(A.radius_squared.get_d());
      const double bx = B.center_x.get_d(), by = B.center_y.get_d(), br = std::sqrt(B.radius_squared.get_d());
      if (A.axis != B.axis) {
        const double xl = std::max(ax - ar, bx - br), xh = std::min(ax + ar, bx + br);
        if (xl >= xh) continue;
        for (std::size_t s = 0; s < budget; ++s) {
          const double x1 = xl + (xh - xl) * (0.02 + 0.96 * unit(rng));
          std::vector<double> q(n);
          for (std::size_t i = 0; i < n; ++i) q[i] = to_double(free_coord());
          q[0] = x1;
          const double sa = unit(rng) < 0.5 ? -1.0 : 1.0, sb = unit(rng) < 0.5 ? -1.0 : 1.0;
          q[A.axis] = ay + sa * std::sqrt(std::max(0.0, ar * ar - (x1 - ax) * (x1 - ax)));
          q[B.axis] = by + sb * std::sqrt(std::max(0.0, br * br - (x1 - bx) * (x1 - bx)));
          approx.push_back(std::move(q));
        }
      } else {
        // Two circles in one plane: 0, 1 or 2 intersection points.
        const Rational dd = dist2(A.center_x, A.center_y, B.center_x, B.center_y);
        const double dist = std::sqrt(dd.get_d());
        if (dist == 0.0 && A.radius_squared == B.radius_squared) {
          // Coincident circles: every point of one is on the other.
          for (std::size_t s = 0; s < budget; ++s) {
            std::vector<double> q(n);
            for (std::size_t i = 0; i < n; ++i) q[i] = to_double(free_coord());
            const double th = 2 * M_PI * unit(rng);
            q[0] = ax + ar * std::cos(th);
            q[A.axis] = ay + ar * std::sin(th);
            approx.push_back(std::move(q));
          }
          continue;
        }
        if (dist == 0.0 || dist > ar + br + 1e-12 || dist < std::abs(ar - br) - 1e-12) continue;
        const double along = (ar * ar - br * br + dist * dist) / (2 * dist);
        const double h = std::sqrt(std::max(0.0, ar * ar - along * along));
        const double ux = (bx - ax) / dist, uy = (by - ay) / dist;
        for (double sgn_h : {1.0, -1.0}) {
          std::vector<double> q(n);
          for (std::size_t i = 0; i < n; ++i) q[i] = to_double(free_coord());
          q[0] = ax + along * ux - sgn_h * h * uy;
          q[A.axis] = ay + along * uy + sgn_h * h * ux;
          approx.push_back(std::move(q));
          if (h == 0.0) break;
        }
      }
    }

  TransversalityReport rep = check_transversality(d, exact);
  TransversalityReport rep2 = check_transversality(d, approx, opts);
  for (auto& s : rep2.samples) rep.samples.push_back(std::move(s));
  for (auto& w : rep2.warnings) rep.warnings.push_back(std::move(w));
  for (auto& w : warnings) rep.warnings.push_back(std::move(w));
  finish(rep);
  return rep;
}

std::vector<SingularLevel> singular_levels(const NCDomain& d) {
  if (d.ambient_dim != 2) throw UnsupportedDomain("singular_levels needs a plane circle arrangement");
  std::map<Rational, std::vector<RationalPoint>> by_level;
  for (std::size_t j = 0; j < d.constraints.size(); ++j) {
    const auto f = as_circle(d.constraints[j]);
    if (!f || !f->radius)
      throw UnsupportedDomain("constraint " + std::to_string(j + 1) +
                              " is not a circle with rational radius; use the grid oracle");
    by_level[f->center_x - *f->radius].push_back({f->center_x - *f->radius, f->center_y});
    by_level[f->center_x + *f->radius].push_back({f->center_x + *f->radius, f->center_y});
  }
  std::vector<SingularLevel> out;
  for (auto& [lvl, pts] : by_level) out.push_back({lvl, std::move(pts)});
  return out;
}

std::vector<Rational> cylinder_extreme_levels(const NCDomain& d) {
  std::vector<Rational> out;
  for (const auto& p : d.constraints) {
    const auto f = as_circle(p);
    if (!f || !f->radius) continue;
    out.push_back(f->center_x - *f->radius);
    out.push_back(f->center_x + *f->radius);
  }
  for (auto& q : out) q.canonicalize();
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace ncreeb
