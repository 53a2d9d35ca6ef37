#include "klein/plane_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

#include "klein/checked.hpp"

namespace klein {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kLn4 = 2.0 * std::numbers::ln2;

void require_finite(const PlanePoint& x) {
  if (!std::isfinite(x.theta) || !std::isfinite(x.r)) {
    throw std::domain_error("plane point must be finite");
  }
}

// log(exp(x) + exp(y)) without overflow; either argument may be -inf.
double log_add_exp(double x, double y) {
  const double hi = std::max(x, y);
  const double lo = std::min(x, y);
  if (hi == -std::numeric_limits<double>::infinity()) return hi;
  return hi + std::log1p(std::exp(lo - hi));
}

// Lift of diag(2^q, 2^-q). On the branch |theta - k pi/2| <= pi/4 the angle
// is kept within the branch, so the lines theta = k pi/2 are fixed and the lift
// is continuous across branch boundaries.
PlanePoint apply_b_power(std::int64_t q, const PlanePoint& x) {
  if (q == 0) return x;
  const double k = std::nearbyint(x.theta / kHalfPi);
  const double phi = x.theta - k * kHalfPi;
  const bool odd = std::fmod(k, 2.0) != 0.0;
  const double qd = static_cast<double>(q);

  // Even branch: tan(theta') = 4^-q tan(theta). Odd branch: tan(theta) = -cot(phi),
  // which turns the same law into tan(phi') = 4^q tan(phi).
  const double scale_exp = odd ? 2.0 * qd : -2.0 * qd;  // power of two applied to tan(phi)
  const double phi_out = std::atan(std::ldexp(std::tan(phi), static_cast<int>(std::clamp(scale_exp, -4000.0, 4000.0))));

  const double c = odd ? std::sin(phi) : std::cos(phi);  // cos(theta) up to sign
  const double s = odd ? std::cos(phi) : std::sin(phi);  // sin(theta) up to sign
  const double log_c2 = c == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(c * c);
  const double log_s2 = s == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(s * s);
  // |B^q z| / |z| = sqrt(4^q cos^2 + 4^-q sin^2)
  const double log_stretch = 0.5 * log_add_exp(qd * kLn4 + log_c2, -qd * kLn4 + log_s2);

  return {k * kHalfPi + phi_out, x.r - log_stretch};
}

PlanePoint apply_a_power(std::int64_t p, const PlanePoint& x) {
  return {x.theta + static_cast<double>(p) * kHalfPi, x.r};
}

PlanePoint lerp(const PlanePoint& x, const PlanePoint& y, double t) {
  return {x.theta + t * (y.theta - x.theta), x.r + t * (y.r - x.r)};
}

double segment_point_distance(const PlanePoint& a, const PlanePoint& b, const PlanePoint& p) {
  const double dx = b.theta - a.theta;
  const double dy = b.r - a.r;
  const double len2 = dx * dx + dy * dy;
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp(((p.theta - a.theta) * dx + (p.r - a.r) * dy) / len2, 0.0, 1.0);
  return distance(lerp(a, b, t), p);
}

double cross(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

double segment_segment_distance(const PlanePoint& a, const PlanePoint& b, const PlanePoint& c,
                                const PlanePoint& d) {
  const double d1 = cross(b.theta - a.theta, b.r - a.r, c.theta - a.theta, c.r - a.r);
  const double d2 = cross(b.theta - a.theta, b.r - a.r, d.theta - a.theta, d.r - a.r);
  const double d3 = cross(d.theta - c.theta, d.r - c.r, a.theta - c.theta, a.r - c.r);
  const double d4 = cross(d.theta - c.theta, d.r - c.r, b.theta - c.theta, b.r - c.r);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return 0.0;
  return std::min({segment_point_distance(a, b, c), segment_point_distance(a, b, d),
                   segment_point_distance(c, d, a), segment_point_distance(c, d, b)});
}

// Nonzero winding number of a closed polyline around p.
bool inside_polygon(const std::vector<PlanePoint>& poly, const PlanePoint& p) {
  int winding = 0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& u = poly[i];
    const auto& v = poly[(i + 1) % n];
    const double side = cross(v.theta - u.theta, v.r - u.r, p.theta - u.theta, p.r - u.r);
    if (u.r <= p.r) {
      if (v.r > p.r && side > 0) ++winding;
    } else {
      if (v.r <= p.r && side < 0) --winding;
    }
  }
  return winding != 0;
}

struct SamplingOptions {
  double max_chord = 0.0;
  double sag_tol = 0.0;
  int max_depth = 40;
  std::size_t max_points = 2'000'000;
};

struct ImagePolyline {
  std::vector<PlanePoint> points;
  double max_sag = 0.0;
  std::size_t unresolved = 0;
  bool truncated = false;
};

// Adaptive sampling of f(param(t)), t in [t0, t1]. For closed curves the
// last point (t1) is dropped since it repeats the first.
class ImageSampler {
 public:
  ImageSampler(std::function<PlanePoint(double)> param, const PlaneHomeo& f, SamplingOptions options)
      : param_(std::move(param)), f_(f), options_(options) {}

  ImagePolyline run(double t0, double t1, std::size_t base_segments, bool closed) {
    out_ = {};
    double ta = t0;
    PlanePoint pa = f_(param_(ta));
    out_.points.push_back(pa);
    for (std::size_t i = 1; i <= base_segments; ++i) {
      const double tb = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(base_segments);
      const PlanePoint pb = f_(param_(tb));
      refine(ta, pa, tb, pb, 0);
      ta = tb;
      pa = pb;
    }
    if (closed && out_.points.size() > 1) out_.points.pop_back();
    return std::move(out_);
  }

 private:
  void refine(double ta, const PlanePoint& pa, double tb, const PlanePoint& pb, int depth) {
    const double tm = 0.5 * (ta + tb);
    const PlanePoint pm = f_(param_(tm));
    const double chord = distance(pa, pb);
    const double sag = segment_point_distance(pa, pb, pm);
    const bool coarse = chord > options_.max_chord || sag > options_.sag_tol;
    if (coarse && !out_.truncated) {
      if (depth < options_.max_depth && tm != ta && tm != tb && out_.points.size() < options_.max_points) {
        refine(ta, pa, tm, pm, depth + 1);
        refine(tm, pm, tb, pb, depth + 1);
        return;
      }
      if (out_.points.size() >= options_.max_points) out_.truncated = true;
    }
    if (coarse) ++out_.unresolved;
    out_.max_sag = std::max(out_.max_sag, sag);
    out_.points.push_back(pm);
    out_.points.push_back(pb);
  }

  std::function<PlanePoint(double)> param_;
  const PlaneHomeo& f_;
  SamplingOptions options_;
  ImagePolyline out_;
};

constexpr double kDiskMargin = 1e-6;

std::function<PlanePoint(double)> circle_param(const Disk& d) {
  return [d](double t) {
    return PlanePoint{d.center.theta + d.radius * std::cos(t), d.center.r + d.radius * std::sin(t)};
  };
}

std::size_t circle_base_segments(const Disk& d) {
  (void)d;
  // Arc spacing radius / 32 means an angular step of 1/32.
  return static_cast<std::size_t>(std::ceil(2.0 * kPi * 32.0));
}

ImagePolyline disk_boundary_image(const Disk& d, const PlaneHomeo& g, SamplingOptions options) {
  ImageSampler sampler(circle_param(d), g, options);
  return sampler.run(0.0, 2.0 * kPi, circle_base_segments(d), true);
}

}  // namespace

double distance(const PlanePoint& x, const PlanePoint& y) { return std::hypot(x.theta - y.theta, x.r - y.r); }

PlanePoint model_apply(const BsElement& g, const PlanePoint& x) {
  require_finite(x);
  return apply_a_power(g.p, apply_b_power(g.q, x));
}

std::array<double, 2> project(const PlanePoint& x) {
  const double m = std::exp(-x.r);
  return {m * std::cos(x.theta), m * std::sin(x.theta)};
}

std::array<double, 2> matrix_apply(const BsElement& g, const std::array<double, 2>& z) {
  const double scale = std::ldexp(1.0, static_cast<int>(g.q));
  std::array<double, 2> w{z[0] * scale, z[1] / scale};
  // A is the quarter turn; only p mod 4 matters.
  const auto turns = ((g.p % 4) + 4) % 4;
  for (int i = 0; i < turns; ++i) w = {-w[1], w[0]};
  return w;
}

// ---------------------------------------------------------------------------

PlaneHomeo::PlaneHomeo(Fn forward, Fn inverse, std::string name)
    : forward_(std::move(forward)), inverse_(std::move(inverse)), name_(std::move(name)) {}

PlaneHomeo PlaneHomeo::model(const BsElement& g) {
  const BsElement inv = bs_inverse(g);
  PlaneHomeo h([g](const PlanePoint& x) { return model_apply(g, x); },
               [inv](const PlanePoint& x) { return model_apply(inv, x); },
               "a^" + std::to_string(g.p) + " b^" + std::to_string(g.q));
  h.element_ = g;
  return h;
}

PlaneHomeo PlaneHomeo::inverse() const {
  PlaneHomeo h(inverse_, forward_, "(" + name_ + ")^-1");
  if (element_) h.element_ = bs_inverse(*element_);
  return h;
}

PlaneHomeo PlaneHomeo::power(std::int64_t n) const {
  if (element_) return model(bs_power(*element_, n));
  if (n == 0) return PlaneHomeo([](const PlanePoint& x) { return x; }, [](const PlanePoint& x) { return x; }, "id");
  const PlaneHomeo base = n > 0 ? *this : inverse();
  const std::int64_t count = n > 0 ? n : checked_neg(n);
  const Fn fwd = base.forward_;
  const Fn inv = base.inverse_;
  return PlaneHomeo(
      [fwd, count](const PlanePoint& x) {
        PlanePoint y = x;
        for (std::int64_t i = 0; i < count; ++i) y = fwd(y);
        return y;
      },
      [inv, count](const PlanePoint& x) {
        PlanePoint y = x;
        for (std::int64_t i = 0; i < count; ++i) y = inv(y);
        return y;
      },
      "(" + name_ + ")^" + std::to_string(n));
}

PlaneHomeo compose(const PlaneHomeo& f, const PlaneHomeo& g) {
  if (f.model_element() && g.model_element()) {
    return PlaneHomeo::model(bs_multiply(*f.model_element(), *g.model_element()));
  }
  const PlaneHomeo fi = f.inverse();
  const PlaneHomeo gi = g.inverse();
  return PlaneHomeo([f, g](const PlanePoint& x) { return f(g(x)); },
                    [fi, gi](const PlanePoint& x) { return gi(fi(x)); }, f.name() + " o " + g.name());
}

PlaneHomeo conjugate(const PlaneHomeo& h, const PlaneHomeo& f) {
  const PlaneHomeo hi = h.inverse();
  const PlaneHomeo fi = f.inverse();
  return PlaneHomeo([h, f, hi](const PlanePoint& x) { return h(f(hi(x))); },
                    [h, fi, hi](const PlanePoint& x) { return h(fi(hi(x))); },
                    h.name() + " (" + f.name() + ") " + h.name() + "^-1");
}

PlaneHomeo undulation(double amplitude, int frequency, double phase) {
  const double k = frequency;
  return PlaneHomeo(
      [=](const PlanePoint& x) { return PlanePoint{x.theta, x.r + amplitude * std::sin(k * x.theta + phase)}; },
      [=](const PlanePoint& x) { return PlanePoint{x.theta, x.r - amplitude * std::sin(k * x.theta + phase)}; },
      "undulation");
}

PlaneHomeo shear(double amplitude, double frequency, double phase) {
  return PlaneHomeo(
      [=](const PlanePoint& x) { return PlanePoint{x.theta + amplitude * std::sin(frequency * x.r + phase), x.r}; },
      [=](const PlanePoint& x) { return PlanePoint{x.theta - amplitude * std::sin(frequency * x.r + phase), x.r}; },
      "shear");
}

// ---------------------------------------------------------------------------

RelationReport verify_relation(std::size_t samples, double tol, std::uint64_t seed, double freeness_threshold) {
  RelationReport report;
  report.samples = samples;
  report.tolerance = tol;
  report.freeness_threshold = freeness_threshold;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> theta_dist(-2.0 * kPi, 2.0 * kPi);
  std::uniform_real_distribution<double> r_dist(-5.0, 5.0);
  std::vector<PlanePoint> points(samples);
  for (auto& x : points) x = {theta_dist(rng), r_dist(rng)};

  const BsElement a = BsElement::a(), a_inv = BsElement::a(-1), b = BsElement::b(), b_inv = BsElement::b(-1);
  for (const auto& x : points) {
    const PlanePoint lhs = model_apply(a, model_apply(b, model_apply(a_inv, x)));
    const PlanePoint rhs = model_apply(b_inv, x);
    const double err = distance(lhs, rhs);
    if (err > report.relation_sup_error || !std::isfinite(err)) {
      report.relation_sup_error = err;
      report.relation_worst = x;
    }
  }
  report.relation_passed = std::isfinite(report.relation_sup_error) && report.relation_sup_error < tol;

  report.freeness_passed = true;
  for (int p = -6; p <= 6; ++p) {
    for (int q = -6; q <= 6; ++q) {
      const int size = std::abs(p) + std::abs(q);
      if (size == 0 || size > 6) continue;
      FreenessEntry entry{{p, q}, std::numeric_limits<double>::infinity(), {}};
      for (const auto& x : points) {
        const double disp = distance(model_apply(entry.element, x), x);
        if (disp < entry.min_displacement) {
          entry.min_displacement = disp;
          entry.argmin = x;
        }
      }
      if (!(entry.min_displacement > freeness_threshold)) report.freeness_passed = false;
      report.freeness.push_back(entry);
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace {

struct Vec {
  double x, y;
};

double turn(const Vec& u, const Vec& v) { return std::atan2(u.x * v.y - u.y * v.x, u.x * v.x + u.y * v.y); }

class TurnIntegrator {
 public:
  TurnIntegrator(const PlaneHomeo& f, PlanePoint start, PlanePoint end) : f_(f), start_(start), end_(end) {}

  double total(std::size_t base_segments) {
    double sum = 0.0;
    double t0 = 0.0;
    Vec v0 = displacement(t0);
    for (std::size_t i = 1; i <= base_segments; ++i) {
      const double t1 = static_cast<double>(i) / static_cast<double>(base_segments);
      const Vec v1 = displacement(t1);
      sum += refine(t0, v0, t1, v1, 0);
      t0 = t1;
      v0 = v1;
    }
    return sum;
  }

  std::size_t segments() const { return segments_; }

 private:
  static constexpr double kMaxStepTurn = kPi / 4.0;
  static constexpr int kMaxDepth = 40;

  Vec displacement(double t) const {
    const PlanePoint z = lerp(start_, end_, t);
    const PlanePoint fz = f_(z);
    const Vec v{fz.theta - z.theta, fz.r - z.r};
    if (!(std::hypot(v.x, v.y) > 1e-12)) {
      throw std::domain_error("index: map has a fixed point (or non-finite value) on the curve");
    }
    return v;
  }

  double refine(double t0, const Vec& v0, double t1, const Vec& v1, int depth) {
    const double tm = 0.5 * (t0 + t1);
    const Vec vm = displacement(tm);
    const double left = turn(v0, vm);
    const double right = turn(vm, v1);
    if (std::abs(left) < kMaxStepTurn && std::abs(right) < kMaxStepTurn &&
        std::abs(turn(v0, v1)) < kMaxStepTurn) {
      segments_ += 2;
      return left + right;
    }
    if (depth >= kMaxDepth) throw std::domain_error("index: curve refinement exceeded depth 40");
    return refine(t0, v0, tm, vm, depth + 1) + refine(tm, vm, t1, v1, depth + 1);
  }

  const PlaneHomeo& f_;
  PlanePoint start_;
  PlanePoint end_;
  std::size_t segments_ = 0;
};

IndexResult integrate_index(const PlaneHomeo& f, const PlanePoint& start, const PlanePoint& end, double tol) {
  IndexResult result;
  result.start = start;
  result.end = end;
  TurnIntegrator integrator(f, result.start, result.end);
  const double total = integrator.total(64);
  result.segments = integrator.segments();
  result.raw = total / (2.0 * kPi);
  result.value.twice = static_cast<std::int64_t>(std::llround(2.0 * result.raw));
  result.residual = std::abs(result.raw - result.value.value());
  if (result.residual > tol) {
    throw std::domain_error("index: raw value " + std::to_string(result.raw) + " is not within " +
                            std::to_string(tol) + " of a half-integer");
  }
  return result;
}

}  // namespace

IndexResult index(const PlaneHomeo& f, const BsElement& tau, const PlanePoint& seed, double tol) {
  require_finite(seed);
  if (tau.q != 0 || tau.p == 0) throw std::invalid_argument("index: tau must be a nonzero power of a");
  // For even k, a^k commutes with the model b and its a-commuting conjugates;
  // for odd k it inverts them, and the curve must end at tau(f(seed)).
  const PlanePoint end = tau.p % 2 == 0 ? model_apply(tau, seed) : model_apply(tau, f(seed));
  return integrate_index(f, seed, end, tol);
}

// ---------------------------------------------------------------------------

Disk::Disk(PlanePoint c, double rad) : center(c), radius(rad) {
  require_finite(c);
  if (!(rad > 0.0) || !std::isfinite(rad)) throw std::invalid_argument("disk radius must be positive");
}

CurveSample::CurveSample(std::vector<PlanePoint> pts, double tol) : points(std::move(pts)), tolerance(tol) {
  if (points.empty()) throw std::invalid_argument("curve needs at least one point");
  if (!(tol > 0.0)) throw std::invalid_argument("curve tolerance must be positive");
  for (std::size_t i = 0; i < points.size(); ++i) {
    require_finite(points[i]);
    if (i > 0 && points[i] == points[i - 1]) throw std::invalid_argument("consecutive curve points must differ");
  }
}

std::string to_string(Overlap o) {
  switch (o) {
    case Overlap::disjoint:
      return "disjoint";
    case Overlap::intersecting:
      return "intersecting";
    case Overlap::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

OverlapResult disk_image_overlap(const Disk& d, const PlaneHomeo& g) {
  OverlapResult result;
  const PlanePoint gc = g(d.center);
  if (distance(gc, d.center) < d.radius - kDiskMargin) {
    result.status = Overlap::intersecting;
    result.witness = gc;
    result.margin = kDiskMargin;
    result.boundary_distance = std::numeric_limits<double>::quiet_NaN();
    return result;
  }

  SamplingOptions options;
  options.max_chord = d.radius / 2.0;
  options.sag_tol = d.radius * 1e-4;
  options.max_depth = 40;
  options.max_points = 400'000;
  const auto image = disk_boundary_image(d, g, options);
  result.margin = kDiskMargin + 2.0 * image.max_sag;

  // Image points strictly inside D certify an intersection on their own.
  for (const auto& p : image.points) {
    if (distance(p, d.center) < d.radius - kDiskMargin) {
      result.status = Overlap::intersecting;
      result.witness = p;
      result.boundary_distance = distance(p, d.center);
      return result;
    }
  }

  double dmin = std::numeric_limits<double>::infinity();
  const std::size_t n = image.points.size();
  for (std::size_t i = 0; i < n; ++i) {
    dmin = std::min(dmin, segment_point_distance(image.points[i], image.points[(i + 1) % n], d.center));
  }
  result.boundary_distance = dmin;

  if (image.unresolved > 0 || image.truncated) {
    result.status = Overlap::inconclusive;
    return result;
  }
  if (dmin < d.radius - result.margin) {
    result.status = Overlap::intersecting;
    return result;
  }
  if (dmin > d.radius + result.margin) {
    if (inside_polygon(image.points, d.center)) {
      result.status = Overlap::intersecting;
      result.witness = d.center;
    } else {
      result.status = Overlap::disjoint;
    }
    return result;
  }
  result.status = Overlap::inconclusive;
  return result;
}

WanderingReport wandering_check(const Disk& d, int p_range, int q_range) {
  WanderingReport report;
  report.b_overlap = disk_image_overlap(d, PlaneHomeo::model(BsElement::b()));
  report.precondition_ok = report.b_overlap.status == Overlap::disjoint;
  report.min_gap = std::numeric_limits<double>::infinity();
  if (!report.precondition_ok) return report;

  for (int p = -p_range; p <= p_range; ++p) {
    for (int q = -q_range; q <= q_range; ++q) {
      if (p == 0 && q == 0) continue;
      const BsElement g{checked_mul(2, p), q};
      const auto overlap = disk_image_overlap(d, PlaneHomeo::model(g));
      ++report.checked;
      if (overlap.status == Overlap::disjoint) {
        report.min_gap = std::min(report.min_gap, overlap.boundary_distance - d.radius);
      } else {
        report.violations.push_back({g, overlap});
      }
    }
  }
  return report;
}

std::optional<NonwanderingWitness> nonwandering_witness(const Disk& d, int n_max) {
  // Interior sample used when the image is too distorted to sample its boundary.
  std::vector<PlanePoint> interior;
  constexpr int kRings = 24;
  for (int i = 0; i <= kRings; ++i) {
    const double rho = d.radius * (1.0 - 1e-3) * static_cast<double>(i) / kRings;
    const int spokes = i == 0 ? 1 : 8 * i;
    for (int j = 0; j < spokes; ++j) {
      const double t = 2.0 * kPi * static_cast<double>(j) / spokes;
      interior.push_back({d.center.theta + rho * std::cos(t), d.center.r + rho * std::sin(t)});
    }
  }
  auto strictly_inside = [&](const PlanePoint& p) { return distance(p, d.center) < d.radius - kDiskMargin; };

  for (int n = 1; n <= n_max; ++n) {
    for (int sign : {-1, 1}) {
      const BsElement g = bs_multiply(BsElement::b(sign * n), BsElement::a());
      const auto homeo = PlaneHomeo::model(g);
      const auto overlap = disk_image_overlap(d, homeo);
      if (overlap.status == Overlap::intersecting) {
        return NonwanderingWitness{n, sign, overlap.witness.value_or(d.center)};
      }
      const auto inverse = homeo.inverse();
      for (const auto& y : interior) {
        if (const auto gy = homeo(y); strictly_inside(gy)) return NonwanderingWitness{n, sign, gy};
        if (strictly_inside(inverse(y))) return NonwanderingWitness{n, sign, y};
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

using Cell = std::pair<std::int64_t, std::int64_t>;

struct Window {
  double theta_lo, theta_hi, r_lo, r_hi;
  bool contains(const PlanePoint& p) const {
    return p.theta >= theta_lo && p.theta <= theta_hi && p.r >= r_lo && p.r <= r_hi;
  }
};

class Rasterizer {
 public:
  Rasterizer(double grid, Window window) : grid_(grid), window_(window) {}

  Cell cell_of(const PlanePoint& p) const {
    return {static_cast<std::int64_t>(std::floor(p.theta / grid_)), static_cast<std::int64_t>(std::floor(p.r / grid_))};
  }

  void mark_polyline(const std::vector<PlanePoint>& pts, bool closed, std::set<Cell>& cells) const {
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (window_.contains(pts[i])) cells.insert(cell_of(pts[i]));
      if (i + 1 < n || closed) {
        const PlanePoint mid = lerp(pts[i], pts[(i + 1) % n], 0.5);
        if (window_.contains(mid) && distance(pts[i], pts[(i + 1) % n]) <= grid_) cells.insert(cell_of(mid));
      }
    }
  }

  // Scanline fill of a closed polyline, sampling rows at cell centers.
  void fill_polygon(const std::vector<PlanePoint>& pts, std::set<Cell>& cells) const {
    const std::int64_t row_lo = static_cast<std::int64_t>(std::floor(window_.r_lo / grid_));
    const std::int64_t row_hi = static_cast<std::int64_t>(std::floor(window_.r_hi / grid_));
    const std::int64_t col_lo = static_cast<std::int64_t>(std::floor(window_.theta_lo / grid_));
    const std::int64_t col_hi = static_cast<std::int64_t>(std::floor(window_.theta_hi / grid_));
    std::map<std::int64_t, std::vector<double>> crossings;
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
      const PlanePoint& u = pts[i];
      const PlanePoint& v = pts[(i + 1) % n];
      if (u.r == v.r) continue;
      const double lo = std::min(u.r, v.r);
      const double hi = std::max(u.r, v.r);
      std::int64_t j = std::max<std::int64_t>(row_lo, static_cast<std::int64_t>(std::ceil(lo / grid_ - 0.5)));
      for (; j <= row_hi; ++j) {
        const double rc = (static_cast<double>(j) + 0.5) * grid_;
        if (rc >= hi) break;
        if (rc < lo) continue;
        crossings[j].push_back(u.theta + (rc - u.r) * (v.theta - u.theta) / (v.r - u.r));
      }
    }
    for (auto& [row, xs] : crossings) {
      std::sort(xs.begin(), xs.end());
      for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
        const auto c0 = std::max(col_lo, static_cast<std::int64_t>(std::floor(xs[k] / grid_)));
        const auto c1 = std::min(col_hi, static_cast<std::int64_t>(std::floor(xs[k + 1] / grid_)));
        for (auto c = c0; c <= c1; ++c) cells.insert({c, row});
      }
    }
  }

 private:
  double grid_;
  Window window_;
};

struct ImageOfSet {
  std::vector<PlanePoint> points;
  bool closed = false;
  std::size_t unresolved = 0;
  double max_sag = 0.0;
};

ImageOfSet image_of(const CompactSet& k, const PlaneHomeo& f, SamplingOptions options) {
  ImageOfSet out;
  if (const auto* d = std::get_if<Disk>(&k)) {
    auto poly = disk_boundary_image(*d, f, options);
    out.points = std::move(poly.points);
    out.unresolved = poly.unresolved;
    out.max_sag = poly.max_sag;
    out.closed = true;
    return out;
  }
  const auto& curve = std::get<CurveSample>(k);
  if (curve.points.size() == 1) {
    out.points = {f(curve.points.front())};
    return out;
  }
  const auto& pts = curve.points;
  auto param = [&pts](double t) {
    const auto last = static_cast<double>(pts.size() - 1);
    t = std::clamp(t, 0.0, last);
    const auto i = std::min(static_cast<std::size_t>(t), pts.size() - 2);
    return lerp(pts[i], pts[i + 1], t - static_cast<double>(i));
  };
  ImageSampler sampler(param, f, options);
  auto poly = sampler.run(0.0, static_cast<double>(pts.size() - 1), 8 * (pts.size() - 1), false);
  out.points = std::move(poly.points);
  out.unresolved = poly.unresolved;
  out.max_sag = poly.max_sag;
  return out;
}

Window window_around(const CompactSet& k, double pad) {
  if (const auto* d = std::get_if<Disk>(&k)) {
    return {d->center.theta - d->radius - pad, d->center.theta + d->radius + pad, d->center.r - d->radius - pad,
            d->center.r + d->radius + pad};
  }
  const auto& pts = std::get<CurveSample>(k).points;
  Window w{pts[0].theta, pts[0].theta, pts[0].r, pts[0].r};
  for (const auto& p : pts) {
    w.theta_lo = std::min(w.theta_lo, p.theta);
    w.theta_hi = std::max(w.theta_hi, p.theta);
    w.r_lo = std::min(w.r_lo, p.r);
    w.r_hi = std::max(w.r_hi, p.r);
  }
  w.theta_lo -= pad;
  w.theta_hi += pad;
  w.r_lo -= pad;
  w.r_hi += pad;
  return w;
}

void require_free(const CompactSet& k, const PlaneHomeo& f) {
  if (const auto* d = std::get_if<Disk>(&k)) {
    if (disk_image_overlap(*d, f).status != Overlap::disjoint) {
      throw std::domain_error("limit_set_estimate: disk is not certified free for the map");
    }
    return;
  }
  const auto& curve = std::get<CurveSample>(k);
  SamplingOptions options;
  options.max_chord = curve.tolerance;
  options.sag_tol = curve.tolerance * 1e-2;
  const auto image = image_of(k, f, options);
  if (image.unresolved > 0) throw std::domain_error("limit_set_estimate: curve image could not be resolved");
  const double margin = kDiskMargin + 2.0 * image.max_sag;
  const auto& src = curve.points;
  const auto& dst = image.points;
  for (std::size_t i = 0; i < src.size(); ++i) {
    for (std::size_t j = 0; j < dst.size(); ++j) {
      const auto& a = src[i];
      const auto& b = src[std::min(i + 1, src.size() - 1)];
      const auto& c = dst[j];
      const auto& e = dst[std::min(j + 1, dst.size() - 1)];
      if (segment_segment_distance(a, b, c, e) <= margin) {
        throw std::domain_error("limit_set_estimate: curve is not certified free for the map");
      }
    }
  }
}

}  // namespace

LimitSetEstimate limit_set_estimate(const CompactSet& k, const PlaneHomeo& f, int n_max, double grid,
                                    double window_pad) {
  if (n_max < 1) throw std::invalid_argument("limit_set_estimate: n_max must be positive");
  if (!(grid > 0.0)) throw std::invalid_argument("limit_set_estimate: grid must be positive");
  require_free(k, f);

  LimitSetEstimate est;
  est.grid = grid;
  est.n_max = n_max;
  est.n_stable = std::max(1, n_max / 2);

  const Window window = window_around(k, window_pad);
  const Rasterizer raster(grid, window);
  SamplingOptions options;
  options.max_chord = grid / 2.0;
  options.sag_tol = grid / 4.0;
  options.max_depth = 60;
  options.max_points = 4'000'000;

  auto rasterize = [&](int n, std::set<Cell>& cells) {
    const auto image = image_of(k, f.power(n), options);
    est.unresolved_segments += image.unresolved;
    raster.mark_polyline(image.points, image.closed, cells);
    if (image.closed) raster.fill_polygon(image.points, cells);
  };

  std::set<Cell> early;
  for (int n = 0; n <= est.n_stable / 2; ++n) rasterize(n, early);
  std::set<Cell> late;
  for (int n = est.n_stable; n <= n_max; ++n) rasterize(n, late);

  est.early_cells = early.size();
  for (const auto& c : late) {
    if (early.count(c)) ++est.overlap_cells;
    est.cloud.push_back({(static_cast<double>(c.first) + 0.5) * grid, (static_cast<double>(c.second) + 0.5) * grid});
  }
  return est;
}

}  // namespace klein
