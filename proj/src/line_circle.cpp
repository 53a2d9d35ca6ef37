#include "klein/line_circle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace klein {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFixedThreshold = 1e-7;
constexpr double kBracketWidth = 1e-10;

// Signed displacement reduced to [-1/2, 1/2).
double circle_displacement(const CircleMap& f, double x) {
  const double d = f(x) - x;
  return d - std::round(d);
}

}  // namespace

LineMap::LineMap(Kind kind, Fn forward, Fn inverse, std::string description)
    : kind_(kind), forward_(std::move(forward)), inverse_(std::move(inverse)), description_(std::move(description)) {}

LineMap LineMap::identity() { return translation(0.0); }

LineMap LineMap::translation(double c) {
  return LineMap(Kind::translation, [c](double x) { return x + c; }, [c](double x) { return x - c; },
                 "translation(" + std::to_string(c) + ")");
}

LineMap LineMap::sine_flow(double t) {
  auto flow = [](double time) {
    const double gain = std::exp(kPi * time);
    return [gain](double x) {
      const double k = 2.0 * std::floor((x + 1.0) / 2.0);
      const double y = x - k;  // in [-1, 1)
      if (y == -1.0) return x;
      return k + (2.0 / kPi) * std::atan(gain * std::tan(kPi * y / 2.0));
    };
  };
  return LineMap(Kind::sine_flow, flow(t), flow(-t), "sine_flow(" + std::to_string(t) + ")");
}

LineMap LineMap::inverse() const {
  std::string desc = description_ + "^-1";
  if (kind_ == Kind::translation || kind_ == Kind::sine_flow) desc = description_ + "^-1";
  return LineMap(kind_, inverse_, forward_, std::move(desc));
}

LineMap compose(const LineMap& f, const LineMap& g) {
  const LineMap fi = f.inverse();
  const LineMap gi = g.inverse();
  return LineMap(LineMap::Kind::composite, [f, g](double x) { return f(g(x)); },
                 [fi, gi](double x) { return gi(fi(x)); }, f.description() + " o " + g.description());
}

std::pair<LineMap, LineMap> figure3_generators() { return {LineMap::translation(1.0), LineMap::sine_flow(1.0)}; }

// ---------------------------------------------------------------------------

CircleMap::CircleMap(LineMap lift) : lift_(std::move(lift)) {}

CircleMap CircleMap::rotation(double angle) { return CircleMap(LineMap::translation(angle)); }

CircleMap compose(const CircleMap& f, const CircleMap& g) { return CircleMap(compose(f.lift_map(), g.lift_map())); }

double circle_distance(double x, double y) {
  const double d = x - y;
  return std::abs(d - std::round(d));
}

namespace {

// Charts of the two copies of [-inf, +inf].
double chart1(double x) { return std::atan(x) / (2.0 * kPi) + 0.25; }
double chart1_inv(double u) { return std::tan(2.0 * kPi * (u - 0.25)); }
double chart2(double x) { return 0.75 - std::atan(x) / (2.0 * kPi); }
double chart2_inv(double u) { return std::tan(2.0 * kPi * (0.75 - u)); }

// Lift of "apply `line` in the chart of each copy".
LineMap copywise(const LineMap& line, const std::string& name) {
  auto make = [](LineMap m) {
    return [m](double u) {
      const double n = std::floor(u);
      const double v = u - n;
      if (v < 0.5) return n + chart1(m(chart1_inv(v)));
      return n + chart2(m(chart2_inv(v)));
    };
  };
  return LineMap(LineMap::Kind::custom, make(line), make(line.inverse()), name);
}

}  // namespace

G1CircleAction g1_circle_generators() {
  const LineMap b_prime = figure3_generators().second;
  const LineMap b_prime_inv = b_prime.inverse();

  const LineMap a_lift = copywise(LineMap::translation(1.0), "g1 a");

  // First copy: R, which is u -> u + 1/2 in these charts. Second copy: b' o R,
  // where R lands in the first copy at u - 1/2.
  auto b_forward = [b_prime](double u) {
    const double n = std::floor(u);
    const double v = u - n;
    if (v < 0.5) return n + v + 0.5;
    return n + 1.0 + chart1(b_prime(chart1_inv(v - 0.5)));
  };
  auto b_inverse = [b_prime_inv](double w) {
    const double m = std::floor(w);
    const double v = w - m;
    if (v >= 0.5) return m + v - 0.5;
    return m - 0.5 + chart1(b_prime_inv(chart1_inv(v)));
  };
  const LineMap b_lift(LineMap::Kind::custom, b_forward, b_inverse, "g1 b");

  return {CircleMap(a_lift), CircleMap(b_lift), CircleMap::rotation(0.5), b_prime};
}

double rotation_number(const CircleMap& f, std::int64_t iterations) {
  if (iterations < 1) throw std::invalid_argument("rotation_number: iterations must be positive");
  double x = 0.0;
  for (std::int64_t i = 0; i < iterations; ++i) x = f(x);
  return x / static_cast<double>(iterations);
}

CircleMap one_point_compactification(const LineMap& f) {
  auto make = [](LineMap m) {
    return [m](double u) {
      const double n = std::floor(u);
      const double v = u - n;
      if (v == 0.0) return u;
      return n + std::atan(m(std::tan(kPi * (v - 0.5)))) / kPi + 0.5;
    };
  };
  return CircleMap(LineMap(LineMap::Kind::custom, make(f), make(f.inverse()), f.description() + " on S^1"));
}

std::vector<std::pair<double, double>> displacement_profile(const CircleMap& f, std::size_t samples) {
  std::vector<std::pair<double, double>> out;
  out.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(samples);
    out.emplace_back(x, f(x) - x);
  }
  return out;
}

FixedPointSet locate_fixed_points(const CircleMap& f, std::size_t grid) {
  if (grid < 2) throw std::invalid_argument("locate_fixed_points: grid must have at least two points");
  FixedPointSet out;
  std::vector<double> xs(grid), ds(grid);
  std::size_t fixed_count = 0;
  for (std::size_t i = 0; i < grid; ++i) {
    xs[i] = static_cast<double>(i) / static_cast<double>(grid);
    ds[i] = circle_displacement(f, xs[i]);
    if (std::abs(ds[i]) < kFixedThreshold) {
      out.points.push_back(xs[i]);
      ++fixed_count;
    }
  }
  if (fixed_count == grid) {
    out.whole_circle = true;
    return out;
  }
  for (std::size_t i = 0; i < grid; ++i) {
    const std::size_t j = (i + 1) % grid;
    const double d0 = ds[i];
    const double d1 = ds[j];
    if (std::abs(d0) < kFixedThreshold || std::abs(d1) < kFixedThreshold) continue;
    // Opposite signs, away from the +-1/2 wrap.
    if ((d0 > 0) == (d1 > 0) || std::abs(d0) > 0.25 || std::abs(d1) > 0.25) continue;
    double lo = xs[i];
    double hi = j == 0 ? 1.0 : xs[j];
    double dlo = d0;
    while (hi - lo > kBracketWidth) {
      const double mid = 0.5 * (lo + hi);
      const double dm = circle_displacement(f, mid);
      if ((dm > 0) == (dlo > 0)) {
        lo = mid;
        dlo = dm;
      } else {
        hi = mid;
      }
    }
    double root = 0.5 * (lo + hi);
    if (root >= 1.0) root -= 1.0;
    out.points.push_back(root);
  }
  std::sort(out.points.begin(), out.points.end());
  return out;
}

double sup_circle_distance(const CircleMap& f, const CircleMap& g, std::size_t grid) {
  double sup = 0.0;
  for (std::size_t i = 0; i < grid; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(grid);
    sup = std::max(sup, circle_distance(f(x), g(x)));
  }
  return sup;
}

Lemma32Report lemma32_check(const CircleMap& a, const CircleMap& b, std::size_t grid) {
  constexpr double kRelationTol = 1e-7;
  constexpr double kMatchTol = 1e-6;
  Lemma32Report report;

  const CircleMap conj = compose(compose(a, b), a.inverse());
  report.relation_sup_error = sup_circle_distance(conj, b.inverse(), grid);
  report.relation_ok = report.relation_sup_error < kRelationTol;

  report.fix_a = locate_fixed_points(a, grid);
  report.fix_b = locate_fixed_points(b, grid);
  report.a_has_fixed_points = report.fix_a.whole_circle || !report.fix_a.points.empty();
  report.b_has_fixed_points = report.fix_b.whole_circle || !report.fix_b.points.empty();
  report.precondition_ok = report.relation_ok && report.a_has_fixed_points && report.b_has_fixed_points;
  if (!report.precondition_ok) return report;

  if (report.fix_a.whole_circle) {
    report.vacuous = true;
    report.fix_a_in_fix_b = report.fix_b.whole_circle;
    report.passed = report.fix_a_in_fix_b;
    return report;
  }

  auto is_b_fixed = [&](double x) {
    if (report.fix_b.whole_circle) return true;
    return std::any_of(report.fix_b.points.begin(), report.fix_b.points.end(),
                       [&](double y) { return circle_distance(x, y) < kMatchTol; });
  };
  report.fix_a_in_fix_b = std::all_of(report.fix_a.points.begin(), report.fix_a.points.end(), is_b_fixed);

  // Arcs (x_i, x_{i+1}) between consecutive a-fixed points, cyclically.
  const auto& fa = report.fix_a.points;
  report.components = fa.size();
  for (std::size_t i = 0; i < fa.size(); ++i) {
    const double lo = fa[i];
    double hi = fa[(i + 1) % fa.size()];
    if (hi <= lo) hi += 1.0;
    auto in_arc = [&](double y) {
      double z = y;
      while (z <= lo) z += 1.0;
      return z - lo > kMatchTol && hi - z > kMatchTol;
    };
    bool found = report.fix_b.whole_circle;
    for (double y : report.fix_b.points) found = found || in_arc(y);
    if (found) ++report.components_with_b_fixed;
  }
  report.passed = report.fix_a_in_fix_b && report.components_with_b_fixed == report.components;
  return report;
}

}  // namespace klein
