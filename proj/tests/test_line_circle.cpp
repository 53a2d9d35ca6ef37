#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "klein/line_circle.hpp"

using namespace klein;

namespace {

constexpr double kPi = std::numbers::pi;

double sup_line(const LineMap& f, const LineMap& g, double lo, double hi, int n) {
  double sup = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double x = lo + (hi - lo) * i / n;
    sup = std::max(sup, std::abs(f(x) - g(x)));
  }
  return sup;
}

double periodicity_error(const CircleMap& f) {
  double sup = 0.0;
  for (int i = 0; i < 1024; ++i) {
    const double x = i / 1024.0;
    sup = std::max(sup, std::abs(f(x + 1.0) - f(x) - 1.0));
  }
  return sup;
}

// x + eps sin(2 pi x) / (2 pi): a smooth degree-one circle diffeomorphism for eps < 1.
CircleMap wobble(double eps) {
  auto fwd = [eps](double x) { return x + eps * std::sin(2 * kPi * x) / (2 * kPi); };
  auto inv = [fwd](double y) {
    double lo = y - 1.0, hi = y + 1.0;
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
      const double mid = 0.5 * (lo + hi);
      (fwd(mid) < y ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  return CircleMap(LineMap(LineMap::Kind::custom, fwd, inv, "wobble"));
}

}  // namespace

TEST_CASE("figure3 generators") {
  const auto [a, b] = figure3_generators();
  CHECK(b(0.0) == 0.0);
  CHECK(b(0.5) == doctest::Approx(2 / kPi * std::atan(std::exp(kPi))).epsilon(1e-14));
  CHECK(b(0.5) == doctest::Approx(0.9725).epsilon(1e-4));
  for (int k = -4; k <= 4; ++k) CHECK(b(static_cast<double>(k)) == doctest::Approx(k).epsilon(1e-15));
  CHECK(a(2.5) == 3.5);

  const LineMap conj = compose(compose(a, b), a.inverse());
  CHECK(sup_line(conj, b.inverse(), -3, 3, 6000) < 1e-9);
  double sym = 0.0;
  for (int i = 0; i <= 6000; ++i) {
    const double x = -3.0 + i * 1e-3;
    sym = std::max(sym, std::abs(b(-x) + b(x)));
    CHECK(b.inverse()(b(x)) == doctest::Approx(x).epsilon(1e-12));
    CHECK(b(x + 2.0) == doctest::Approx(b(x) + 2.0).epsilon(1e-12));
  }
  CHECK(sym < 1e-9);
  // b pushes (0, 1) to the right and (-1, 0) to the left.
  CHECK(b(0.3) > 0.3);
  CHECK(b(-0.3) < -0.3);
  CHECK(b(1.3) < 1.3);
}

TEST_CASE("sine flow is a one-parameter group") {
  const LineMap half = LineMap::sine_flow(0.5);
  const LineMap one = LineMap::sine_flow(1.0);
  CHECK(sup_line(compose(half, half), one, -3, 3, 3000) < 1e-12);
  CHECK(sup_line(LineMap::sine_flow(0.0), LineMap::identity(), -3, 3, 300) < 1e-15);
}

TEST_CASE("circle lifts commute with integer translation") {
  const auto act = g1_circle_generators();
  const auto [a, b] = figure3_generators();
  for (const CircleMap& f : {act.a, act.b, act.r, act.a.inverse(), act.b.inverse(), one_point_compactification(a),
                             one_point_compactification(b), one_point_compactification(b).inverse()}) {
    CHECK(periodicity_error(f) < 1e-9);
  }
}

TEST_CASE("G1 circle action") {
  const auto act = g1_circle_generators();
  CHECK(rotation_number(act.b, 10000) == doctest::Approx(0.5).epsilon(2e-4));
  CHECK(std::abs(rotation_number(act.a, 10000)) < 2e-4);

  const CircleMap a2 = compose(act.a, act.a);
  const CircleMap b2 = compose(act.b, act.b);
  const CircleMap ab = compose(act.a, act.b);
  const CircleMap ab2 = compose(ab, ab);
  CHECK(sup_circle_distance(compose(compose(act.a, b2), act.a.inverse()), b2.inverse(), 1024) < 1e-7);
  CHECK(sup_circle_distance(compose(compose(act.b, a2), act.b.inverse()), a2.inverse(), 1024) < 1e-7);
  CHECK(sup_circle_distance(compose(a2, b2), compose(b2, a2), 1024) < 1e-7);
  CHECK(sup_circle_distance(compose(a2, ab2), compose(ab2, a2), 1024) < 1e-7);
  CHECK(sup_circle_distance(compose(b2, ab2), compose(ab2, b2), 1024) < 1e-7);
  // a and b do not commute, and b is not an involution.
  CHECK(sup_circle_distance(compose(act.a, act.b), compose(act.b, act.a), 1024) > 1e-3);
  CHECK(sup_circle_distance(b2, CircleMap::rotation(0.0), 1024) > 1e-3);

  // b^2 acts as b' in the chart of the first copy.
  for (double x : {-3.0, -0.4, 0.0, 0.7, 2.2}) {
    const double u = std::atan(x) / (2 * kPi) + 0.25;
    const double expected = std::atan(act.b_prime(x)) / (2 * kPi) + 0.25;
    CHECK(circle_distance(b2(u), expected) < 1e-12);
  }
  // R is the half turn.
  CHECK(sup_circle_distance(act.r, CircleMap::rotation(0.5), 64) == 0.0);
  // a fixes the chart points of -inf and +inf.
  const auto fix_a = locate_fixed_points(act.a, 1024);
  REQUIRE(fix_a.points.size() == 2);
  CHECK(fix_a.points[0] == 0.0);
  CHECK(fix_a.points[1] == 0.5);
}

TEST_CASE("rotation_number") {
  CHECK(rotation_number(CircleMap::rotation(0.5), 1000) == 0.5);
  CHECK(rotation_number(CircleMap::rotation(0.5), 1) == 0.5);
  const auto [a, b] = figure3_generators();
  const int n = 500;
  CHECK(std::abs(rotation_number(one_point_compactification(a), n)) <= 2.0 / n);
  CHECK(std::abs(rotation_number(one_point_compactification(b), n)) <= 2.0 / n);
  CHECK_THROWS_AS(rotation_number(CircleMap::rotation(0.1), 0), std::invalid_argument);
}

TEST_CASE("rotation_number is conjugacy invariant") {
  const CircleMap h = wobble(0.4);
  const int n = 5000;
  for (const CircleMap& f : {g1_circle_generators().b, CircleMap::rotation(0.3), g1_circle_generators().a}) {
    const CircleMap conj = compose(compose(h, f), h.inverse());
    CHECK(std::abs(rotation_number(conj, n) - rotation_number(f, n)) <= 4.0 / n);
  }
}

TEST_CASE("one point compactification") {
  const auto [a, b] = figure3_generators();
  const CircleMap ca = one_point_compactification(a);
  CHECK(ca(0.0) == 0.0);
  // The point x of the line sits at atan(x) / pi + 1/2.
  const double u = std::atan(2.0) / kPi + 0.5;
  CHECK(ca(u) == doctest::Approx(std::atan(3.0) / kPi + 0.5).epsilon(1e-14));
}

TEST_CASE("locate_fixed_points") {
  CHECK(locate_fixed_points(CircleMap::rotation(0.0), 64).whole_circle);
  CHECK(locate_fixed_points(CircleMap::rotation(0.25), 64).points.empty());
  const auto [a, b] = figure3_generators();
  const auto fb = locate_fixed_points(one_point_compactification(b), 1024);
  CHECK_FALSE(fb.whole_circle);
  // Integers n sit at atan(n) / pi + 1/2.
  for (int k = -3; k <= 3; ++k) {
    const double target = std::atan(static_cast<double>(k)) / kPi + 0.5;
    bool found = false;
    for (double p : fb.points) found = found || circle_distance(p, target) < 1e-8;
    CHECK(found);
  }
  for (double p : fb.points) CHECK(circle_distance(one_point_compactification(b)(p), p) < 1e-7);
  CHECK_THROWS_AS(locate_fixed_points(CircleMap::rotation(0.0), 1), std::invalid_argument);
}

TEST_CASE("lemma32_check") {
  const auto [a, b] = figure3_generators();
  const auto ok = lemma32_check(one_point_compactification(a), one_point_compactification(b), 1024);
  CHECK(ok.precondition_ok);
  CHECK(ok.passed);
  REQUIRE(ok.fix_a.points.size() == 1);
  CHECK(ok.fix_a.points[0] == 0.0);
  CHECK(ok.fix_b.points.size() > ok.fix_a.points.size());
  CHECK(ok.components == 1);

  const auto vac = lemma32_check(CircleMap::rotation(0.0), CircleMap::rotation(0.0), 256);
  CHECK(vac.precondition_ok);
  CHECK(vac.vacuous);
  CHECK(vac.passed);

  const auto rot = lemma32_check(CircleMap::rotation(0.5), CircleMap::rotation(0.5), 256);
  CHECK(rot.relation_ok);
  CHECK_FALSE(rot.precondition_ok);
  CHECK_FALSE(rot.passed);

  // The relation fails for a and b of the G1 action.
  const auto act = g1_circle_generators();
  const auto g1 = lemma32_check(act.a, act.b, 256);
  CHECK_FALSE(g1.relation_ok);
  CHECK_FALSE(g1.precondition_ok);
}

TEST_CASE("displacement_profile") {
  const auto prof = displacement_profile(CircleMap::rotation(0.25), 8);
  REQUIRE(prof.size() == 8);
  CHECK(prof[3].first == 3.0 / 8);
  for (const auto& [x, d] : prof) CHECK(d == 0.25);
}
