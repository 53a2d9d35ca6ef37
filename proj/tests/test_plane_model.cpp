#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "klein/plane_model.hpp"

using namespace klein;

namespace {

constexpr double kPi = std::numbers::pi;

const PlaneHomeo b_map = PlaneHomeo::model(BsElement::b());

bool near(const PlanePoint& x, const PlanePoint& y, double tol) { return distance(x, y) < tol; }

}  // namespace

TEST_CASE("model_apply examples") {
  CHECK(near(model_apply(BsElement::a(), {0, 5}), {kPi / 2, 5}, 1e-15));
  for (double r : {-3.0, 0.0, 2.5}) CHECK(near(model_apply(BsElement::b(), {0, r}), {0, r - std::log(2.0)}, 1e-12));
  CHECK(near(model_apply(BsElement::a(4), {0.3, -1.1}), {0.3 + 2 * kPi, -1.1}, 1e-12));
  // b fixes every line theta = k pi / 2 as a set.
  for (int k = -5; k <= 5; ++k) CHECK(model_apply(BsElement::b(3), {k * kPi / 2, 0.4}).theta == doctest::Approx(k * kPi / 2));
}

TEST_CASE("model_apply rejects non-finite input") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(model_apply(BsElement::b(), {inf, 0}), std::domain_error);
  CHECK_THROWS_AS(model_apply(BsElement::a(), {0, std::nan("")}), std::domain_error);
}

TEST_CASE("projection of the lift is the linear action") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> th(-7, 7), rr(-2, 2);
  std::uniform_int_distribution<int> ex(-3, 3);
  for (int i = 0; i < 500; ++i) {
    const PlanePoint x{th(rng), rr(rng)};
    const BsElement g{ex(rng), ex(rng)};
    const auto lhs = project(model_apply(g, x));
    const auto rhs = matrix_apply(g, project(x));
    const double scale = std::hypot(rhs[0], rhs[1]);
    CHECK(std::hypot(lhs[0] - rhs[0], lhs[1] - rhs[1]) <= 1e-9 * std::max(1.0, scale));
  }
}

TEST_CASE("deck equivariance and homomorphism") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> th(-7, 7), rr(-3, 3);
  std::uniform_int_distribution<int> ex(-4, 4);
  for (int i = 0; i < 2000; ++i) {
    const PlanePoint x{th(rng), rr(rng)};
    const BsElement g{ex(rng), ex(rng)}, h{ex(rng), ex(rng)};
    const PlanePoint gx = model_apply(g, x);
    CHECK(near(model_apply(g, {x.theta + 2 * kPi, x.r}), {gx.theta + 2 * kPi, gx.r}, 1e-9));
    CHECK(near(model_apply(bs_multiply(g, h), x), model_apply(g, model_apply(h, x)), 1e-8));
  }
}

TEST_CASE("PlaneHomeo inverse, power, compose") {
  const PlaneHomeo u = undulation(0.25, 4, 0.7);
  const PlaneHomeo s = shear(0.3, 1.3, 0.2);
  const PlaneHomeo f = compose(u, compose(s, b_map));
  const PlanePoint x{0.9, -0.4};
  CHECK(near(f.inverse()(f(x)), x, 1e-12));
  CHECK(near(f.power(3)(x), f(f(f(x))), 1e-12));
  CHECK(near(f.power(-2)(f.power(2)(x)), x, 1e-12));
  CHECK(near(b_map.power(5)(x), model_apply(BsElement::b(5), x), 1e-12));
  CHECK(compose(PlaneHomeo::model({1, 2}), PlaneHomeo::model({1, 2})).model_element() == BsElement{2, 0});
  // Undulations with frequency a multiple of 4 and shears commute with a.
  const PlaneHomeo a_map = PlaneHomeo::model(BsElement::a());
  for (const auto& h : {u, s}) CHECK(near(h(a_map(x)), a_map(h(x)), 1e-12));
}

TEST_CASE("verify_relation") {
  const RelationReport r = verify_relation(1000, 1e-9, 11);
  CHECK(r.relation_passed);
  CHECK(r.relation_sup_error < 1e-9);
  CHECK(r.freeness_passed);
  CHECK(r.freeness.size() == 84);
  for (const auto& e : r.freeness) {
    if (e.element == BsElement{2, 0} || e.element == BsElement{-2, 0}) CHECK(e.min_displacement == doctest::Approx(kPi));
  }
  CHECK(distance(model_apply(BsElement{}, {0.4, 0.1}), {0.4, 0.1}) == 0.0);
  CHECK(distance(model_apply(BsElement::a(2), {0, 0}), {0, 0}) == doctest::Approx(kPi));
}

TEST_CASE("index of the model b") {
  const PlanePoint seed{kPi / 8, 0.25};
  for (int k : {-3, -2, -1, 1, 2, 3}) {
    const IndexResult r = index(b_map, BsElement::a(k), seed);
    CHECK(r.value.twice == -k);
    CHECK(r.residual < 1e-6);
  }
  // I(b, a) is a strict half-integer; I(b, a^{2p}) = 2p I(b, a).
  const IndexResult one = index(b_map, BsElement::a(1), seed);
  CHECK_FALSE(one.value.is_integer());
  for (int p = -2; p <= 2; ++p) {
    if (p == 0) continue;
    CHECK(index(b_map, BsElement::a(2 * p), seed).value.twice == 2 * p * one.value.twice);
  }
}

TEST_CASE("index does not depend on the curve") {
  for (const PlanePoint seed : {PlanePoint{0.1, 0.0}, PlanePoint{1.0, -2.0}, PlanePoint{-2.5, 3.0}, PlanePoint{4.0, 0.7}}) {
    CHECK(index(b_map, BsElement::a(1), seed).value.twice == -1);
    CHECK(index(b_map, BsElement::a(2), seed).value.twice == -2);
  }
}

TEST_CASE("index is invariant under conjugators commuting with a") {
  // The frequency is a multiple of 4 so that H commutes with a.
  const PlaneHomeo h = undulation(0.3, 4, 0.0);
  CHECK(index(conjugate(h, b_map), BsElement::a(1), {kPi / 8, 0.25}).value.twice == -1);
  const PlaneHomeo s = shear(0.35, 1.7, 0.4);
  CHECK(index(conjugate(s, b_map), BsElement::a(3), {kPi / 8, 0.25}).value.twice == -3);
}

TEST_CASE("index errors") {
  CHECK_THROWS_AS(index(b_map, BsElement{0, 0}, {0.3, 0}), std::invalid_argument);
  CHECK_THROWS_AS(index(b_map, BsElement{1, 1}, {0.3, 0}), std::invalid_argument);
  // The identity fixes every point of the curve.
  CHECK_THROWS_AS(index(PlaneHomeo::model({}), BsElement::a(2), {0.3, 0}), std::domain_error);
  // a conjugate by a map not commuting with a: the turn is not a half-integer.
  CHECK_THROWS_AS(index(conjugate(undulation(0.3, 1, 0.0), b_map), BsElement::a(1), {0.39, 0.25}), std::domain_error);
}

TEST_CASE("disk and curve validation") {
  CHECK_THROWS_AS(Disk({0, 0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Disk({0, 0}, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(CurveSample({{0, 0}, {0, 0}}, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(CurveSample({{0, 0}, {1, 0}}, 0.0), std::invalid_argument);
}

TEST_CASE("disk_image_overlap") {
  const Disk d({kPi / 4, 0}, 0.1);
  CHECK(disk_image_overlap(d, PlaneHomeo::model({})).status == Overlap::intersecting);
  CHECK(disk_image_overlap(d, PlaneHomeo::model(BsElement::a(2))).status == Overlap::disjoint);
  CHECK(disk_image_overlap(d, b_map).status == Overlap::disjoint);
  // A tiny shift is well inside the disk.
  const PlaneHomeo nudge = shear(1e-3, 0.0, kPi / 2);
  const auto r = disk_image_overlap(d, nudge);
  CHECK(r.status == Overlap::intersecting);
  REQUIRE(r.witness.has_value());
  CHECK(distance(*r.witness, d.center) <= d.radius + 1e-9);
  CHECK(distance(nudge.inverse()(*r.witness), d.center) <= d.radius + 1e-9);
  CHECK(to_string(Overlap::inconclusive) == "inconclusive");
}

TEST_CASE("wandering_check") {
  const auto ok = wandering_check(Disk({kPi / 4, 0}, 0.1), 5, 5);
  CHECK(ok.precondition_ok);
  CHECK(ok.checked == 120);
  CHECK(ok.violations.empty());
  CHECK(ok.passed());
  // b moves (0, r) by log 2 along the invariant line, so radius 0.2 is still free;
  // radius 0.4 exceeds half of log 2 and the disk meets its b-image.
  CHECK(wandering_check(Disk({0, 0}, 0.2), 2, 2).precondition_ok);
  const auto bad = wandering_check(Disk({0, 0}, 0.4), 5, 5);
  CHECK_FALSE(bad.precondition_ok);
  CHECK(bad.b_overlap.status == Overlap::intersecting);
  CHECK_FALSE(bad.passed());
}

TEST_CASE("nonwandering_witness") {
  const auto w = nonwandering_witness(Disk({kPi / 2, 0}, 0.3), 50);
  REQUIRE(w.has_value());
  CHECK(w->n >= 1);
  CHECK(w->n <= 50);
  CHECK(std::abs(w->sign) == 1);
  const PlaneHomeo g = compose(PlaneHomeo::model(BsElement::b(w->sign * w->n)), PlaneHomeo::model(BsElement::a()));
  CHECK(distance(w->witness, {kPi / 2, 0}) <= 0.3 + 1e-9);
  CHECK(distance(g.inverse()(w->witness), {kPi / 2, 0}) <= 0.3 + 1e-6);

  CHECK_FALSE(nonwandering_witness(Disk({kPi / 4, 0}, 0.05), 20).has_value());
  CHECK_FALSE(nonwandering_witness(Disk({kPi / 2, 0}, 0.3), 0).has_value());
}

TEST_CASE("limit_set_estimate") {
  const Disk d({kPi / 4, 0}, 0.1);
  const auto ea = limit_set_estimate(d, PlaneHomeo::model(BsElement::a()), 40, 0.01);
  CHECK(ea.cloud.empty());

  const auto eb = limit_set_estimate(d, b_map, 8, 0.01);
  CHECK(eb.n_stable == 4);
  CHECK_FALSE(eb.cloud.empty());
  CHECK(eb.disjoint_from_early_iterates());
  for (const auto& p : eb.cloud) {
    CHECK(distance(p, d.center) > d.radius);
    // Late iterates of the quadrant disk crowd the line theta = 0.
    CHECK(std::abs(p.theta) < 0.3);
  }

  const auto e2 = limit_set_estimate(d, b_map, 2, 0.01);
  CHECK(e2.n_stable == 1);
  CHECK_FALSE(e2.cloud.empty());

  const CurveSample arc({{0.6, 0.0}, {0.7, 0.05}, {0.8, 0.0}}, 1e-3);
  const auto ec = limit_set_estimate(arc, b_map, 8, 0.01);
  CHECK(ec.disjoint_from_early_iterates());

  CHECK_THROWS_AS(limit_set_estimate(Disk({0, 0}, 0.4), b_map, 8, 0.01), std::domain_error);
  CHECK_THROWS_AS(limit_set_estimate(d, b_map, 0, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(limit_set_estimate(d, b_map, 8, 0.0), std::invalid_argument);
}
