#include "klein/verify.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

namespace klein {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Letter> cat(std::span<const Letter> u, std::span<const Letter> v) {
  std::vector<Letter> out(u.begin(), u.end());
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

std::vector<Letter> invert(std::span<const Letter> w) {
  std::vector<Letter> out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->gen, -it->exp});
  return out;
}

// The relator a b a^-1 b, its inverse, and all their cyclic rotations.
std::vector<std::vector<Letter>> bs_relator_variants() {
  const std::vector<Letter> r{{0, 1}, {1, 1}, {0, -1}, {1, 1}};
  std::vector<std::vector<Letter>> out;
  for (const auto& base : {r, invert(r)}) {
    for (std::size_t s = 0; s < base.size(); ++s) {
      std::vector<Letter> rot(base.begin() + static_cast<std::ptrdiff_t>(s), base.end());
      rot.insert(rot.end(), base.begin(), base.begin() + static_cast<std::ptrdiff_t>(s));
      out.push_back(std::move(rot));
    }
  }
  return out;
}

Json suite_bs_normal_form() {
  const auto relators = bs_relator_variants();
  std::size_t words = 0, insertions = 0, splits = 0, failures = 0;
  Json first_failure = nullptr;
  for (int len = 0; len <= 8; ++len) {
    for (const auto& w : enumerate_raw_words(Alphabet::ab(), len)) {
      ++words;
      const BsElement value = bs_reduce(w);
      for (std::size_t pos = 0; pos <= w.size(); ++pos) {
        const std::span<const Letter> head(w.data(), pos);
        const std::span<const Letter> tail(w.data() + pos, w.size() - pos);
        for (const auto& r : relators) {
          ++insertions;
          if (bs_reduce(cat(cat(head, r), tail)) != value) {
            if (failures++ == 0) first_failure = {{"kind", "relator insertion"}, {"length", len}, {"position", pos}};
          }
        }
        ++splits;
        if (bs_multiply(bs_reduce(head), bs_reduce(tail)) != value) {
          if (failures++ == 0) first_failure = {{"kind", "homomorphism"}, {"length", len}, {"position", pos}};
        }
      }
    }
  }
  return {{"words", words},       {"insertions", insertions},     {"splits", splits},
          {"failures", failures}, {"first_failure", first_failure}, {"passed", failures == 0}};
}

Json suite_odd_square() {
  std::size_t checked = 0, failures = 0;
  for (std::int64_t p = -7; p <= 7; p += 2) {
    for (std::int64_t q = -7; q <= 7; ++q) {
      const BsElement x{p, q};
      ++checked;
      if (bs_multiply(x, x) != BsElement::a(2 * p)) ++failures;
    }
  }
  return {{"checked", checked}, {"failures", failures}, {"passed", failures == 0}};
}

std::vector<G2Element> g2_ball(int max_word, int max_n) {
  std::vector<G2Element> out;
  for (int len = 0; len <= max_word; ++len) {
    for (const auto& w : enumerate_reduced_words(Alphabet::f2(), len)) {
      for (int n = -max_n; n <= max_n; ++n) out.emplace_back(w, n);
    }
  }
  return out;
}

// Product with the sign taken from the first factor's word instead.
G2Element g2_multiply_first_sigma(const G2Element& x, const G2Element& y) {
  return {concat_reduce(x.w, phi_power(y.w, x.n)), (sigma(x.w) % 2 == 0 ? x.n : -x.n) + y.n};
}

Json suite_g2_product() {
  const auto ball = g2_ball(4, 3);
  std::vector<std::vector<Letter>> letters;
  letters.reserve(ball.size());
  for (const auto& x : ball) letters.push_back(g2_word(x).letters());

  std::size_t pairs = 0, failures = 0, first_sigma_mismatches = 0;
  Json first_failure = nullptr;
  Json first_sigma_example = nullptr;
  for (std::size_t i = 0; i < ball.size(); ++i) {
    for (std::size_t j = 0; j < ball.size(); ++j) {
      ++pairs;
      const G2Element oracle = g2_rewrite(cat(letters[i], letters[j]));
      if (g2_multiply(ball[i], ball[j]) != oracle) {
        if (failures++ == 0) first_failure = {{"x", to_json(ball[i])}, {"y", to_json(ball[j])}};
      }
      if (g2_multiply_first_sigma(ball[i], ball[j]) != oracle) {
        if (first_sigma_mismatches++ == 0) {
          first_sigma_example = {{"x", to_json(ball[i])}, {"y", to_json(ball[j])}, {"oracle", to_json(oracle)}};
        }
      }
    }
  }
  return {{"elements", ball.size()},
          {"pairs", pairs},
          {"failures", failures},
          {"first_failure", first_failure},
          {"sign_convention", "(-1)^sigma(w') n + n'"},
          {"sigma_of_first_factor_mismatches", first_sigma_mismatches},
          {"sigma_of_first_factor_example", first_sigma_example},
          {"passed", failures == 0}};
}

Json suite_g1() {
  const AffineIso3 alpha = g1_generator(G1Generator::alpha);
  const AffineIso3 beta = g1_generator(G1Generator::beta);
  const bool rel1 = affine_conjugate(beta, affine_power(alpha, 2)) == affine_power(alpha, -2);
  const bool rel2 = affine_conjugate(alpha, affine_power(beta, 2)) == affine_power(beta, -2);

  std::set<AffineIso3> ball;
  for (int len = 0; len <= 8; ++len) {
    for (const auto& w : enumerate_reduced_words(Alphabet::ab(), len)) ball.insert(g1_evaluate(w));
  }
  std::size_t torsion = 0, off_lattice = 0;
  for (const auto& f : ball) {
    if (!f.is_identity() && g1_element_order(f).has_value()) ++torsion;
    if (!in_half_integer_lattice(f)) ++off_lattice;
  }
  return {{"relation_b_a2_binv", rel1},  {"relation_a_b2_ainv", rel2}, {"ball_elements", ball.size()},
          {"torsion_elements", torsion}, {"off_lattice", off_lattice},
          {"passed", rel1 && rel2 && torsion == 0 && off_lattice == 0}};
}

Json suite_model_relation(std::uint64_t seed) {
  const RelationReport r = verify_relation(10000, 1e-9, seed, 1e-3);
  double min_disp = INFINITY;
  for (const auto& e : r.freeness) min_disp = std::min(min_disp, e.min_displacement);
  return {{"samples", r.samples},
          {"relation_sup_error", r.relation_sup_error},
          {"relation_passed", r.relation_passed},
          {"elements_checked", r.freeness.size()},
          {"min_displacement", min_disp},
          {"freeness_passed", r.freeness_passed},
          {"passed", r.passed()}};
}

Json suite_index_values() {
  const PlaneHomeo b = PlaneHomeo::model(BsElement::b());
  Json cases = Json::array();
  bool ok = true;
  for (int k : {-3, -2, -1, 1, 2, 3}) {
    Json c = {{"k", k}, {"expected", -k / 2.0}};
    try {
      const IndexResult r = index(b, BsElement::a(k), default_index_seed());
      const bool pass = r.value.twice == -k && r.residual < 1e-6;
      c["index"] = r.value.value();
      c["residual"] = r.residual;
      c["passed"] = pass;
      ok = ok && pass;
    } catch (const std::exception& e) {
      c["error"] = e.what();
      c["passed"] = false;
      ok = false;
    }
    cases.push_back(c);
  }
  return {{"cases", cases}, {"passed", ok}};
}

Json suite_index_conjugacy(std::uint64_t seed) {
  const PlaneHomeo b = PlaneHomeo::model(BsElement::b());
  const auto conjugators = seeded_conjugators(5, seed);
  Json cases = Json::array();
  bool ok = true;
  for (const auto& h : conjugators) {
    const PlaneHomeo hbh = conjugate(h, b);
    for (int k : {1, 2}) {
      Json c = {{"conjugator", h.name()}, {"k", k}};
      try {
        const IndexResult base = index(b, BsElement::a(k), default_index_seed());
        const IndexResult conj = index(hbh, BsElement::a(k), default_index_seed());
        const bool pass = base.value == conj.value;
        c["index_b"] = base.value.value();
        c["index_hbh"] = conj.value.value();
        c["residual"] = conj.residual;
        c["passed"] = pass;
        ok = ok && pass;
      } catch (const std::exception& e) {
        c["error"] = e.what();
        c["passed"] = false;
        ok = false;
      }
      cases.push_back(c);
    }
  }
  return {{"cases", cases}, {"passed", ok}};
}

Json suite_wandering(std::uint64_t seed) {
  const auto disks = seeded_free_disks(20, seed);
  Json cases = Json::array();
  bool ok = disks.size() == 20;
  double min_gap = INFINITY;
  for (const auto& d : disks) {
    const WanderingReport r = wandering_check(d, 5, 5);
    ok = ok && r.passed();
    min_gap = std::min(min_gap, r.min_gap);
    Json c = {{"disk", to_json(d)}, {"checked", r.checked}, {"min_gap", r.min_gap}, {"passed", r.passed()}};
    if (!r.violations.empty()) c["first_violation"] = to_json(r.violations.front().element);
    cases.push_back(c);
  }
  return {{"disks", disks.size()}, {"min_gap", min_gap}, {"cases", cases}, {"passed", ok}};
}

Json suite_nonwandering() {
  const Disk d({kPi / 2, 0.0}, 0.3);
  const auto w = nonwandering_witness(d, 50);
  Json j = {{"disk", to_json(d)}, {"n_max", 50}, {"passed", w.has_value()}};
  if (w) j["witness"] = {{"n", w->n}, {"sign", w->sign}, {"point", to_json(w->witness)}};
  return j;
}

Json suite_rotation() {
  const G1CircleAction g1 = g1_circle_generators();
  const double rho = rotation_number(g1.b, 10000);
  const CircleMap b2 = compose(g1.b, g1.b);
  const CircleMap a2 = compose(g1.a, g1.a);
  // a b^2 a^-1 = b^-2 and b a^2 b^-1 = a^-2
  const double rel1 = sup_circle_distance(compose(compose(g1.a, b2), g1.a.inverse()), b2.inverse(), 1024);
  const double rel2 = sup_circle_distance(compose(compose(g1.b, a2), g1.b.inverse()), a2.inverse(), 1024);

  const auto [la, lb] = figure3_generators();
  const Lemma32Report lemma = lemma32_check(one_point_compactification(la), one_point_compactification(lb), 1024);

  const bool rho_ok = std::abs(rho - 0.5) <= 2e-4;
  return {{"rotation_number_b", rho},
          {"rotation_ok", rho_ok},
          {"relation_a_b2_ainv_sup", rel1},
          {"relation_b_a2_binv_sup", rel2},
          {"lemma", to_json(lemma)},
          {"passed", rho_ok && rel1 < 1e-7 && rel2 < 1e-7 && lemma.passed}};
}

Json suite_g2_order() {
  const auto ball = g2_ball(2, 2);
  const G2Order order;
  std::size_t total_fail = 0, antisym_fail = 0, invariance_fail = 0, cone_fail = 0;
  std::vector<G2Element> positive;
  for (const auto& x : ball) {
    if (order.is_positive(x)) positive.push_back(x);
    for (const auto& y : ball) {
      const auto c = order.compare(x, y);
      if ((c == std::strong_ordering::equal) != (x == y)) ++total_fail;
      const auto d = order.compare(y, x);
      if ((c == std::strong_ordering::less) != (d == std::strong_ordering::greater)) ++antisym_fail;
    }
  }
  for (const auto& z : ball) {
    for (const auto& x : ball) {
      const G2Element zx = g2_multiply(z, x);
      for (const auto& y : ball) {
        if (order.compare(zx, g2_multiply(z, y)) != order.compare(x, y)) ++invariance_fail;
      }
    }
  }
  for (const auto& p : positive) {
    for (const auto& q : positive) {
      if (!order.is_positive(g2_multiply(p, q))) ++cone_fail;
    }
  }
  return {{"elements", ball.size()},
          {"positive", positive.size()},
          {"totality_failures", total_fail},
          {"antisymmetry_failures", antisym_fail},
          {"left_invariance_failures", invariance_fail},
          {"cone_closure_failures", cone_fail},
          {"passed", total_fail + antisym_fail + invariance_fail + cone_fail == 0}};
}

Json suite_limit_set(std::uint64_t seed) {
  const Disk d = seeded_free_disks(1, seed).front();
  const LimitSetEstimate eb = limit_set_estimate(d, PlaneHomeo::model(BsElement::b()), 8, 0.01);
  const LimitSetEstimate ea = limit_set_estimate(d, PlaneHomeo::model(BsElement::a()), 40, 0.01);
  const bool ok = eb.disjoint_from_early_iterates() && ea.cloud.empty();
  return {{"disk", to_json(d)}, {"model_b", to_json(eb)}, {"model_a", to_json(ea)}, {"passed", ok}};
}

struct SuiteSpec {
  const char* name;
  double budget;
};

constexpr SuiteSpec kSuites[kSuiteCount] = {
    {"bs_normal_form_relators_and_homomorphism", 60},
    {"bs_odd_p_square_is_a_2p", 1},
    {"g2_product_matches_rewriting", 120},
    {"g1_relations_and_torsion_free_ball", 60},
    {"model_relation_and_freeness", 30},
    {"index_of_b_relative_to_a_k", 10},
    {"index_conjugacy_invariance", 30},
    {"virtual_wandering_free_disks", 60},
    {"nonwandering_witness_on_invariant_line", 30},
    {"circle_rotation_numbers_and_fixed_points", 30},
    {"g2_order_axioms", 60},
    {"limit_set_sanity", 60},
};

}  // namespace

PlanePoint default_index_seed() { return {kPi / 8, 0.25}; }

std::vector<Disk> seeded_free_disks(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<int> quadrant(-4, 3);
  std::uniform_real_distribution<double> offset(0.2, kPi / 2 - 0.2);
  std::uniform_real_distribution<double> r_dist(-2.0, 2.0);
  std::uniform_real_distribution<double> radius(0.02, 0.15);
  const PlaneHomeo b = PlaneHomeo::model(BsElement::b());
  std::vector<Disk> out;
  for (std::size_t attempts = 0; out.size() < count; ++attempts) {
    if (attempts > 100 * count + 100) throw std::runtime_error("seeded_free_disks: too many rejected candidates");
    const double theta = quadrant(rng) * kPi / 2 + offset(rng);
    const Disk d({theta, r_dist(rng)}, radius(rng));
    if (std::abs(std::remainder(theta, kPi / 2)) <= d.radius + 0.05) continue;
    if (disk_image_overlap(d, b).status == Overlap::disjoint) out.push_back(d);
  }
  return out;
}

std::vector<PlaneHomeo> seeded_conjugators(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0xc2b2ae3d27d4eb4fULL);
  std::uniform_real_distribution<double> amp(0.05, 0.4);
  std::uniform_int_distribution<int> freq(1, 2);
  std::uniform_real_distribution<double> omega(0.5, 2.0);
  std::uniform_real_distribution<double> phase(0.0, 2 * kPi);
  std::vector<PlaneHomeo> out;
  for (std::size_t i = 0; i < count; ++i) {
    if (i % 2 == 0) {
      out.push_back(undulation(amp(rng), 4 * freq(rng), phase(rng)));
    } else {
      out.push_back(shear(amp(rng), omega(rng), phase(rng)));
    }
  }
  return out;
}

SuiteResult run_suite(int id, std::uint64_t seed) {
  if (id < 1 || id > kSuiteCount) throw std::out_of_range("suite id must be in 1..12");
  SuiteResult out;
  out.id = id;
  out.name = kSuites[id - 1].name;
  out.time_budget = kSuites[id - 1].budget;
  const auto start = std::chrono::steady_clock::now();
  try {
    switch (id) {
      case 1: out.details = suite_bs_normal_form(); break;
      case 2: out.details = suite_odd_square(); break;
      case 3: out.details = suite_g2_product(); break;
      case 4: out.details = suite_g1(); break;
      case 5: out.details = suite_model_relation(seed); break;
      case 6: out.details = suite_index_values(); break;
      case 7: out.details = suite_index_conjugacy(seed); break;
      case 8: out.details = suite_wandering(seed); break;
      case 9: out.details = suite_nonwandering(); break;
      case 10: out.details = suite_rotation(); break;
      case 11: out.details = suite_g2_order(); break;
      case 12: out.details = suite_limit_set(seed); break;
    }
  } catch (const std::exception& e) {
    out.details = {{"error", e.what()}, {"passed", false}};
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.passed = out.details.value("passed", false) && out.seconds < out.time_budget;
  return out;
}

std::vector<SuiteResult> run_all_suites(std::uint64_t seed) {
  std::vector<SuiteResult> out;
  for (int id = 1; id <= kSuiteCount; ++id) out.push_back(run_suite(id, seed));
  return out;
}

Json to_json(const SuiteResult& r) {
  return {{"id", r.id},          {"name", r.name},           {"passed", r.passed},
          {"seconds", r.seconds}, {"time_budget", r.time_budget}, {"details", r.details}};
}

}  // namespace klein
