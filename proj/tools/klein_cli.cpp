// klein: command-line front end for the library.
//
// Exit status: 0 success, 1 verification failure (report on stdout), 2 usage
// error or malformed input.

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "klein/verify.hpp"

namespace {

using klein::Json;

constexpr double kPi = std::numbers::pi;

struct Globals {
  std::uint64_t seed = 0;
  double tol = 1e-6;
  std::string out;
  std::string format = "json";
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Output {
  Json json;
  std::string csv;  ///< used when non-empty and --format csv
  int status = 0;
};

Output ok(Json j) { return {klein::with_schema(std::move(j)), {}, 0}; }
Output report(Json j, bool passed) { return {klein::with_schema(std::move(j)), {}, passed ? 0 : 1}; }

bool looks_like_json(const std::string& s) {
  const auto pos = s.find_first_not_of(" \t\n");
  return pos != std::string::npos && s[pos] == '{';
}

klein::BsElement bs_arg(const std::string& text, const std::string& name) {
  if (looks_like_json(text)) return klein::bs_from_json(klein::parse_json(text), name);
  return klein::bs_reduce(klein::parse_letters(klein::Alphabet::ab(), text));
}

klein::G2Element g2_arg(const std::string& text, const std::string& name) {
  if (looks_like_json(text)) return klein::g2_from_json(klein::parse_json(text), name);
  return klein::g2_rewrite(klein::parse_letters(klein::Alphabet::g2(), text));
}

klein::AffineIso3 g1_arg(const std::string& text, const std::string& name) {
  if (looks_like_json(text)) return klein::affine_from_json(klein::parse_json(text), name);
  return klein::g1_evaluate(klein::parse_letters(klein::Alphabet::ab(), text));
}

const char* order_name(std::strong_ordering c) {
  if (c == std::strong_ordering::less) return "less";
  if (c == std::strong_ordering::greater) return "greater";
  return "equal";
}

struct DiskArgs {
  double theta = kPi / 4;
  double r = 0.0;
  double radius = 0.1;
  std::string json;

  void add(CLI::App* app, double default_theta, double default_radius) {
    theta = default_theta;
    radius = default_radius;
    app->add_option("--theta", theta, "disk center theta")->capture_default_str();
    app->add_option("--r", r, "disk center r")->capture_default_str();
    app->add_option("--radius", radius, "disk radius")->capture_default_str();
    app->add_option("--disk", json, "disk as JSON {\"center\":{\"theta\":..,\"r\":..},\"radius\":..}");
  }
  klein::Disk get() const {
    if (!json.empty()) return klein::disk_from_json(klein::parse_json(json), "disk");
    if (!(radius > 0)) throw UsageError("--radius must be positive");
    return klein::Disk({theta, r}, radius);
  }
};

klein::PlaneHomeo model_map(const std::string& name) {
  if (name == "a") return klein::PlaneHomeo::model(klein::BsElement::a());
  if (name == "b") return klein::PlaneHomeo::model(klein::BsElement::b());
  throw UsageError("--map must be a or b");
}

klein::CircleMap circle_map(const std::string& name) {
  if (name == "g1-a") return klein::g1_circle_generators().a;
  if (name == "g1-b") return klein::g1_circle_generators().b;
  if (name == "g1-r") return klein::g1_circle_generators().r;
  if (name == "fig3-a") return klein::one_point_compactification(klein::figure3_generators().first);
  if (name == "fig3-b") return klein::one_point_compactification(klein::figure3_generators().second);
  if (name.rfind("rotation:", 0) == 0) {
    try {
      return klein::CircleMap::rotation(std::stod(name.substr(9)));
    } catch (const std::logic_error&) {
      throw UsageError("bad rotation angle in --map " + name);
    }
  }
  throw UsageError("unknown circle map \"" + name + "\" (g1-a, g1-b, g1-r, fig3-a, fig3-b, rotation:<x>)");
}

Json circle_summary(const klein::CircleMap& f, std::int64_t iterations, std::size_t grid) {
  const auto fix = klein::locate_fixed_points(f, grid);
  return {{"rotation_number", klein::rotation_number(f, iterations)},
          {"iterations", iterations},
          {"fixed_points", klein::to_json(fix)}};
}

std::string profile_csv(const klein::CircleMap& f, std::size_t samples) {
  std::ostringstream os;
  klein::write_profile_csv(os, klein::displacement_profile(f, samples));
  return os.str();
}

void emit(const Output& o, const Globals& g) {
  std::string text;
  if (g.format == "csv") {
    if (o.csv.empty()) throw UsageError("this subcommand has no CSV output; use --format json");
    text = o.csv;
  } else {
    text = o.json.dump() + "\n";
  }
  if (g.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(g.out);
    if (!f) throw UsageError("cannot open --out " + g.out);
    f << text;
  }
  // Failure reports always reach stdout.
  if (o.status != 0 && !g.out.empty()) std::cout << o.json.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Normal forms, orders and planar actions of the Klein bottle group BS(1,-1)"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "seed for randomized samples")->capture_default_str();
  app.add_option("--tol", g.tol, "numerical tolerance (where applicable)")->capture_default_str();
  app.add_option("--out", g.out, "write output to this path instead of stdout");
  app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  std::function<Output()> action;

  // --- bs -------------------------------------------------------------------
  auto* bs = app.add_subcommand("bs", "BS(1,-1) normal forms a^p b^q; elements are words (\"bab\", \"a^2 B\") or {\"p\":..,\"q\":..}");
  bs->require_subcommand(1);
  std::string x_arg, y_arg;
  {
    auto* c = bs->add_subcommand("reduce", "normal form of a raw word");
    c->add_option("word", x_arg)->required();
    c->callback([&] { action = [&] { return ok(klein::to_json(bs_arg(x_arg, "x"))); }; });
  }
  {
    auto* c = bs->add_subcommand("mul", "product x y");
    c->add_option("x", x_arg)->required();
    c->add_option("y", y_arg)->required();
    c->callback([&] {
      action = [&] { return ok(klein::to_json(klein::bs_multiply(bs_arg(x_arg, "x"), bs_arg(y_arg, "y")))); };
    });
  }
  {
    auto* c = bs->add_subcommand("inv", "inverse of x");
    c->add_option("x", x_arg)->required();
    c->callback([&] { action = [&] { return ok(klein::to_json(klein::bs_inverse(bs_arg(x_arg, "x")))); }; });
  }

  // --- g2 -------------------------------------------------------------------
  auto* g2 = app.add_subcommand("g2", "G2 normal forms w b^n; letters a, b, g; elements are words or {\"w\":..,\"n\":..}");
  g2->require_subcommand(1);
  {
    auto* c = g2->add_subcommand("reduce", "normal form of a raw word, with the literal alpha-flip recipe for comparison");
    c->add_option("word", x_arg)->required();
    c->callback([&] {
      action = [&] {
        const auto letters = klein::parse_letters(klein::Alphabet::g2(), x_arg);
        const klein::G2Element x = klein::g2_rewrite(letters);
        const klein::ReducedWord omega = klein::g2_omega(letters);
        Json j = klein::to_json(x);
        j["omega"] = klein::to_string(omega);
        j["omega_agrees"] = omega == x.w;
        return ok(j);
      };
    });
  }
  {
    auto* c = g2->add_subcommand("mul", "product x y");
    c->add_option("x", x_arg)->required();
    c->add_option("y", y_arg)->required();
    c->callback([&] {
      action = [&] { return ok(klein::to_json(klein::g2_multiply(g2_arg(x_arg, "x"), g2_arg(y_arg, "y")))); };
    });
  }
  {
    auto* c = g2->add_subcommand("compare", "left-invariant order: less, equal or greater");
    c->add_option("x", x_arg)->required();
    c->add_option("y", y_arg)->required();
    c->callback([&] {
      action = [&] {
        const auto x = g2_arg(x_arg, "x");
        const auto y = g2_arg(y_arg, "y");
        return ok({{"x", klein::to_json(x)}, {"y", klein::to_json(y)}, {"order", order_name(klein::g2_compare(x, y))}});
      };
    });
  }

  // --- g1 -------------------------------------------------------------------
  auto* g1 = app.add_subcommand("g1", "G1 as affine isometries of R^3; letters a (alpha), b (beta)");
  g1->require_subcommand(1);
  {
    auto* c = g1->add_subcommand("eval", "affine isometry of a word");
    c->add_option("word", x_arg)->required();
    c->callback([&] { action = [&] { return ok(klein::to_json(g1_arg(x_arg, "x"))); }; });
  }
  {
    auto* c = g1->add_subcommand("order", "order of a word or {\"linear\":..,\"t\":..}: an integer or \"infinite\"");
    c->add_option("x", x_arg)->required();
    c->callback([&] {
      action = [&] {
        const auto f = g1_arg(x_arg, "x");
        const auto ord = klein::g1_element_order(f);
        Json j = {{"element", klein::to_json(f)}};
        j["order"] = ord ? Json(*ord) : Json("infinite");
        return ok(j);
      };
    });
  }
  {
    auto* c = g1->add_subcommand("verify", "relations and torsion-freeness on the radius-8 ball");
    c->callback([&] {
      action = [&] {
        const auto r = klein::run_suite(4, g.seed);
        return report(klein::to_json(r), r.passed);
      };
    });
  }

  // --- plane ----------------------------------------------------------------
  auto* plane = app.add_subcommand("plane", "the model action on the (theta, r) plane");
  plane->require_subcommand(1);
  std::int64_t p = 0, q = 0;
  double theta = 0.0, r = 0.0;
  {
    auto* c = plane->add_subcommand("apply", "image of (theta, r) under a^p b^q");
    c->add_option("--p", p)->capture_default_str();
    c->add_option("--q", q)->capture_default_str();
    c->add_option("--theta", theta)->capture_default_str();
    c->add_option("--r", r)->capture_default_str();
    c->callback([&] {
      action = [&] {
        const klein::BsElement e{p, q};
        return ok({{"element", klein::to_json(e)}, {"point", klein::to_json(klein::model_apply(e, {theta, r}))}});
      };
    });
  }
  int k = 1;
  double seed_theta = klein::default_index_seed().theta, seed_r = klein::default_index_seed().r;
  std::vector<double> undulation_params, shear_params;
  {
    auto* c = plane->add_subcommand("index", "index of b (or H b H^-1) relative to a^k");
    c->add_option("--k", k, "power of a, nonzero")->capture_default_str();
    c->add_option("--seed-theta", seed_theta, "curve start theta")->capture_default_str();
    c->add_option("--seed-r", seed_r, "curve start r")->capture_default_str();
    c->add_option("--undulation", undulation_params, "conjugate by (theta, r + A sin(F theta + phase)): A F phase")
        ->expected(3);
    c->add_option("--shear", shear_params, "conjugate by (theta + A sin(w r + phase), r): A w phase")->expected(3);
    c->callback([&] {
      action = [&] {
        if (k == 0) throw UsageError("--k must be nonzero");
        klein::PlaneHomeo f = klein::PlaneHomeo::model(klein::BsElement::b());
        if (!undulation_params.empty()) {
          const double freq = undulation_params[1];
          if (freq != std::round(freq)) throw UsageError("--undulation frequency must be an integer");
          f = klein::conjugate(klein::undulation(undulation_params[0], static_cast<int>(freq), undulation_params[2]), f);
        }
        if (!shear_params.empty()) {
          f = klein::conjugate(klein::shear(shear_params[0], shear_params[1], shear_params[2]), f);
        }
        const auto res = klein::index(f, klein::BsElement::a(k), {seed_theta, seed_r}, g.tol);
        Json j = klein::to_json(res);
        j["k"] = k;
        return ok(j);
      };
    });
  }
  DiskArgs disk;
  int p_range = 5, q_range = 5;
  {
    auto* c = plane->add_subcommand("wandering", "D against a^{2p} b^q (D) for |p|, |q| within range");
    disk.add(c, kPi / 4, 0.1);
    c->add_option("--p-range", p_range)->capture_default_str();
    c->add_option("--q-range", q_range)->capture_default_str();
    c->callback([&] {
      action = [&] {
        const auto d = disk.get();
        const auto rep = klein::wandering_check(d, p_range, q_range);
        Json j = klein::to_json(rep);
        j["disk"] = klein::to_json(d);
        return report(j, rep.passed());
      };
    });
  }
  int n_max = 50;
  DiskArgs nw_disk;
  {
    auto* c = plane->add_subcommand("nonwandering", "first n with b^{+-n} a (D) meeting D; not finding one is not an error");
    nw_disk.add(c, kPi / 2, 0.3);
    c->add_option("--n-max", n_max)->capture_default_str();
    c->callback([&] {
      action = [&] {
        const auto d = nw_disk.get();
        const auto w = klein::nonwandering_witness(d, n_max);
        Json j = {{"disk", klein::to_json(d)}, {"n_max", n_max}, {"found", w.has_value()}};
        if (w) j["witness"] = {{"n", w->n}, {"sign", w->sign}, {"point", klein::to_json(w->witness)}};
        return ok(j);
      };
    });
  }
  DiskArgs ls_disk;
  std::string map_name = "b";
  int ls_n_max = 8;
  double grid = 0.01;
  {
    auto* c = plane->add_subcommand(
        "limitset", "grid-quantized late iterates of a free disk; CSV columns: theta,r (cell centers)");
    ls_disk.add(c, kPi / 4, 0.1);
    c->add_option("--map", map_name, "a or b")->capture_default_str();
    c->add_option("--n-max", ls_n_max)->capture_default_str();
    c->add_option("--grid", grid)->capture_default_str();
    c->callback([&] {
      action = [&] {
        if (!(grid > 0)) throw UsageError("--grid must be positive");
        if (ls_n_max < 1) throw UsageError("--n-max must be positive");
        const auto d = ls_disk.get();
        const auto est = klein::limit_set_estimate(d, model_map(map_name), ls_n_max, grid);
        Json j = klein::to_json(est);
        j["disk"] = klein::to_json(d);
        j["map"] = map_name;
        Output o = ok(j);
        std::ostringstream os;
        klein::write_points_csv(os, est.cloud);
        o.csv = os.str();
        return o;
      };
    });
  }
  std::size_t samples = 10000;
  {
    auto* c = plane->add_subcommand("verify", "relation a b a^-1 = b^-1 and freeness of a^p b^q, 0 < |p|+|q| <= 6");
    c->add_option("--samples", samples)->capture_default_str();
    c->callback([&] {
      action = [&] {
        const double tol = app.get_option("--tol")->count() > 0 ? g.tol : 1e-9;
        const auto rep = klein::verify_relation(samples, tol, g.seed);
        return report(klein::to_json(rep), rep.passed());
      };
    });
  }

  // --- circle ---------------------------------------------------------------
  auto* circle = app.add_subcommand("circle", "line and circle actions");
  circle->require_subcommand(1);
  std::size_t profile_samples = 1024;
  std::string fig_map = "b";
  {
    auto* c = circle->add_subcommand(
        "figure3", "line action a = x + 1, b = time-1 sine flow; CSV columns: x,displacement of the compactified map");
    c->add_option("--map", fig_map, "a or b (for CSV)")->capture_default_str();
    c->add_option("--samples", profile_samples)->capture_default_str();
    c->callback([&] {
      action = [&] {
        const auto [a, b] = klein::figure3_generators();
        double rel = 0.0, sym = 0.0;
        const klein::LineMap conj = klein::compose(klein::compose(a, b), a.inverse());
        const klein::LineMap binv = b.inverse();
        for (int i = 0; i <= 6000; ++i) {
          const double x = -3.0 + i * 1e-3;
          rel = std::max(rel, std::abs(conj(x) - binv(x)));
          sym = std::max(sym, std::abs(b(-x) + b(x)));
        }
        Json j = {{"b_at_0", b(0.0)},
                  {"b_at_half", b(0.5)},
                  {"relation_sup_error", rel},
                  {"antisymmetry_sup_error", sym}};
        if (fig_map != "a" && fig_map != "b") throw UsageError("--map must be a or b");
        Output o = ok(j);
        o.csv = profile_csv(klein::one_point_compactification(fig_map == "a" ? a : b), profile_samples);
        return o;
      };
    });
  }
  std::string g1_map = "b";
  {
    auto* c = circle->add_subcommand("g1-action",
                                     "circle action of G1 built from two copies of the line; CSV columns: x,displacement");
    c->add_option("--map", g1_map, "a, b or r (for CSV)")->capture_default_str();
    c->add_option("--samples", profile_samples)->capture_default_str();
    c->callback([&] {
      action = [&] {
        const auto act = klein::g1_circle_generators();
        using klein::compose;
        const auto a2 = compose(act.a, act.a);
        const auto b2 = compose(act.b, act.b);
        const auto ab2 = compose(compose(act.a, act.b), compose(act.a, act.b));
        Json j = {{"rotation_number_a", klein::rotation_number(act.a, 10000)},
                  {"rotation_number_b", klein::rotation_number(act.b, 10000)},
                  {"relation_a_b2_ainv_sup",
                   klein::sup_circle_distance(compose(compose(act.a, b2), act.a.inverse()), b2.inverse(), 1024)},
                  {"relation_b_a2_binv_sup",
                   klein::sup_circle_distance(compose(compose(act.b, a2), act.b.inverse()), a2.inverse(), 1024)},
                  {"commutator_a2_b2_sup", klein::sup_circle_distance(compose(a2, b2), compose(b2, a2), 1024)},
                  {"commutator_a2_ab2_sup", klein::sup_circle_distance(compose(a2, ab2), compose(ab2, a2), 1024)},
                  {"commutator_b2_ab2_sup", klein::sup_circle_distance(compose(b2, ab2), compose(ab2, b2), 1024)}};
        const klein::CircleMap* f = nullptr;
        if (g1_map == "a") f = &act.a;
        if (g1_map == "b") f = &act.b;
        if (g1_map == "r") f = &act.r;
        if (f == nullptr) throw UsageError("--map must be a, b or r");
        Output o = ok(j);
        o.csv = profile_csv(*f, profile_samples);
        return o;
      };
    });
  }
  std::string rot_map = "g1-b";
  std::int64_t iterations = 10000;
  {
    auto* c = circle->add_subcommand("rotnum", "rotation number and fixed points; CSV columns: x,displacement");
    c->add_option("--map", rot_map, "g1-a, g1-b, g1-r, fig3-a, fig3-b or rotation:<x>")->capture_default_str();
    c->add_option("--iterations", iterations)->capture_default_str();
    c->add_option("--samples", profile_samples)->capture_default_str();
    c->callback([&] {
      action = [&] {
        if (iterations < 1) throw UsageError("--iterations must be positive");
        const auto f = circle_map(rot_map);
        Json j = circle_summary(f, iterations, 1024);
        j["map"] = rot_map;
        Output o = ok(j);
        o.csv = profile_csv(f, profile_samples);
        return o;
      };
    });
  }
  std::string lemma_case = "figure3";
  std::string lemma_a, lemma_b;
  {
    auto* c = circle->add_subcommand("lemma32", "fixed points of a and b when a b a^-1 = b^-1");
    c->add_option("--case", lemma_case, "figure3, g1 (a and b of the G1 action), identity or rotation")
        ->capture_default_str();
    c->add_option("--a", lemma_a, "circle map for a (overrides --case)");
    c->add_option("--b", lemma_b, "circle map for b (overrides --case)");
    c->callback([&] {
      action = [&] {
        std::optional<klein::CircleMap> a, b;
        if (!lemma_a.empty() || !lemma_b.empty()) {
          if (lemma_a.empty() || lemma_b.empty()) throw UsageError("--a and --b go together");
          a = circle_map(lemma_a);
          b = circle_map(lemma_b);
        } else if (lemma_case == "figure3") {
          const auto [la, lb] = klein::figure3_generators();
          a = klein::one_point_compactification(la);
          b = klein::one_point_compactification(lb);
        } else if (lemma_case == "g1") {
          const auto act = klein::g1_circle_generators();
          a = act.a;
          b = act.b;
        } else if (lemma_case == "identity") {
          a = klein::CircleMap::rotation(0.0);
          b = klein::CircleMap::rotation(0.0);
        } else if (lemma_case == "rotation") {
          a = klein::CircleMap::rotation(0.5);
          b = klein::CircleMap::rotation(0.5);
        } else {
          throw UsageError("unknown --case " + lemma_case);
        }
        const auto rep = klein::lemma32_check(*a, *b, 1024);
        return report(klein::to_json(rep), rep.passed);
      };
    });
  }

  // --- verify ---------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "acceptance suites");
  verify->require_subcommand(1);
  {
    auto* c = verify->add_subcommand("all", "every suite, in id order");
    c->callback([&] {
      action = [&] {
        Json suites = Json::array();
        bool passed = true;
        for (const auto& s : klein::run_all_suites(g.seed)) {
          suites.push_back(klein::to_json(s));
          passed = passed && s.passed;
        }
        return report({{"seed", g.seed}, {"suites", suites}, {"passed", passed}}, passed);
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const Output o = action();
    emit(o, g);
    return o.status;
  } catch (const klein::SchemaError& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::overflow_error& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
