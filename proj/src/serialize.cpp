#include "klein/serialize.hpp"

#include <cmath>
#include <iomanip>
#include <limits>

namespace klein {

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

const Json& field(const Json& j, const std::string& path, const std::string& key) {
  if (!j.is_object()) throw SchemaError(path.empty() ? "<root>" : path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(join(path, key), "missing field");
  return *it;
}

std::int64_t int_field(const Json& j, const std::string& path, const std::string& key) {
  const Json& v = field(j, path, key);
  if (!v.is_number_integer()) throw SchemaError(join(path, key), "expected an integer");
  return v.get<std::int64_t>();
}

double real_field(const Json& j, const std::string& path, const std::string& key) {
  const Json& v = field(j, path, key);
  if (!v.is_number()) throw SchemaError(join(path, key), "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw SchemaError(join(path, key), "expected a finite number");
  return x;
}

std::string string_field(const Json& j, const std::string& path, const std::string& key) {
  const Json& v = field(j, path, key);
  if (!v.is_string()) throw SchemaError(join(path, key), "expected a string");
  return v.get<std::string>();
}

// Doubles that are not finite have no JSON representation.
Json real(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

}  // namespace

Json with_schema(Json body) {
  body["schema"] = kSchemaVersion;
  return body;
}

Json to_json(const BsElement& x) { return {{"p", x.p}, {"q", x.q}}; }

Json to_json(const G2Element& x) { return {{"w", to_string(x.w)}, {"n", x.n}}; }

std::string to_string(const Rational& q) { return q.str(); }

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  for (char c : text) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '/')) {
      throw std::invalid_argument("bad rational \"" + text + "\"");
    }
  }
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(boost::multiprecision::cpp_int(text));
    const boost::multiprecision::cpp_int num(text.substr(0, slash));
    const boost::multiprecision::cpp_int den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in \"" + text + "\"");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("bad rational \"" + text + "\"");
  }
}

Json to_json(const AffineIso3& f) {
  Json t = Json::array();
  for (const auto& c : f.translation()) t.push_back(to_string(c));
  return {{"linear", to_string(f.linear())}, {"t", t}};
}

Json to_json(const PlanePoint& x) { return {{"theta", real(x.theta)}, {"r", real(x.r)}}; }

Json to_json(const Disk& d) { return {{"center", to_json(d.center)}, {"radius", d.radius}}; }

Json to_json(const RelationReport& r) {
  Json freeness = Json::array();
  for (const auto& e : r.freeness) {
    freeness.push_back({{"element", to_json(e.element)},
                        {"min_displacement", real(e.min_displacement)},
                        {"argmin", to_json(e.argmin)}});
  }
  return {{"samples", r.samples},
          {"tolerance", r.tolerance},
          {"relation_sup_error", real(r.relation_sup_error)},
          {"relation_worst", to_json(r.relation_worst)},
          {"relation_passed", r.relation_passed},
          {"freeness_threshold", r.freeness_threshold},
          {"freeness_passed", r.freeness_passed},
          {"freeness", freeness},
          {"passed", r.passed()}};
}

Json to_json(const IndexResult& r) {
  return {{"index", r.value.value()},       {"raw", real(r.raw)},          {"residual", real(r.residual)},
          {"segments", r.segments},         {"start", to_json(r.start)},   {"end", to_json(r.end)}};
}

Json to_json(const OverlapResult& r) {
  Json j = {{"status", to_string(r.status)},
            {"boundary_distance", real(r.boundary_distance)},
            {"margin", real(r.margin)}};
  j["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
  return j;
}

Json to_json(const WanderingReport& r) {
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"element", to_json(v.element)}, {"overlap", to_json(v.overlap)}});
  }
  return {{"precondition_ok", r.precondition_ok}, {"b_overlap", to_json(r.b_overlap)},
          {"checked", r.checked},                 {"min_gap", real(r.min_gap)},
          {"violations", violations},             {"passed", r.passed()}};
}

Json to_json(const LimitSetEstimate& e) {
  return {{"grid", e.grid},
          {"n_stable", e.n_stable},
          {"n_max", e.n_max},
          {"cells", e.cloud.size()},
          {"early_cells", e.early_cells},
          {"overlap_cells", e.overlap_cells},
          {"unresolved_segments", e.unresolved_segments},
          {"disjoint_from_early_iterates", e.disjoint_from_early_iterates()}};
}

Json to_json(const FixedPointSet& f) { return {{"points", f.points}, {"whole_circle", f.whole_circle}}; }

Json to_json(const Lemma32Report& r) {
  return {{"relation_ok", r.relation_ok},
          {"relation_sup_error", real(r.relation_sup_error)},
          {"a_has_fixed_points", r.a_has_fixed_points},
          {"b_has_fixed_points", r.b_has_fixed_points},
          {"precondition_ok", r.precondition_ok},
          {"fix_a", to_json(r.fix_a)},
          {"fix_b_count", r.fix_b.points.size()},
          {"fix_b_whole_circle", r.fix_b.whole_circle},
          {"fix_a_in_fix_b", r.fix_a_in_fix_b},
          {"components", r.components},
          {"components_with_b_fixed", r.components_with_b_fixed},
          {"vacuous", r.vacuous},
          {"passed", r.passed}};
}

BsElement bs_from_json(const Json& j, const std::string& path) {
  return {int_field(j, path, "p"), int_field(j, path, "q")};
}

G2Element g2_from_json(const Json& j, const std::string& path) {
  const std::string text = string_field(j, path, "w");
  ReducedWord w(Alphabet::f2());
  try {
    w = parse_word(Alphabet::f2(), text);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(join(path, "w"), e.what());
  }
  return {std::move(w), int_field(j, path, "n")};
}

AffineIso3 affine_from_json(const Json& j, const std::string& path) {
  SignDiagonal linear;
  try {
    linear = parse_sign_diagonal(string_field(j, path, "linear"));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(join(path, "linear"), e.what());
  }
  const Json& t = field(j, path, "t");
  if (!t.is_array() || t.size() != 3) throw SchemaError(join(path, "t"), "expected an array of three rationals");
  std::array<Rational, 3> translation;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::string where = join(path, "t") + "[" + std::to_string(i) + "]";
    if (t[i].is_number_integer()) {
      translation[i] = Rational(t[i].get<std::int64_t>());
      continue;
    }
    if (!t[i].is_string()) throw SchemaError(where, "expected a \"num/den\" string");
    try {
      translation[i] = parse_rational(t[i].get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw SchemaError(where, e.what());
    }
  }
  return {linear, std::move(translation)};
}

PlanePoint point_from_json(const Json& j, const std::string& path) {
  return {real_field(j, path, "theta"), real_field(j, path, "r")};
}

Disk disk_from_json(const Json& j, const std::string& path) {
  const PlanePoint c = point_from_json(field(j, path, "center"), join(path, "center"));
  const double radius = real_field(j, path, "radius");
  if (radius <= 0) throw SchemaError(join(path, "radius"), "must be positive");
  return Disk(c, radius);
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError("<input>", e.what());
  }
}

void write_points_csv(std::ostream& out, const std::vector<PlanePoint>& points) {
  out << "theta,r\n" << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto& p : points) out << p.theta << ',' << p.r << '\n';
}

void write_profile_csv(std::ostream& out, const std::vector<std::pair<double, double>>& profile) {
  out << "x,displacement\n" << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto& [x, d] : profile) out << x << ',' << d << '\n';
}

}  // namespace klein
