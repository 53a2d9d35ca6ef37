#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "klein/derived_groups.hpp"
#include "klein/klein_group.hpp"
#include "klein/line_circle.hpp"
#include "klein/plane_model.hpp"

namespace klein {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Malformed input. `field` is a JSON-pointer-like path to the offending value.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Copies `body` and adds "schema": 1.
Json with_schema(Json body);

Json to_json(const BsElement& x);
Json to_json(const G2Element& x);
Json to_json(const AffineIso3& f);
Json to_json(const PlanePoint& x);
Json to_json(const Disk& d);
Json to_json(const RelationReport& r);
Json to_json(const IndexResult& r);
Json to_json(const OverlapResult& r);
Json to_json(const WanderingReport& r);
Json to_json(const LimitSetEstimate& e);
Json to_json(const FixedPointSet& f);
Json to_json(const Lemma32Report& r);

std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

// Parsers throw SchemaError naming the field. `path` prefixes the field names.
BsElement bs_from_json(const Json& j, const std::string& path = "");
G2Element g2_from_json(const Json& j, const std::string& path = "");
AffineIso3 affine_from_json(const Json& j, const std::string& path = "");
PlanePoint point_from_json(const Json& j, const std::string& path = "");
Disk disk_from_json(const Json& j, const std::string& path = "");

/// Parses text as JSON, reporting syntax errors as SchemaError on "<input>".
Json parse_json(const std::string& text);

/// CSV with header "theta,r".
void write_points_csv(std::ostream& out, const std::vector<PlanePoint>& points);
/// CSV with header "x,displacement" (displacement = f(x) - x).
void write_profile_csv(std::ostream& out, const std::vector<std::pair<double, double>>& profile);

}  // namespace klein
