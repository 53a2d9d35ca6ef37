#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace klein {

/// Increasing homeomorphism of the real line with an explicit inverse.
class LineMap {
 public:
  enum class Kind { translation, sine_flow, composite, custom };
  using Fn = std::function<double(double)>;

  LineMap(Kind kind, Fn forward, Fn inverse, std::string description);

  static LineMap identity();
  /// x -> x + c
  static LineMap translation(double c);
  /// Time-t flow of x' = sin(pi x):
  ///   tan(pi x_t / 2) = e^{pi t} tan(pi x_0 / 2) on (-1, 1), extended 2-periodically.
  static LineMap sine_flow(double t);

  double operator()(double x) const { return forward_(x); }
  LineMap inverse() const;

  Kind kind() const { return kind_; }
  const std::string& description() const { return description_; }

 private:
  Kind kind_;
  Fn forward_;
  Fn inverse_;
  std::string description_;
};

/// f o g
LineMap compose(const LineMap& f, const LineMap& g);

/// a(x) = x + 1 and b = time-1 flow of sin(pi x). Fix(b) = Z and
/// a b a^-1 = b^-1 since sin(pi (x - 1)) = -sin(pi x).
std::pair<LineMap, LineMap> figure3_generators();

/// Degree-one circle map given by a lift F with F(x + 1) = F(x) + 1.
class CircleMap {
 public:
  explicit CircleMap(LineMap lift);

  double lift(double x) const { return lift_(x); }
  double operator()(double x) const { return lift_(x); }
  const LineMap& lift_map() const { return lift_; }
  CircleMap inverse() const { return CircleMap(lift_.inverse()); }

  static CircleMap rotation(double angle);

 private:
  LineMap lift_;
};

CircleMap compose(const CircleMap& f, const CircleMap& g);

/// Distance on R / Z.
double circle_distance(double x, double y);

/// Circle action of G1 built from two copies of [-inf, +inf]. The first copy
/// is charted positively onto [0, 1/2] by u = arctan(x) / (2 pi) + 1/4, the
/// second negatively onto [1/2, 1] by u = 3/4 - arctan(x) / (2 pi).
/// a is x -> x + 1 on each copy; b is R on the first copy and b' o R on the
/// second, where R swaps copies by x -> -x and b' is the Figure-3 b.
struct G1CircleAction {
  CircleMap a;
  CircleMap b;
  CircleMap r;       ///< the order-two swap, rotation by 1/2 in this chart
  LineMap b_prime;   ///< the line map b' used on the second copy
};

G1CircleAction g1_circle_generators();

/// (F^n(x0) - x0) / n with x0 = 0.
double rotation_number(const CircleMap& f, std::int64_t iterations);

/// Compactification of a line action by one point: u = arctan(x) / pi + 1/2,
/// with the added point at u = 0. The map must fix +-infinity.
CircleMap one_point_compactification(const LineMap& f);

/// Displacement profile (x, F(x) - x) on `samples` evenly spaced points of [0, 1).
std::vector<std::pair<double, double>> displacement_profile(const CircleMap& f, std::size_t samples);

struct FixedPointSet {
  std::vector<double> points;  ///< in [0, 1), sorted
  bool whole_circle = false;   ///< every grid point is fixed
};

/// Fixed points of a circle map located on a grid: |F(x) - x| (mod 1) below
/// 1e-7, or a sign change of the displacement refined to width 1e-10.
FixedPointSet locate_fixed_points(const CircleMap& f, std::size_t grid);

struct Lemma32Report {
  bool relation_ok = false;       ///< a b a^-1 == b^-1 on the grid
  double relation_sup_error = 0.0;
  bool a_has_fixed_points = false;
  bool b_has_fixed_points = false;
  bool precondition_ok = false;
  FixedPointSet fix_a;
  FixedPointSet fix_b;
  bool fix_a_in_fix_b = false;
  std::size_t components = 0;        ///< arcs of the circle minus Fix(a)
  std::size_t components_with_b_fixed = 0;
  bool vacuous = false;              ///< Fix(a) is the whole circle
  bool passed = false;
};

/// Numerical check that, when a b a^-1 = b^-1 and both maps have fixed
/// points, Fix(a) lies in Fix(b) and every arc of the complement of Fix(a)
/// contains a fixed point of b.
Lemma32Report lemma32_check(const CircleMap& a, const CircleMap& b, std::size_t grid);

/// Maximum over a grid of [0, 1) of the circle distance between f and g.
double sup_circle_distance(const CircleMap& f, const CircleMap& g, std::size_t grid);

}  // namespace klein
