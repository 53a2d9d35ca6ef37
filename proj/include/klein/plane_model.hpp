#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "klein/klein_group.hpp"

namespace klein {

/// Point (theta, r) of the universal cover of the punctured plane, projected
/// by (theta, r) -> exp(-r + i theta).
struct PlanePoint {
  double theta = 0.0;
  double r = 0.0;

  bool operator==(const PlanePoint&) const = default;
};

double distance(const PlanePoint& x, const PlanePoint& y);

/// The model free action: a = quarter turn theta + pi/2, b = the lift of
/// diag(2, 1/2) fixing the lines theta = k pi/2, with b(0, r) = (0, r - log 2).
/// g = a^p b^q applies b^q first. Throws std::domain_error on non-finite input.
PlanePoint model_apply(const BsElement& g, const PlanePoint& x);

/// Image of x under the matrix action of g = a^p b^q on R^2 \ {0}, evaluated
/// at the projection of x. Used to check the lift projects correctly.
std::array<double, 2> project(const PlanePoint& x);
std::array<double, 2> matrix_apply(const BsElement& g, const std::array<double, 2>& z);

/// Homeomorphism of the (theta, r) plane with an explicit inverse.
class PlaneHomeo {
 public:
  using Fn = std::function<PlanePoint(const PlanePoint&)>;

  PlaneHomeo(Fn forward, Fn inverse, std::string name);

  /// The model map of a BS(1,-1) element.
  static PlaneHomeo model(const BsElement& g);

  PlanePoint operator()(const PlanePoint& x) const { return forward_(x); }
  PlaneHomeo inverse() const;
  /// n-th iterate; closed form for model maps.
  PlaneHomeo power(std::int64_t n) const;

  const std::string& name() const { return name_; }
  const std::optional<BsElement>& model_element() const { return element_; }

 private:
  Fn forward_;
  Fn inverse_;
  std::string name_;
  std::optional<BsElement> element_;
};

/// f o g.
PlaneHomeo compose(const PlaneHomeo& f, const PlaneHomeo& g);
/// h f h^-1.
PlaneHomeo conjugate(const PlaneHomeo& h, const PlaneHomeo& f);

/// (theta, r) -> (theta, r + amplitude sin(frequency theta + phase)). Commutes
/// with a when frequency is a multiple of 4.
PlaneHomeo undulation(double amplitude, int frequency, double phase);
/// (theta, r) -> (theta + amplitude sin(frequency r + phase), r). Commutes with a.
PlaneHomeo shear(double amplitude, double frequency, double phase);

// ---------------------------------------------------------------------------
// Verification of the relation and of freeness

struct FreenessEntry {
  BsElement element;
  double min_displacement = 0.0;
  PlanePoint argmin;
};

struct RelationReport {
  std::size_t samples = 0;
  double tolerance = 0.0;
  double relation_sup_error = 0.0;
  PlanePoint relation_worst;
  std::vector<FreenessEntry> freeness;  ///< all 0 < |p| + |q| <= 6
  double freeness_threshold = 0.0;
  bool relation_passed = false;
  bool freeness_passed = false;
  bool passed() const { return relation_passed && freeness_passed; }
};

/// sup |a b a^-1 (x) - b^-1 (x)| over seeded samples, and the smallest
/// displacement of every a^p b^q with 0 < |p| + |q| <= 6.
RelationReport verify_relation(std::size_t samples, double tol, std::uint64_t seed = 0,
                               double freeness_threshold = 1e-3);

// ---------------------------------------------------------------------------
// Index of a map relative to a power of a

/// A number in (1/2) Z, stored as twice its value.
struct HalfInteger {
  std::int64_t twice = 0;
  double value() const { return static_cast<double>(twice) / 2.0; }
  bool is_integer() const { return twice % 2 == 0; }
  bool operator==(const HalfInteger&) const = default;
};

struct IndexResult {
  HalfInteger value;
  double raw = 0.0;       ///< total turn / 2 pi before rounding
  double residual = 0.0;  ///< |raw - value|
  std::size_t segments = 0;
  PlanePoint start;
  PlanePoint end;
};

/// Total turn of x -> f(x) - x along the straight segment from `seed` to
/// tau(seed) (tau commutes with f) or tau(f(seed)) (tau f tau^-1 = f^-1),
/// divided by 2 pi and rounded to a half-integer. tau must be a^k, k != 0.
/// Throws std::domain_error if f has a fixed point on the curve, refinement
/// exceeds depth 40, or the raw value is farther than tol from (1/2) Z.
IndexResult index(const PlaneHomeo& f, const BsElement& tau, const PlanePoint& seed, double tol = 1e-6);

// ---------------------------------------------------------------------------
// Disks and overlap tests

struct Disk {
  PlanePoint center;
  double radius = 0.0;

  Disk() = default;
  Disk(PlanePoint c, double rad);
};

/// Piecewise-linear curve in the (theta, r) plane.
struct CurveSample {
  std::vector<PlanePoint> points;
  double tolerance = 1e-3;

  CurveSample() = default;
  CurveSample(std::vector<PlanePoint> pts, double tol);
};

enum class Overlap { disjoint, intersecting, inconclusive };
std::string to_string(Overlap o);

struct OverlapResult {
  Overlap status = Overlap::inconclusive;
  std::optional<PlanePoint> witness;  ///< a point of D and of g(D) when intersecting
  double boundary_distance = 0.0;  ///< min distance from the disk center to the image boundary
  double margin = 0.0;             ///< numerical margin used for the decision
};

/// Compares D with g(D). g(boundary) is sampled at arc spacing <= radius / 32
/// and refined adaptively; results within 1e-6 plus the estimated
/// discretization error are reported inconclusive.
OverlapResult disk_image_overlap(const Disk& d, const PlaneHomeo& g);

struct WanderingViolation {
  BsElement element;
  OverlapResult overlap;
};

struct WanderingReport {
  bool precondition_ok = false;  ///< b(D) and D certified disjoint
  OverlapResult b_overlap;
  std::size_t checked = 0;
  double min_gap = 0.0;  ///< smallest (boundary distance - radius) over certified cases
  std::vector<WanderingViolation> violations;
  bool passed() const { return precondition_ok && violations.empty(); }
};

/// Checks D against a^{2p} b^q (D) for |p| <= p_range, |q| <= q_range, (p, q) != 0.
WanderingReport wandering_check(const Disk& d, int p_range, int q_range);

struct NonwanderingWitness {
  int n = 0;
  int sign = 0;  ///< element is b^{sign n} a
  PlanePoint witness;  ///< a point of D and of its image
};

/// First n in [1, n_max] (both signs, - before +) with b^{+-n} a (D) meeting D.
std::optional<NonwanderingWitness> nonwandering_witness(const Disk& d, int n_max);

// ---------------------------------------------------------------------------
// Limit sets

using CompactSet = std::variant<Disk, CurveSample>;

struct LimitSetEstimate {
  double grid = 0.0;
  int n_stable = 0;
  int n_max = 0;
  std::vector<PlanePoint> cloud;  ///< cell centers, sorted
  std::size_t early_cells = 0;    ///< cells of the iterates 0..n_stable/2
  std::size_t overlap_cells = 0;  ///< cloud cells also hit by those iterates
  std::size_t unresolved_segments = 0;
  bool disjoint_from_early_iterates() const { return overlap_cells == 0; }
};

/// Grid-quantized union of f^n(k), max(1, n_max / 2) <= n <= n_max, inside a
/// window around k padded by `window_pad`. Points that leave the window have
/// escaped towards infinity and are not part of the planar limit set.
/// Throws std::domain_error if k is not certified free for f.
LimitSetEstimate limit_set_estimate(const CompactSet& k, const PlaneHomeo& f, int n_max, double grid,
                                    double window_pad = 4.0);

}  // namespace klein
