#ifndef FLEXKIT_GEOMETRY_HPP
#define FLEXKIT_GEOMETRY_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "flexkit/error.hpp"
#include "flexkit/poly.hpp"
#include "flexkit/projective.hpp"
#include "flexkit/solve.hpp"
#include "flexkit/tolerances.hpp"

namespace flexkit {

/// Determinant of the matrix of second partials. F must be homogeneous.
MPoly hessian(const MPoly& f);

/// |F(p)| / coeff_norm(F) at the max-modulus-1 representative of p.
double relative_value(const MPoly& f, const ProjPoint& p);

struct TangentLine {
  Vec3 coeffs;           // gradient of F at the base point
  ProjPoint base;
  ProjPoint direction;   // second point spanning the line, Hermitian-orthogonal to base

  Complex operator()(const Vec3& v) const { return bilinear(coeffs, v); }
};

/// Gradient line at an on-curve point. Throws Error(SingularPoint) when the
/// gradient vanishes and Error(Unsupported) when p is off the curve.
TangentLine tangent_at(const MPoly& f, const ProjPoint& p, const Tolerances& tol = {});

/// F(base + t * direction) with both spanning vectors at unit norm.
UPoly line_restriction(const MPoly& f, const TangentLine& line);

/// Vanishing order at t = 0 of the line restriction: 2 for a plain
/// tangent, 3 for an ordinary flex, 4 for a hyperflex.
int contact_order(const MPoly& f, const TangentLine& line, double tol = Tolerances{}.contact);

/// Intersection count of a tangent line with the curve, split by location.
struct LineIntersections {
  int contact = 0;      // Taylor vanishing order at the base point
  int near_base = 0;    // roots of the line restriction clustered at t = 0
  int elsewhere = 0;    // remaining finite roots, with multiplicity
  int at_infinity = 0;  // degree deficit: the direction point lies on the curve

  int total() const { return near_base + elsewhere + at_infinity; }
};
LineIntersections line_intersections(const MPoly& f, const TangentLine& line, double tol = Tolerances{}.contact);

struct FlexRecord {
  ProjPoint point;
  int contact_order;
  int flex_order;
  int weight;
  std::array<int, 3> gap_sequence;

  /// Weight and gap sequence from the contact order (3 or 4).
  static FlexRecord from_contact(const ProjPoint& p, int contact_order);
  bool is_hyperflex() const { return weight == 2; }
};

struct FlexOptions {
  Tolerances tol;
  /// Coordinate frame T for elimination: flexes of F(T v) are found in the
  /// chart z = 1 plus the line z = 0 and mapped back. Unset means a fixed
  /// generic unitary frame, which separates flexes sharing a coordinate.
  std::optional<Mat3> frame;
};

struct FlexDiagnostics {
  Mat3 frame{};
  int frame_attempts = 0;
  int refinement_passes = 0;
  int eliminant_degree = 0;
  int raw_roots = 0;
  int candidates = 0;
  int rejected_candidates = 0;
  int deflated = 0;
  double max_curve_residual = 0;
  double max_hessian_residual = 0;
  int weight_sum = 0;
  /// Eliminant raw roots attributed to each flex; in a generic frame this
  /// is the intersection multiplicity of F and H_F and equals the weight.
  std::vector<int> root_counts;
  std::vector<std::string> notes;
};

struct FlexSet {
  std::vector<FlexRecord> flexes;  // sorted by projective_less
  FlexDiagnostics diagnostics;

  int weight_sum() const;
  int ordinary_count() const;
  int hyperflex_count() const;
};

class WeightSumMismatch : public Error {
 public:
  WeightSumMismatch(const std::string& what, FlexSet partial)
      : Error(ErrorKind::WeightSumMismatch, what), partial_(std::move(partial)) {}
  const FlexSet& partial() const { return partial_; }

 private:
  FlexSet partial_;
};

/// All flexes of a smooth plane quartic, each classified by contact order.
/// Throws Error(NotHomogeneous / NotQuartic) on bad input, Error(SingularPoint)
/// if a flex candidate is singular, WeightSumMismatch when the weights do
/// not add up to 24 after the tightened second pass.
FlexSet find_flexes(const MPoly& f, const FlexOptions& opts = {});

/// Weighted number of q-Weierstrass points on a genus-g curve.
int expected_count(int genus, int q);

/// The frame used by find_flexes when none is given (attempt = 0, 1, ...).
Mat3 generic_frame(int attempt);

}  // namespace flexkit

#endif  // FLEXKIT_GEOMETRY_HPP
