#ifndef FLEXKIT_PROJECTIVE_HPP
#define FLEXKIT_PROJECTIVE_HPP

#include "flexkit/linalg.hpp"

namespace flexkit {

/// Point of the complex projective plane, stored with its largest-modulus
/// coordinate scaled to exactly 1 (the last such index wins ties).
class ProjPoint {
 public:
  explicit ProjPoint(const Vec3& coords);
  ProjPoint(Complex x, Complex y, Complex z) : ProjPoint(Vec3{x, y, z}) {}

  const Vec3& coords() const { return coords_; }
  Complex operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
  /// Unit-norm representative.
  Vec3 unit() const;

 private:
  Vec3 coords_;
};

/// Sine of the angle between the two lines through the origin.
double chordal_distance(const ProjPoint& p, const ProjPoint& q);
inline bool same_point(const ProjPoint& p, const ProjPoint& q, double tol) {
  return chordal_distance(p, q) <= tol;
}
/// Lexicographic on (real, imag) of each normalized coordinate.
bool projective_less(const ProjPoint& p, const ProjPoint& q);

ProjPoint operator*(const Mat3& m, const ProjPoint& p);

}  // namespace flexkit

#endif  // FLEXKIT_PROJECTIVE_HPP
