#ifndef FLEXKIT_LINALG_HPP
#define FLEXKIT_LINALG_HPP

#include <array>
#include <complex>

namespace flexkit {

using Complex = std::complex<double>;
using Vec3 = std::array<Complex, 3>;
using Mat3 = std::array<Vec3, 3>;  // row-major

Mat3 identity3();
Mat3 diag3(Complex d0, Complex d1, Complex d2);
Mat3 operator*(const Mat3& a, const Mat3& b);
Vec3 operator*(const Mat3& m, const Vec3& v);
Complex det(const Mat3& m);
Mat3 inverse(const Mat3& m);

/// Bilinear product sum(u_i v_i), the pairing of a line with a point.
Complex bilinear(const Vec3& u, const Vec3& v);
/// Hermitian product sum(conj(u_i) v_i).
Complex hdot(const Vec3& u, const Vec3& v);
Vec3 cross(const Vec3& u, const Vec3& v);
Vec3 conj(const Vec3& v);
double norm(const Vec3& v);
double max_abs(const Mat3& m);

}  // namespace flexkit

#endif  // FLEXKIT_LINALG_HPP
