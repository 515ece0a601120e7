#include "flexkit/linalg.hpp"

#include <cmath>

#include "flexkit/error.hpp"

namespace flexkit {

Mat3 identity3() { return diag3(1.0, 1.0, 1.0); }

Mat3 diag3(Complex d0, Complex d1, Complex d2) {
  Mat3 m{};
  m[0][0] = d0;
  m[1][1] = d1;
  m[2][2] = d2;
  return m;
}

Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Complex s = 0.0;
      for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
      r[i][j] = s;
    }
  return r;
}

Vec3 operator*(const Mat3& m, const Vec3& v) {
  Vec3 r{};
  for (int i = 0; i < 3; ++i) r[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
  return r;
}

Complex det(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat3 inverse(const Mat3& m) {
  const Complex d = det(m);
  if (std::abs(d) == 0.0) throw Error(ErrorKind::Unsupported, "singular 3x3 matrix");
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      // cofactor of (j, i)
      const int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
      const int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      r[i][j] = (m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]) / d;
    }
  return r;
}

Complex bilinear(const Vec3& u, const Vec3& v) { return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]; }

Complex hdot(const Vec3& u, const Vec3& v) {
  return std::conj(u[0]) * v[0] + std::conj(u[1]) * v[1] + std::conj(u[2]) * v[2];
}

Vec3 cross(const Vec3& u, const Vec3& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

Vec3 conj(const Vec3& v) { return {std::conj(v[0]), std::conj(v[1]), std::conj(v[2])}; }

double norm(const Vec3& v) {
  return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
}

double max_abs(const Mat3& m) {
  double r = 0.0;
  for (const auto& row : m)
    for (const auto& x : row) r = std::max(r, std::abs(x));
  return r;
}

}  // namespace flexkit
