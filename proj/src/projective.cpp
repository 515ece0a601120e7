#include "flexkit/projective.hpp"

#include <cmath>

#include "flexkit/error.hpp"

namespace flexkit {

ProjPoint::ProjPoint(const Vec3& coords) {
  int best = -1;
  double m = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double a = std::abs(coords[static_cast<std::size_t>(i)]);
    if (a > 0.0 && a >= m) {
      m = a;
      best = i;
    }
  }
  if (best < 0 || !std::isfinite(m)) throw Error(ErrorKind::Unsupported, "projective point needs a finite nonzero coordinate");
  const Complex s = coords[static_cast<std::size_t>(best)];
  for (int i = 0; i < 3; ++i) coords_[static_cast<std::size_t>(i)] = coords[static_cast<std::size_t>(i)] / s;
  coords_[static_cast<std::size_t>(best)] = 1.0;
}

Vec3 ProjPoint::unit() const {
  const double n = norm(coords_);
  return {coords_[0] / n, coords_[1] / n, coords_[2] / n};
}

double chordal_distance(const ProjPoint& p, const ProjPoint& q) {
  // Lagrange identity: |u|^2|v|^2 - |<u,v>|^2 = sum_{i<j} |u_i v_j - u_j v_i|^2
  const Vec3& u = p.coords();
  const Vec3& v = q.coords();
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) s += std::norm(u[i] * v[j] - u[j] * v[i]);
  return std::sqrt(s) / (norm(u) * norm(v));
}

bool projective_less(const ProjPoint& p, const ProjPoint& q) {
  // compare on a 1e-9 grid so rounding noise in exact zeros does not reorder output
  auto key = [](double v) { return std::llround(v * 1e9); };
  for (int i = 0; i < 3; ++i) {
    const auto pr = key(p[i].real()), qr = key(q[i].real());
    if (pr != qr) return pr < qr;
    const auto pi = key(p[i].imag()), qi = key(q[i].imag());
    if (pi != qi) return pi < qi;
  }
  return false;
}

ProjPoint operator*(const Mat3& m, const ProjPoint& p) { return ProjPoint(m * p.coords()); }

}  // namespace flexkit
