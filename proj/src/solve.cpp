#include "flexkit/solve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace flexkit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kNodeRadius = 1.3;
constexpr double kStepTol = 1e-13;

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> parent;
};

double abs_poly_bound(const UPoly& p, double r) {
  double acc = 0.0;
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

}  // namespace

bool complex_less(Complex lhs, Complex rhs) {
  if (lhs.real() != rhs.real()) return lhs.real() < rhs.real();
  return lhs.imag() < rhs.imag();
}

// ---------------------------------------------------------------- Sylvester

SylvesterMatrix::SylvesterMatrix(std::span<const Complex> p, int deg_p, std::span<const Complex> q,
                                 int deg_q)
    : dim_(deg_p + deg_q), entries_(static_cast<std::size_t>(dim_ * dim_), 0.0) {
  auto coeff = [](std::span<const Complex> c, int k) {
    return k >= 0 && k < static_cast<int>(c.size()) ? c[static_cast<std::size_t>(k)] : Complex(0.0);
  };
  for (int r = 0; r < deg_q; ++r)
    for (int k = 0; k <= deg_p; ++k)
      entries_[static_cast<std::size_t>(r * dim_ + r + k)] = coeff(p, deg_p - k);
  for (int r = 0; r < deg_p; ++r)
    for (int k = 0; k <= deg_q; ++k)
      entries_[static_cast<std::size_t>((deg_q + r) * dim_ + r + k)] = coeff(q, deg_q - k);
}

Complex SylvesterMatrix::determinant() const {
  if (dim_ == 0) return 1.0;
  return lu_determinant(entries_, dim_);
}

Complex lu_determinant(std::vector<Complex> a, int n) {
  Complex det = 1.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    double best = std::abs(a[static_cast<std::size_t>(col * n + col)]);
    for (int r = col + 1; r < n; ++r) {
      const double v = std::abs(a[static_cast<std::size_t>(r * n + col)]);
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best == 0.0) return 0.0;
    if (pivot != col) {
      for (int k = 0; k < n; ++k)
        std::swap(a[static_cast<std::size_t>(col * n + k)], a[static_cast<std::size_t>(pivot * n + k)]);
      det = -det;
    }
    const Complex d = a[static_cast<std::size_t>(col * n + col)];
    det *= d;
    for (int r = col + 1; r < n; ++r) {
      const Complex f = a[static_cast<std::size_t>(r * n + col)] / d;
      if (f == Complex(0.0)) continue;
      for (int k = col + 1; k < n; ++k)
        a[static_cast<std::size_t>(r * n + k)] -= f * a[static_cast<std::size_t>(col * n + k)];
    }
  }
  return det;
}

Complex resultant(const UPoly& p, const UPoly& q) {
  if (p.is_zero() || q.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "resultant of zero polynomial");
  return resultant_formal(p, p.degree(), q, q.degree());
}

Complex resultant_formal(const UPoly& p, int deg_p, const UPoly& q, int deg_q) {
  if (deg_p < p.degree() || deg_q < q.degree())
    throw Error(ErrorKind::Unsupported, "formal degree below actual degree");
  return SylvesterMatrix(p.coeffs(), deg_p, q.coeffs(), deg_q).determinant();
}

UPoly resultant_bivariate(const MPoly& p, const MPoly& q, Axis eliminate) {
  if (p.is_zero() || q.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "resultant of zero polynomial");
  const int e = static_cast<int>(eliminate);
  // surviving variable: the other axis actually present
  int s = -1;
  for (const MPoly* f : {&p, &q})
    for (const auto& [m, c] : f->terms())
      for (int k = 0; k < 3; ++k)
        if (k != e && m[k] > 0) {
          if (s >= 0 && s != k)
            throw Error(ErrorKind::Unsupported, "resultant_bivariate needs polynomials in two variables");
          s = k;
        }
  if (s < 0) s = (e + 1) % 3;

  const int m = p.degree_in(eliminate);
  const int n = q.degree_in(eliminate);
  if (m < 1 || n < 1)
    throw Error(ErrorKind::Unsupported, "both inputs need positive degree in the eliminated variable");
  const auto pc = p.coefficients_in(eliminate);
  const auto qc = q.coefficients_in(eliminate);
  if (pc.back().degree() > 0 && qc.back().degree() > 0)
    throw Error(ErrorKind::DegenerateLeadingCoefficient,
                std::string("no input has a constant leading coefficient in ") + axis_name(eliminate));

  const int bound = p.degree() * q.degree();
  const int nodes = bound + 1;
  std::vector<Complex> values(static_cast<std::size_t>(nodes));
  std::vector<Complex> pv(static_cast<std::size_t>(m + 1)), qv(static_cast<std::size_t>(n + 1));
  double vmax = 0.0;
  for (int j = 0; j < nodes; ++j) {
    const Complex node = std::polar(kNodeRadius, 2.0 * std::numbers::pi * j / nodes);
    Vec3 v{0.0, 0.0, 0.0};
    v[static_cast<std::size_t>(s)] = node;
    for (int k = 0; k <= m; ++k) pv[static_cast<std::size_t>(k)] = pc[static_cast<std::size_t>(k)](v);
    for (int k = 0; k <= n; ++k) qv[static_cast<std::size_t>(k)] = qc[static_cast<std::size_t>(k)](v);
    values[static_cast<std::size_t>(j)] = SylvesterMatrix(pv, m, qv, n).determinant();
    vmax = std::max(vmax, std::abs(values[static_cast<std::size_t>(j)]));
  }

  std::vector<Complex> coeffs(static_cast<std::size_t>(nodes), 0.0);
  for (int k = 0; k < nodes; ++k) {
    Complex acc = 0.0;
    for (int j = 0; j < nodes; ++j)
      acc += values[static_cast<std::size_t>(j)] * std::polar(1.0, -2.0 * std::numbers::pi * j * k / nodes);
    coeffs[static_cast<std::size_t>(k)] = acc / (static_cast<double>(nodes) * std::pow(kNodeRadius, k));
  }
  // interpolation noise on coefficient k is about eps * vmax / r^k
  while (!coeffs.empty() &&
         std::abs(coeffs.back()) * std::pow(kNodeRadius, static_cast<double>(coeffs.size() - 1)) <=
             1e-12 * vmax)
    coeffs.pop_back();
  return UPoly(std::move(coeffs));
}

// ---------------------------------------------------------------- roots

int RootSet::total_multiplicity() const {
  int s = 0;
  for (const auto& r : roots) s += r.multiplicity;
  return s;
}

double RootSet::max_residual() const {
  double m = 0.0;
  for (double r : raw_residuals) m = std::max(m, r);
  return m;
}

double relative_residual(const UPoly& p, Complex z) {
  const double bound = abs_poly_bound(p, std::abs(z));
  if (bound == 0.0) return 0.0;
  return std::abs(p(z)) / bound;
}

RootSet all_roots(const UPoly& p, const RootOptions& opts) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "all_roots of zero polynomial");
  if (p.degree() < 1) throw Error(ErrorKind::Unsupported, "all_roots needs degree >= 1");

  // exact roots at the origin
  const auto& c = p.coeffs();
  std::size_t zeros = 0;
  while (c[zeros] == Complex(0.0)) ++zeros;
  const UPoly core(std::vector<Complex>(c.begin() + static_cast<std::ptrdiff_t>(zeros), c.end()));
  const UPoly dcore = core.derivative();
  const int n = core.degree();

  std::vector<Complex> z(static_cast<std::size_t>(n));
  int iterations = 0;
  if (n > 0) {
    const Complex lead = core.leading();
    double cauchy = 0.0;
    for (int k = 0; k < n; ++k) cauchy = std::max(cauchy, std::abs(core.coeff(k) / lead));
    cauchy += 1.0;
    for (int k = 0; k < n; ++k)
      z[static_cast<std::size_t>(k)] =
          std::polar(cauchy * (1.0 + 0.01 * k / n), 2.0 * std::numbers::pi * k / n + 0.4);

    std::vector<bool> done(static_cast<std::size_t>(n), false);
    for (; iterations < opts.max_iters; ++iterations) {
      bool all_done = true;
      for (int i = 0; i < n; ++i) {
        auto& zi = z[static_cast<std::size_t>(i)];
        if (done[static_cast<std::size_t>(i)]) continue;
        const Complex fz = core(zi);
        const double noise = 4.0 * kEps * abs_poly_bound(core, std::abs(zi));
        if (std::abs(fz) <= noise) {
          done[static_cast<std::size_t>(i)] = true;
          continue;
        }
        const Complex ratio = fz / dcore(zi);
        Complex sum = 0.0;
        for (int j = 0; j < n; ++j)
          if (j != i) sum += 1.0 / (zi - z[static_cast<std::size_t>(j)]);
        const Complex w = ratio / (1.0 - ratio * sum);
        if (std::isfinite(w.real()) && std::isfinite(w.imag())) zi -= w;
        if (std::abs(w) < kStepTol * std::max(1.0, std::abs(zi)))
          done[static_cast<std::size_t>(i)] = true;
        else
          all_done = false;
      }
      if (all_done) break;
    }

    // Newton polish, keeping a step only when it lowers the residual
    for (auto& zi : z) {
      for (int step = 0; step < 3; ++step) {
        const Complex d = dcore(zi);
        if (d == Complex(0.0)) break;
        const Complex cand = zi - core(zi) / d;
        if (std::abs(core(cand)) < std::abs(core(zi)))
          zi = cand;
        else
          break;
      }
    }
  }
  z.insert(z.end(), zeros, Complex(0.0));

  RootSet out;
  out.iterations = iterations;
  std::sort(z.begin(), z.end(), complex_less);
  out.raw = z;
  for (const auto& zi : z) out.raw_residuals.push_back(relative_residual(p, zi));

  // transitive clustering
  double scale = 0.0;
  for (const auto& zi : z) scale += std::abs(zi);
  scale = std::max(scale / static_cast<double>(z.size()), 1e-300);
  UnionFind uf(z.size());
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      const double s = std::max({std::abs(z[i]), std::abs(z[j]), scale});
      if (std::abs(z[i] - z[j]) <= opts.cluster_tol * s) uf.unite(i, j);
    }
  std::vector<std::vector<std::size_t>> groups(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) groups[uf.find(i)].push_back(i);
  for (const auto& g : groups) {
    if (g.empty()) continue;
    RootCluster rc;
    Complex sum = 0.0;
    for (auto i : g) sum += z[i];
    rc.value = sum / static_cast<double>(g.size());
    rc.multiplicity = static_cast<int>(g.size());
    for (auto i : g)
      for (auto j : g) rc.diameter = std::max(rc.diameter, std::abs(z[i] - z[j]));
    rc.residual = relative_residual(p, rc.value);
    out.roots.push_back(rc);
  }
  std::sort(out.roots.begin(), out.roots.end(),
            [](const RootCluster& a, const RootCluster& b) { return complex_less(a.value, b.value); });

  if (out.max_residual() > opts.residual_tol)
    throw NonConvergence("root residual " + std::to_string(out.max_residual()) + " above tolerance after " +
                             std::to_string(iterations) + " iterations",
                         out);
  return out;
}

int vanishing_order(const UPoly& p, Complex at, double tol) {
  const UPoly taylor = p.taylor_shift(at);
  const double scale = taylor.max_coeff();
  if (scale == 0.0)
    throw Error(ErrorKind::AllCoefficientsBelowTolerance, "polynomial vanishes identically");
  for (int k = 0; k <= taylor.degree(); ++k)
    if (std::abs(taylor.coeff(k)) > tol * scale) return k;
  throw Error(ErrorKind::AllCoefficientsBelowTolerance, "no Taylor coefficient above tolerance");
}

}  // namespace flexkit
