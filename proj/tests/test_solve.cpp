#include <cmath>
#include <numbers>

#include "doctest.h"
#include "flexkit/solve.hpp"
#include "test_util.hpp"

using namespace flexkit;
using flexkit::testing::uniform_complex;

namespace {

double rel_err(Complex got, Complex want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

// remainder of synthetic division by (x - r)
Complex synthetic_remainder(const std::vector<Complex>& c, Complex r, std::vector<Complex>* quotient) {
  std::vector<Complex> q(c.size() - 1);
  Complex acc = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) {
    acc = acc * r + c[k];
    if (k > 0) q[k - 1] = acc;
  }
  if (quotient) *quotient = q;
  return acc;
}

std::vector<Complex> well_separated_roots(std::mt19937_64& rng, int n) {
  std::vector<Complex> roots;
  while (static_cast<int>(roots.size()) < n) {
    const Complex z = uniform_complex(rng, -2.0, 2.0);
    bool ok = true;
    for (const auto& r : roots) ok = ok && std::abs(r - z) > 0.3;
    if (ok) roots.push_back(z);
  }
  return roots;
}

}  // namespace

TEST_CASE("univariate resultant") {
  CHECK(resultant(UPoly({-1.0, 1.0}), UPoly({1.0, 1.0})) == Complex(2.0));
  CHECK_THROWS_AS(resultant(UPoly(), UPoly({1.0, 1.0})), Error);

  std::mt19937_64 rng(101);
  for (int n = 0; n < 30; ++n) {
    const int dp = 1 + n % 5, dq = 1 + (n / 5) % 4;
    std::vector<Complex> pc(dp + 1), qc(dq + 1);
    for (auto& c : pc) c = uniform_complex(rng, -1, 1);
    for (auto& c : qc) c = uniform_complex(rng, -1, 1);
    const UPoly p(pc), q(qc);
    const double sign = (dp * dq) % 2 == 0 ? 1.0 : -1.0;
    CHECK(rel_err(resultant(p, q), sign * resultant(q, p)) < 1e-10);
  }
}

TEST_CASE("resultant equals product of evaluations at roots") {
  std::mt19937_64 rng(103);
  for (int n = 0; n < 30; ++n) {
    const int dp = 1 + n % 6, dq = 1 + (n / 6) % 6;
    const auto pr = well_separated_roots(rng, dp);
    const auto qr = well_separated_roots(rng, dq);
    const UPoly p = UPoly::from_roots(pr), q = UPoly::from_roots(qr);
    // Res(q, p) = prod p(beta_j) over roots of monic q
    Complex prod = 1.0;
    for (const auto& b : qr) prod *= p(b);
    const double sign = (dp * dq) % 2 == 0 ? 1.0 : -1.0;
    CHECK(rel_err(resultant(p, q), sign * prod) < 1e-8);
    CHECK(rel_err(resultant(q, p), prod) < 1e-8);
  }
}

// On the roots of y^4 + c y^2 + 1 the second Hessian factor reduces to
// 3 (4 - c^2) y^2, so Res(H(0,y,1), F(0,y,1)) = 72^4 P1^2 (c^2 - 4)^4.
TEST_CASE("restricted Hessian resultant against its derived closed form") {
  std::mt19937_64 rng(107);
  for (int n = 0; n < 20; ++n) {
    const Complex a = uniform_complex(rng, -4, 4), b = uniform_complex(rng, -4, 4), c = uniform_complex(rng, -4, 4);
    // F(0,y,1) = y^4 + c y^2 + 1 ; H(0,y,1) = 24 (b + a y^2)((12 - c^2) y^2 + 2c (1 + y^4))
    const UPoly f({1.0, 0.0, c, 0.0, 1.0});
    const UPoly h = 24.0 * (UPoly({b, 0.0, a}) * UPoly({2.0 * c, 0.0, 12.0 - c * c, 0.0, 2.0 * c}));
    const Complex p1 = a * a + b * b - a * b * c;
    const Complex closed = 26873856.0 * p1 * p1 * std::pow(c * c - 4.0, 4);
    CHECK(rel_err(resultant_formal(h, 6, f, 4), closed) < 1e-9);
  }
}

TEST_CASE("Sylvester matrix shape") {
  const std::vector<Complex> p{1.0, 2.0, 3.0}, q{4.0, 5.0};
  const SylvesterMatrix s(p, 2, q, 1);
  CHECK(s.dimension() == 3);
  CHECK(s.at(0, 0) == Complex(3.0));
  CHECK(s.at(0, 2) == Complex(1.0));
  CHECK(s.at(1, 0) == Complex(5.0));
  CHECK(s.at(2, 1) == Complex(5.0));
  CHECK(s.at(2, 2) == Complex(4.0));
}

TEST_CASE("bivariate resultant of two lines") {
  const MPoly x = MPoly::variable(Axis::X), y = MPoly::variable(Axis::Y);
  const UPoly r = resultant_bivariate(y - x, y + x, Axis::Y);
  REQUIRE(r.degree() == 1);
  CHECK(std::abs(std::abs(r.coeff(1)) - 2.0) < 1e-12);
  CHECK(std::abs(r.coeff(0)) < 1e-12);
  // x^2 - y and x + y - 2 meet at x = 1 and x = -2
  const UPoly e = resultant_bivariate(x * x - y, x + y - MPoly::constant(2.0), Axis::Y);
  const RootSet rs = all_roots(e);
  REQUIRE(rs.roots.size() == 2);
  CHECK(std::abs(rs.roots[0].value - Complex(-2.0)) < 1e-10);
  CHECK(std::abs(rs.roots[1].value - Complex(1.0)) < 1e-10);
  CHECK_THROWS_AS(resultant_bivariate(x * y - MPoly::constant(1.0), x * y + x, Axis::Y), Error);
}

TEST_CASE("all_roots: cyclotomic and multiplicities") {
  const RootSet r = all_roots(UPoly({1.0, 0.0, 0.0, 0.0, 1.0}));
  REQUIRE(r.roots.size() == 4);
  for (const auto& c : r.roots) {
    CHECK(c.multiplicity == 1);
    CHECK(std::abs(std::pow(c.value, 4) + 1.0) < 1e-12);
    CHECK(std::abs(std::abs(c.value) - 1.0) < 1e-12);
  }

  // (x-2)^2 (x+1); oracle: synthetic division confirms the factor structure
  const std::vector<Complex> coeffs{4.0, 0.0, -3.0, 1.0};
  std::vector<Complex> q1, q2;
  REQUIRE(synthetic_remainder(coeffs, 2.0, &q1) == Complex(0.0));
  REQUIRE(synthetic_remainder(q1, 2.0, &q2) == Complex(0.0));
  REQUIRE(synthetic_remainder(q2, -1.0, nullptr) == Complex(0.0));
  const RootSet m = all_roots(UPoly(coeffs));
  REQUIRE(m.roots.size() == 2);
  CHECK(std::abs(m.roots[0].value + 1.0) < 1e-10);
  CHECK(m.roots[0].multiplicity == 1);
  CHECK(std::abs(m.roots[1].value - 2.0) < 1e-7);
  CHECK(m.roots[1].multiplicity == 2);
  CHECK(m.total_multiplicity() == 3);

  // exact zero roots are split off
  const RootSet z = all_roots(UPoly({0.0, 0.0, 0.0, -1.0, 1.0}));
  CHECK(z.total_multiplicity() == 4);
  CHECK(z.roots.size() == 2);
}

TEST_CASE("all_roots: slice quartic roots close under negation and inversion") {
  for (Complex c : {Complex(4.0), Complex(-3.0, 1.0), Complex(0.5, 2.5), Complex(3.0 * std::sqrt(0.4))}) {
    const UPoly p({1.0, 0.0, c, 0.0, 1.0});
    const RootSet r = all_roots(p);
    REQUIRE(r.roots.size() == 4);
    for (const auto& root : r.roots) {
      bool neg = false, inv = false;
      for (const auto& other : r.roots) {
        neg = neg || std::abs(other.value + root.value) < 1e-10;
        inv = inv || std::abs(other.value - 1.0 / root.value) < 1e-10;
      }
      CHECK(neg);
      CHECK(inv);
    }
  }
}

TEST_CASE("all_roots: multiplicity sum, residuals, Vieta on random polynomials") {
  std::mt19937_64 rng(109);
  for (int n = 0; n < 40; ++n) {
    const int deg = 1 + n % 24;
    const auto roots = well_separated_roots(rng, deg);
    const Complex lead = uniform_complex(rng, 0.5, 2.0);
    const UPoly p = UPoly::from_roots(roots, lead);
    const RootSet rs = all_roots(p);
    CHECK(rs.total_multiplicity() == deg);
    CHECK(rs.max_residual() <= 1e-8);
    Complex prod = 1.0;
    for (const auto& r : rs.roots) prod *= std::pow(r.value, r.multiplicity);
    const Complex vieta = (deg % 2 == 0 ? 1.0 : -1.0) * p.coeff(0) / p.leading();
    CHECK(rel_err(prod, vieta) < 1e-8);
    for (std::size_t k = 1; k < rs.roots.size(); ++k)
      CHECK_FALSE(complex_less(rs.roots[k].value, rs.roots[k - 1].value));
  }
}

TEST_CASE("all_roots: non-convergence reports the best iterate") {
  const std::vector<Complex> roots{1.0, 2.0, 3.0, Complex(0.0, 4.0), -5.0, 6.0};
  RootOptions opts;
  opts.max_iters = 1;
  opts.residual_tol = 1e-15;
  try {
    all_roots(UPoly::from_roots(roots), opts);
    FAIL("expected NonConvergence");
  } catch (const NonConvergence& e) {
    CHECK(e.kind() == ErrorKind::NonConvergence);
    CHECK(e.best().raw.size() == roots.size());
  }
}

TEST_CASE("vanishing order") {
  const UPoly t3 = UPoly({0.0, 0.0, 0.0, -1.0, 1.0});  // t^3 (t - 1)
  CHECK(vanishing_order(t3, 0.0, 1e-8) == 3);
  CHECK(vanishing_order(t3, 1.0, 1e-8) == 1);
  CHECK(vanishing_order(t3, 0.5, 1e-8) == 0);
  CHECK(vanishing_order(UPoly({0.0, 1e-4, 1.0}), 0.0, 1e-6) == 1);
  CHECK(vanishing_order(UPoly({0.0, 1e-9, 1.0}), 0.0, 1e-6) == 2);
  CHECK_THROWS_AS(vanishing_order(UPoly(), 0.0, 1e-6), Error);
}
