#include <cmath>
#include <numbers>

#include "doctest.h"
#include "flexkit/geometry.hpp"
#include "test_util.hpp"

using namespace flexkit;
using flexkit::testing::random_quartic;
using flexkit::testing::uniform_complex;

namespace {

const double kSqrt3 = std::numbers::sqrt3;
const double kSqrt5 = std::sqrt(5.0);

// a point of F found by solving for y over a random (x, z)
ProjPoint random_point_on(const MPoly& f, std::mt19937_64& rng) {
  const Complex x = uniform_complex(rng, -1, 1), z = uniform_complex(rng, -1, 1);
  const UPoly fy = restrict(f, Pin{Axis::X, x}, Pin{Axis::Z, z});
  const RootSet rs = all_roots(fy);
  return ProjPoint(x, rs.raw.front(), z);
}

bool contains(const FlexSet& s, const ProjPoint& p, double tol) {
  for (const auto& r : s.flexes)
    if (same_point(r.point, p, tol)) return true;
  return false;
}

}  // namespace

TEST_CASE("hessian of the Fermat quartic") {
  const MPoly f = MPoly::parse("x^4 + y^4 + z^4");
  CHECK(hessian(f) == MPoly::monomial(1728.0, 2, 2, 2));
  CHECK(hessian(MPoly::kuribayashi(3, 3, 0)).degree() == 6);
  CHECK_THROWS_AS(hessian(MPoly::parse("x^2 + y")), Error);
}

TEST_CASE("hessian covariance under a linear change of frame") {
  std::mt19937_64 rng(211);
  for (int n = 0; n < 10; ++n) {
    const MPoly f = random_quartic(rng);
    Mat3 t;
    for (auto& row : t)
      for (auto& e : row) e = uniform_complex(rng, -1, 1);
    const MPoly lhs = hessian(f.compose(t));
    const MPoly h = hessian(f);
    const Complex d2 = det(t) * det(t);
    for (int k = 0; k < 5; ++k) {
      const Vec3 v{uniform_complex(rng, -1, 1), uniform_complex(rng, -1, 1), uniform_complex(rng, -1, 1)};
      const Complex want = d2 * h(t * v);
      CHECK(std::abs(lhs(v) - want) <= 1e-9 * std::max(1.0, std::abs(want)) * lhs.coeff_norm());
    }
  }
}

TEST_CASE("tangent line at a slice hyperflex") {
  const double b = 3, c = 4;
  const Complex s = std::sqrt(Complex(c * c - 4));
  const Complex a = 0.5 * (b * c - b * s);
  const Complex beta = std::sqrt(-c - s) / std::sqrt(2.0);
  const MPoly f = MPoly::kuribayashi(a, b, c);
  const ProjPoint p(0.0, beta, 1.0);
  REQUIRE(relative_value(f, p) < 1e-14);

  const TangentLine line = tangent_at(f, p);
  // proportional to y - beta z
  CHECK(std::abs(line.coeffs[0]) < 1e-12);
  CHECK(std::abs(line.coeffs[2] / line.coeffs[1] + beta) < 1e-12);
  CHECK(std::abs(line(p.unit())) < 1e-12);
  CHECK(std::abs(line(line.direction.unit())) < 1e-12);
  CHECK(contact_order(f, line) == 4);
}

TEST_CASE("tangent line of the Fermat quartic") {
  const MPoly f = MPoly::parse("x^4 + y^4 + z^4");
  const Complex w = std::polar(1.0, std::numbers::pi / 4);
  const ProjPoint p(0.0, w, 1.0);
  const TangentLine line = tangent_at(f, p);
  const Complex ratio = line.coeffs[2] / line.coeffs[1];
  CHECK(std::abs(ratio - 1.0 / (w * w * w)) < 1e-12);
  CHECK_THROWS_AS(tangent_at(f, ProjPoint(1.0, 1.0, 1.0)), Error);
}

TEST_CASE("tangent line of a singular curve") {
  // a node at [0:0:1]
  const MPoly f = MPoly::parse("x^4 + y^4 + x^2*z^2 - y^2*z^2");
  try {
    tangent_at(f, ProjPoint(0.0, 0.0, 1.0));
    FAIL("expected SingularPoint");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularPoint);
  }
}

TEST_CASE("tangent lines vanish at their base point") {
  std::mt19937_64 rng(223);
  for (int n = 0; n < 100; ++n) {
    const MPoly f = random_quartic(rng);
    const ProjPoint p = random_point_on(f, rng);
    const TangentLine line = tangent_at(f, p);
    CHECK(std::abs(line(p.unit())) < 1e-12);
  }
}

TEST_CASE("Bezout count along tangent lines") {
  std::mt19937_64 rng(227);
  for (int n = 0; n < 50; ++n) {
    const MPoly f = random_quartic(rng);
    const ProjPoint p = random_point_on(f, rng);
    const TangentLine line = tangent_at(f, p);
    const LineIntersections li = line_intersections(f, line);
    CHECK(li.contact == 2);
    CHECK(li.near_base == li.contact);
    CHECK(li.total() == 4);
  }
}

TEST_CASE("contact order at a generic point is 2") {
  std::mt19937_64 rng(229);
  for (int n = 0; n < 20; ++n) {
    const MPoly f = random_quartic(rng);
    CHECK(contact_order(f, tangent_at(f, random_point_on(f, rng))) == 2);
  }
}

TEST_CASE("flex records") {
  const ProjPoint p(0.0, 0.0, 1.0);
  const FlexRecord o = FlexRecord::from_contact(p, 3);
  CHECK(o.weight == 1);
  CHECK(o.gap_sequence == std::array{1, 2, 4});
  const FlexRecord h = FlexRecord::from_contact(p, 4);
  CHECK(h.weight == 2);
  CHECK(h.flex_order == 2);
  CHECK(h.gap_sequence == std::array{1, 2, 5});
  CHECK(h.is_hyperflex());
  CHECK_THROWS_AS(FlexRecord::from_contact(p, 2), Error);
}

TEST_CASE("expected count") {
  CHECK(expected_count(3, 1) == 24);
  CHECK(expected_count(2, 1) == 6);
  CHECK(expected_count(3, 2) == 108);
  CHECK_THROWS_AS(expected_count(1, 1), Error);
}

TEST_CASE("flexes of the quartic with a = b = 3, c = 0") {
  const FlexSet s = find_flexes(MPoly::kuribayashi(3, 3, 0));
  CHECK(s.flexes.size() == 24);
  CHECK(s.ordinary_count() == 24);
  CHECK(s.weight_sum() == 24);
  CHECK(contains(s, ProjPoint(Complex(0, -0.581718), -0.33119, 1.0), 1e-5));
  CHECK(contains(s, ProjPoint(Complex(0, -1.75642), -3.01936, 1.0), 1e-5));
  for (std::size_t k = 0; k < s.flexes.size(); ++k) CHECK(s.diagnostics.root_counts[k] == s.flexes[k].weight);
}

TEST_CASE("identity frame eliminant reproduces the x-coordinates") {
  const MPoly f = MPoly::kuribayashi(3, 3, 0);
  const UPoly r = resultant_bivariate(restrict(f, Pin{Axis::Z, 1.0}), restrict(hessian(f), Pin{Axis::Z, 1.0}), Axis::Y);
  CHECK(r.degree() == 24);
  const RootSet xs = all_roots(r);
  bool seen = false;
  for (const Complex x : xs.raw) seen = seen || std::abs(x - Complex(0, -0.581718)) < 1e-5;
  CHECK(seen);
}

TEST_CASE("hyperflex-only and mixed flex sets") {
  const FlexSet h = find_flexes(MPoly::kuribayashi(1.2, 6 / kSqrt5, 6 / kSqrt5));
  CHECK(h.flexes.size() == 12);
  CHECK(h.hyperflex_count() == 12);

  const FlexSet m = find_flexes(MPoly::kuribayashi(3, 6 - 3 * kSqrt3, 4));
  CHECK(m.flexes.size() == 22);
  CHECK(m.ordinary_count() == 20);
  CHECK(m.hyperflex_count() == 2);
  CHECK(contains(m, ProjPoint(0.0, Complex(0, 0.517638), 1.0), 1e-5));

  const FlexSet fermat = find_flexes(MPoly::parse("x^4 + y^4 + z^4"));
  CHECK(fermat.hyperflex_count() == 12);
  for (const auto& r : fermat.flexes) {
    int zeros = 0;
    for (int i = 0; i < 3; ++i) zeros += std::abs(r.point[i]) < 1e-12;
    CHECK(zeros == 1);
  }
}

TEST_CASE("flex criterion holds on every record") {
  std::mt19937_64 rng(233);
  for (int n = 0; n < 20; ++n) {
    const MPoly f = MPoly::kuribayashi(uniform_complex(rng, -4, 4), uniform_complex(rng, -4, 4),
                                       uniform_complex(rng, -4, 4));
    const FlexSet s = find_flexes(f);
    CHECK(s.weight_sum() == 24);
    const MPoly h = hessian(f);
    for (const auto& r : s.flexes) {
      CHECK(relative_value(f, r.point) <= 1e-8);
      CHECK(relative_value(h, r.point) <= 1e-6);
      const int k = contact_order(f, tangent_at(f, r.point));
      CHECK(k >= 3);
      CHECK(k <= 4);
    }
  }
}

TEST_CASE("flex sets of general quartics") {
  std::mt19937_64 rng(239);
  for (int n = 0; n < 10; ++n) {
    const FlexSet s = find_flexes(random_quartic(rng));
    CHECK(s.weight_sum() == 24);
    CHECK(s.ordinary_count() == 24);
  }
}

TEST_CASE("chart independence") {
  const MPoly f = MPoly::kuribayashi(3, 3, 0);
  FlexOptions plain;
  plain.frame = identity3();
  FlexOptions swapped;
  swapped.frame = Mat3{{{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}};
  const FlexSet g = find_flexes(f);
  for (const FlexOptions& opts : {plain, swapped}) {
    const FlexSet s = find_flexes(f, opts);
    REQUIRE(s.flexes.size() == g.flexes.size());
    for (const auto& r : s.flexes) CHECK(contains(g, r.point, Tolerances{}.point_merge));
  }
}

TEST_CASE("find_flexes rejects bad input") {
  CHECK_THROWS_AS(find_flexes(MPoly::parse("x^3 + y^3 + z^3")), Error);
  CHECK_THROWS_AS(find_flexes(MPoly::parse("x^4 + y + z^4")), Error);
  try {
    find_flexes(MPoly::kuribayashi(1, 2, 3));
    FAIL("expected SingularPoint");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularPoint);
  }
}

TEST_CASE("generic frames are unitary and reproducible") {
  for (int k = 0; k < 3; ++k) {
    const Mat3 t = generic_frame(k);
    CHECK(t == generic_frame(k));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Complex s = 0.0;
        for (int r = 0; r < 3; ++r) s += std::conj(t[r][i]) * t[r][j];
        CHECK(std::abs(s - (i == j ? 1.0 : 0.0)) < 1e-14);
      }
  }
}
