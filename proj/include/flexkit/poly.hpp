#ifndef FLEXKIT_POLY_HPP
#define FLEXKIT_POLY_HPP

#include <array>
#include <complex>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flexkit/linalg.hpp"

namespace flexkit {

enum class Axis { X = 0, Y = 1, Z = 2 };

char axis_name(Axis axis);

/// Parses `RE`, `REi`, `RE+IMi` or `RE-IMi` (no spaces). Throws Error(Parse).
Complex parse_complex(std::string_view text);
/// `(re+imi)` with round-trip precision.
std::string format_complex(Complex c);

/// Dense univariate polynomial, coeffs[k] multiplies x^k. Trailing exact
/// zeros are trimmed so that the leading coefficient is nonzero.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Complex> coeffs);

  static UPoly from_roots(std::span<const Complex> roots, Complex leading = 1.0);

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex coeff(int k) const;
  Complex leading() const;

  Complex operator()(Complex x) const;
  UPoly derivative() const;
  /// q(t) = p(at + t); coefficients of q are the Taylor coefficients at `at`.
  UPoly taylor_shift(Complex at) const;
  /// Drops leading coefficients with modulus <= rel * max modulus.
  UPoly trimmed(double rel) const;
  double max_coeff() const;

  friend UPoly operator+(const UPoly& p, const UPoly& q);
  friend UPoly operator-(const UPoly& p, const UPoly& q);
  friend UPoly operator*(const UPoly& p, const UPoly& q);
  friend UPoly operator*(Complex s, const UPoly& p);
  friend bool operator==(const UPoly& p, const UPoly& q) { return p.coeffs_ == q.coeffs_; }

  std::string to_string(char var = 'x') const;

 private:
  std::vector<Complex> coeffs_;
};

using Monomial = std::array<int, 3>;

/// Descending graded-lex: higher total degree first, then lexicographic
/// on (i, j, k) descending. Iteration and evaluation follow this order.
struct GradedLex {
  bool operator()(const Monomial& lhs, const Monomial& rhs) const;
};

/// Sparse polynomial in x, y, z with complex coefficients. Always held in
/// canonical form: terms with modulus below 1e-14 of the largest are dropped.
class MPoly {
 public:
  using Terms = std::map<Monomial, Complex, GradedLex>;

  MPoly() = default;
  explicit MPoly(Terms terms);

  static MPoly constant(Complex c);
  static MPoly variable(Axis axis);
  static MPoly monomial(Complex c, int i, int j, int k);
  /// F = x^4 + y^4 + z^4 + a x^2y^2 + b x^2z^2 + c y^2z^2
  static MPoly kuribayashi(Complex a, Complex b, Complex c);
  /// Accepts the to_string() grammar; coefficients may also be plain real
  /// literals and absent variables may be omitted (`1*x^4 + 1*y^4`).
  static MPoly parse(std::string_view text);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  int degree_in(Axis axis) const;
  bool is_homogeneous() const;
  Complex coeff(int i, int j, int k) const;
  /// Sum of coefficient moduli; bounds |p(v)| when max |v_i| <= 1.
  double coeff_norm() const;

  Complex operator()(Complex x, Complex y, Complex z) const;
  Complex operator()(const Vec3& v) const { return (*this)(v[0], v[1], v[2]); }

  MPoly partial(Axis axis) const;
  /// Replaces `axis` by a constant.
  MPoly substitute(Axis axis, Complex value) const;
  /// p(M v): linear change of coordinates.
  MPoly compose(const Mat3& m) const;
  /// Requires that only `axis` occurs; throws Error(Unsupported) otherwise.
  UPoly as_univariate(Axis axis) const;
  /// Coefficients of p viewed as a polynomial in `axis`, each a polynomial
  /// in the remaining variables.
  std::vector<MPoly> coefficients_in(Axis axis) const;

  friend MPoly operator+(const MPoly& p, const MPoly& q);
  friend MPoly operator-(const MPoly& p, const MPoly& q);
  friend MPoly operator-(const MPoly& p);
  friend MPoly operator*(const MPoly& p, const MPoly& q);
  friend MPoly operator*(Complex s, const MPoly& p);
  friend bool operator==(const MPoly& p, const MPoly& q) { return p.terms_ == q.terms_; }

  std::string to_string() const;

 private:
  void canonicalize();
  Terms terms_;
};

struct Pin {
  Axis axis;
  Complex value;
};

/// One pinned variable: a polynomial in the other two.
MPoly restrict(const MPoly& p, Pin pin);
/// Two pinned variables: a univariate polynomial in the remaining one.
UPoly restrict(const MPoly& p, Pin first, Pin second);

/// max |coeff difference| / max(1, max |coeff|); 0 for identical polynomials.
double distance(const MPoly& p, const MPoly& q);

}  // namespace flexkit

#endif  // FLEXKIT_POLY_HPP
