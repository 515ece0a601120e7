#ifndef FLEXKIT_SOLVE_HPP
#define FLEXKIT_SOLVE_HPP

#include <complex>
#include <span>
#include <vector>

#include "flexkit/error.hpp"
#include "flexkit/poly.hpp"

namespace flexkit {

/// Square Sylvester matrix of two coefficient vectors (index = exponent).
/// The first deg_q rows carry p shifted one column per row, the remaining
/// deg_p rows carry q. Formal degrees may exceed the actual ones (leading
/// zero coefficients), which is how resultants of degenerate restrictions
/// are taken.
class SylvesterMatrix {
 public:
  SylvesterMatrix(std::span<const Complex> p, int deg_p, std::span<const Complex> q, int deg_q);

  int dimension() const { return dim_; }
  Complex at(int row, int col) const { return entries_[static_cast<std::size_t>(row * dim_ + col)]; }
  Complex determinant() const;

 private:
  int dim_;
  std::vector<Complex> entries_;
};

/// Determinant by LU with partial pivoting; `a` is row-major n x n.
Complex lu_determinant(std::vector<Complex> a, int n);

/// Res(p, q) for nonzero p, q at their actual degrees.
Complex resultant(const UPoly& p, const UPoly& q);
/// Res(p, q) with formal degrees deg_p >= deg(p), deg_q >= deg(q); zero
/// polynomials are allowed.
Complex resultant_formal(const UPoly& p, int deg_p, const UPoly& q, int deg_q);

/// Eliminates `eliminate` from two polynomials in two variables by
/// evaluation at roots of unity of radius 1.3 in the surviving variable and
/// DFT interpolation. The result is a polynomial in the surviving axis.
UPoly resultant_bivariate(const MPoly& p, const MPoly& q, Axis eliminate);

struct RootOptions {
  double residual_tol = 1e-8;
  double cluster_tol = 1e-6;
  int max_iters = 200;
};

struct RootCluster {
  Complex value;        // centroid of the merged raw roots
  int multiplicity = 1;
  double residual = 0;  // backward residual at the centroid
  double diameter = 0;  // spread of the merged raw roots
};

struct RootSet {
  std::vector<RootCluster> roots;  // sorted by (real, imag)
  std::vector<Complex> raw;        // one entry per root, sorted by (real, imag)
  std::vector<double> raw_residuals;
  int iterations = 0;

  int total_multiplicity() const;
  double max_residual() const;
};

class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, RootSet best)
      : Error(ErrorKind::NonConvergence, what), best_(std::move(best)) {}
  const RootSet& best() const { return best_; }

 private:
  RootSet best_;
};

/// Backward residual |p(z)| / sum |c_k| |z|^k.
double relative_residual(const UPoly& p, Complex z);

/// All complex roots by Aberth-Ehrlich simultaneous iteration, Newton
/// polished, then merged into multiplicity clusters.
RootSet all_roots(const UPoly& p, const RootOptions& opts = {});

/// Smallest k whose Taylor coefficient at `at` exceeds tol * (largest
/// Taylor coefficient modulus).
int vanishing_order(const UPoly& p, Complex at, double tol);

/// Lexicographic (real, imag) ordering used for canonical output.
bool complex_less(Complex lhs, Complex rhs);

}  // namespace flexkit

#endif  // FLEXKIT_SOLVE_HPP
