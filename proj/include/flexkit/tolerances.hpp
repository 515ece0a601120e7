#ifndef FLEXKIT_TOLERANCES_HPP
#define FLEXKIT_TOLERANCES_HPP

namespace flexkit {

/// Numerical thresholds shared by the flex pipeline. Residual-type values
/// are relative to the coefficient scale of the polynomial being evaluated
/// (sum of coefficient moduli) at a point normalized to max-modulus 1.
struct Tolerances {
  double on_curve = 1e-8;     // |F(p)| for an accepted flex
  double hessian = 1e-6;      // |H_F(p)| for an accepted flex
  double cluster = 1e-6;      // root multiplicity merging, relative to root scale
  double residual = 1e-8;     // Aberth/Newton backward residual
  double locus = 1e-9;        // P_i = 0 decisions, relative to |a|^2+|b|^2+|c|^2+1
  double point_merge = 1e-6;  // chordal distance for projective identity
  double contact = 1e-6;      // Taylor-coefficient threshold in contact order

  /// Every tolerance multiplied by `factor` (the CLI's --tol).
  Tolerances scaled(double factor) const {
    Tolerances t = *this;
    t.on_curve *= factor;
    t.hessian *= factor;
    t.cluster *= factor;
    t.residual *= factor;
    t.locus *= factor;
    t.point_merge *= factor;
    t.contact *= factor;
    return t;
  }

  bool valid() const {
    return on_curve > 0 && hessian > 0 && cluster > 0 && residual > 0 && locus > 0 &&
           point_merge > 0 && contact > 0;
  }
};

}  // namespace flexkit

#endif  // FLEXKIT_TOLERANCES_HPP
