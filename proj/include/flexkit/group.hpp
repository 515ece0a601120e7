#ifndef FLEXKIT_GROUP_HPP
#define FLEXKIT_GROUP_HPP

#include <string>
#include <vector>

#include "flexkit/geometry.hpp"
#include "flexkit/linalg.hpp"
#include "flexkit/poly.hpp"
#include "flexkit/projective.hpp"

namespace flexkit {

/// Invertible projective transform. Stored with its largest-modulus entry
/// scaled to 1; equality is up to a scalar.
class Transform {
 public:
  /// Throws Error(Unsupported) when |det| <= 1e-10 after scaling.
  explicit Transform(const Mat3& m);
  static Transform identity() { return Transform(identity3()); }

  const Mat3& matrix() const { return m_; }
  ProjPoint apply(const ProjPoint& p) const { return m_ * p; }
  /// (this ∘ other): apply other first.
  Transform compose(const Transform& other) const { return Transform(m_ * other.m_); }
  Transform inverse() const { return Transform(flexkit::inverse(m_)); }
  bool is_diagonal() const;

  bool equals(const Transform& other, double tol = 1e-9) const;

 private:
  Mat3 m_;
};

class GroupAction {
 public:
  /// Closure of the generators under composition; the identity comes first,
  /// then elements in breadth-first order. Throws Error(Unsupported) if the
  /// closure exceeds max_order.
  static GroupAction generate(const std::vector<Transform>& generators, std::size_t max_order = 1024);
  /// The Klein four-group generated by diag(-1,1,1) and diag(1,-1,1).
  static GroupAction klein_four();

  const std::vector<Transform>& elements() const { return elements_; }
  int order() const { return static_cast<int>(elements_.size()); }
  /// Index of g among the elements, -1 if absent.
  int index_of(const Transform& g) const;

 private:
  std::vector<Transform> elements_;
};

Transform sigma();
Transform tau();

struct Orbit {
  std::vector<ProjPoint> points;  // the orbit representative first
  int stabilizer_order = 1;

  int size() const { return static_cast<int>(points.size()); }
};

/// Distinct images of p under G (chordal tolerance match).
Orbit orbit(const GroupAction& g, const ProjPoint& p, double tol = Tolerances{}.point_merge);

/// Elements fixing p projectively.
std::vector<Transform> stabilizer(const GroupAction& g, const ProjPoint& p, double tol = Tolerances{}.point_merge);

/// On-curve points with a nontrivial stabilizer, as orbits. Every
/// non-identity element must be diagonal (Error(Unsupported) otherwise); its
/// fixed lines are intersected with the curve in closed form. Throws
/// Error(NonInvariantCurve) if some element does not preserve F.
std::vector<Orbit> fixed_locus(const GroupAction& g, const MPoly& f, const Tolerances& tol = {});

/// True if F(g v) is a scalar multiple of F for every element g.
bool preserves(const GroupAction& g, const MPoly& f, double tol = 1e-9);

struct FlexOrbit {
  Orbit orbit;
  int contact_order = 0;
  int weight = 0;
  std::vector<std::size_t> members;  // indices into the flex list
};

/// Partition of a complete flex set into G-orbits. Throws
/// Error(MixedWeightOrbit) if an orbit mixes contact orders and
/// Error(NonInvariantCurve) if some image of a flex is not in the set.
std::vector<FlexOrbit> orbit_decomposition(const GroupAction& g, const std::vector<FlexRecord>& flexes,
                                           double tol = Tolerances{}.point_merge);

/// Orbit counts per size, e.g. {{2, 2}, {2, 4}} renders as "2_2, 2_4".
struct OrbitShape {
  std::vector<std::pair<int, int>> ordinary;   // (count, size), ascending size
  std::vector<std::pair<int, int>> hyperflex;

  static std::string render(const std::vector<std::pair<int, int>>& side);
  /// "ordinary | hyperflex" with "-" for an empty side.
  std::string to_string() const;
  friend bool operator==(const OrbitShape&, const OrbitShape&) = default;
};

OrbitShape orbit_shape(const std::vector<FlexOrbit>& orbits);

}  // namespace flexkit

#endif  // FLEXKIT_GROUP_HPP
