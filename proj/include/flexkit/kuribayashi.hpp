#ifndef FLEXKIT_KURIBAYASHI_HPP
#define FLEXKIT_KURIBAYASHI_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "flexkit/geometry.hpp"
#include "flexkit/group.hpp"

namespace flexkit {

struct Params {
  Complex a, b, c;

  /// |a|^2 + |b|^2 + |c|^2 + 1, the scale of the special-locus tests.
  double scale() const;
  /// Name of the first vanishing factor of the smoothness product, if any.
  std::optional<std::string> singular_factor() const;
  bool smooth() const { return !singular_factor(); }
};

/// x^4 + y^4 + z^4 + a x^2 y^2 + b x^2 z^2 + c y^2 z^2. Throws Error(NotSmooth).
MPoly build_curve(const Params& p);

enum class Case { I, II, III, IV };
const char* to_string(Case c);

struct SpecialLoci {
  std::array<Complex, 3> P{};          // a^2+b^2-abc, a^2+c^2-abc, b^2+c^2-abc
  std::array<bool, 3> vanishes{};      // within locus tolerance
  std::array<bool, 3> near{};          // small but nonzero: reported, never switches case
  int zero_params = 0;
  Case kase = Case::IV;

  static SpecialLoci of(const Params& p, const Tolerances& tol = {});
  int vanishing_count() const;
};

/// Hyperflex test on one coordinate slice: x = 0 (P1), y = 0 (P2), z = 0 (P3).
/// The slice meets the curve in two H-orbits of size 2, e.g. [0:±β:1] and
/// [0:±1/β:1] on x = 0 with β^2 = (-c - sqrt(c^2-4))/2. Which orbit is the
/// hyperflex orbit is decided by the contact order at each representative.
struct SliceReport {
  Axis axis = Axis::X;
  Complex locus_value;
  bool vanishes = false;
  std::array<ProjPoint, 2> representatives{ProjPoint(0.0, 0.0, 1.0), ProjPoint(0.0, 0.0, 1.0)};
  std::array<int, 2> contact_orders{};
  int hit = -1;                       // index of the hyperflex orbit, -1 for none
  std::vector<std::string> formulas;  // closed-form branch conditions that hold
};
std::array<SliceReport, 3> special_flex_conditions(const Params& p, const Tolerances& tol = {});

struct TableRow {
  Case kase;
  std::string id;  // "IV.1"
  int ordinary;
  int hyperflex;
  OrbitShape shape;
};
/// The rows of the four classification theorems, in table order.
const std::vector<TableRow>& classification_table();

struct ClassificationReport {
  Params params;
  SpecialLoci loci;
  int ordinary = 0;
  int hyperflex = 0;
  OrbitShape shape;
  std::string table_row;  // row id, or "unmatched"
  bool table_match = false;
  std::vector<FlexRecord> flexes;
  std::vector<FlexOrbit> orbits;
  FlexDiagnostics diagnostics;
  std::vector<std::string> notes;
};

/// Flexes, orbits, case and table row. A computed result that fits no row of
/// its case is reported with table_match = false rather than thrown.
ClassificationReport classify(const Params& p, const FlexOptions& opts = {});

struct ResultantCheck {
  Axis axis = Axis::X;
  Complex numeric;      // Res of the restricted (H_F, F) at formal degrees 6, 4
  Complex stated;       // 2985984 P_i^2 (p^2 - 4)^4
  Complex derived;      // 72^4 P_i^2 (p^2 - 4)^4
  double stated_error = 0;
  double derived_error = 0;
  Complex ratio;        // numeric / stated
};
std::array<ResultantCheck, 3> verify_resultant_identities(const Params& p);

/// Relative error with both-vanish handling: values below floor count as zero.
double relative_error(Complex got, Complex want, double floor);

inline constexpr double kStatedResultantConstant = 2985984.0;
inline constexpr double kDerivedResultantConstant = 26873856.0;  // 72^4

struct ReductionReport {
  ClassificationReport report;
  Complex P;                 // a^2 + b^2 - a b^2
  std::string block;         // "b=0", "P=0" or "P!=0"
  bool in_block = false;     // counts match a row of that block
  bool consistent = false;   // in_block, and P = 0 with b != 0 gives hyperflexes
};
ReductionReport two_parameter_reduction(Complex a, Complex b, const FlexOptions& opts = {});

struct FixedOrbitReport {
  Orbit orbit;
  Axis slice;
  int contact_order;
};
/// Points with nontrivial H-stabilizer, with the contact order at each.
std::vector<FixedOrbitReport> fixed_orbits(const Params& p, const Tolerances& tol = {});

}  // namespace flexkit

#endif  // FLEXKIT_KURIBAYASHI_HPP
