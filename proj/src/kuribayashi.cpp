#include "flexkit/kuribayashi.hpp"

#include <algorithm>
#include <cmath>

namespace flexkit {

namespace {

constexpr double kSmoothnessTol = 1e-9;
constexpr double kProximity = 1e-4;

OrbitShape shape(std::vector<std::pair<int, int>> ordinary, std::vector<std::pair<int, int>> hyperflex) {
  return OrbitShape{std::move(ordinary), std::move(hyperflex)};
}

// Root of w^4 + s w^2 + 1 = 0 with w^2 = (-s - sqrt(s^2 - 4)) / 2, principal branches.
Complex slice_root(Complex s) { return std::sqrt((-s - std::sqrt(s * s - 4.0)) / 2.0); }

bool close(Complex x, Complex y, double tol) { return std::abs(x - y) <= tol; }

int safe_contact(const MPoly& f, const ProjPoint& p, const Tolerances& tol) {
  return contact_order(f, tangent_at(f, p, tol), tol.contact);
}

}  // namespace

double Params::scale() const { return std::norm(a) + std::norm(b) + std::norm(c) + 1.0; }

std::optional<std::string> Params::singular_factor() const {
  const double s = scale();
  struct Factor {
    const char* name;
    Complex value;
    int degree;
  };
  const Factor factors[] = {
      {"a^2-1", a * a - 1.0, 2},
      {"b^2-1", b * b - 1.0, 2},
      {"c^2-1", c * c - 1.0, 2},
      {"a^2-4", a * a - 4.0, 2},
      {"b^2-4", b * b - 4.0, 2},
      {"c^2-4", c * c - 4.0, 2},
      {"a^2+b^2+c^2-abc-4", a * a + b * b + c * c - a * b * c - 4.0, 3},
  };
  for (const auto& f : factors)
    if (std::abs(f.value) <= kSmoothnessTol * std::pow(s, f.degree / 2.0)) return std::string(f.name);
  return std::nullopt;
}

MPoly build_curve(const Params& p) {
  if (const auto factor = p.singular_factor())
    throw Error(ErrorKind::NotSmooth, "curve is singular: factor " + *factor + " vanishes");
  return MPoly::kuribayashi(p.a, p.b, p.c);
}

const char* to_string(Case c) {
  switch (c) {
    case Case::I: return "I";
    case Case::II: return "II";
    case Case::III: return "III";
    case Case::IV: return "IV";
  }
  return "?";
}

SpecialLoci SpecialLoci::of(const Params& p, const Tolerances& tol) {
  SpecialLoci s;
  const Complex a = p.a, b = p.b, c = p.c;
  s.P = {a * a + b * b - a * b * c, a * a + c * c - a * b * c, b * b + c * c - a * b * c};
  const double scale = p.scale();
  for (std::size_t i = 0; i < 3; ++i) {
    s.vanishes[i] = std::abs(s.P[i]) <= tol.locus * scale;
    s.near[i] = !s.vanishes[i] && std::abs(s.P[i]) <= kProximity * scale;
  }
  for (const Complex v : {a, b, c}) s.zero_params += std::abs(v) <= tol.locus * std::sqrt(scale);
  const int n = s.vanishing_count();
  s.kase = s.zero_params >= 2 ? Case::I : n >= 2 ? Case::II : n == 1 ? Case::III : Case::IV;
  return s;
}

int SpecialLoci::vanishing_count() const {
  return static_cast<int>(std::count(vanishes.begin(), vanishes.end(), true));
}

std::array<SliceReport, 3> special_flex_conditions(const Params& p, const Tolerances& tol) {
  const MPoly f = build_curve(p);
  const SpecialLoci loci = SpecialLoci::of(p, tol);
  const Complex a = p.a, b = p.b, c = p.c;
  const double ftol = 1e-8 * std::sqrt(p.scale());
  std::array<SliceReport, 3> out;

  const Complex beta = slice_root(c), alpha = slice_root(b), delta = slice_root(a);
  out[0].axis = Axis::X;
  out[0].representatives = {ProjPoint(0.0, beta, 1.0), ProjPoint(0.0, 1.0 / beta, 1.0)};
  if (close(a, 0.5 * (b * c - b * std::sqrt(c * c - 4.0)), ftol)) out[0].formulas.push_back("a = (bc - b sqrt(c^2-4))/2");
  if (close(a, 0.5 * (b * c + b * std::sqrt(c * c - 4.0)), ftol)) out[0].formulas.push_back("a = (bc + b sqrt(c^2-4))/2");

  out[1].axis = Axis::Y;
  out[1].representatives = {ProjPoint(alpha, 0.0, 1.0), ProjPoint(1.0 / alpha, 0.0, 1.0)};
  if (close(a, 0.5 * (b * c - c * std::sqrt(b * b - 4.0)), ftol)) out[1].formulas.push_back("a = (bc - c sqrt(b^2-4))/2");
  if (close(a, 0.5 * (b * c + c * std::sqrt(b * b - 4.0)), ftol)) out[1].formulas.push_back("a = (bc + c sqrt(b^2-4))/2");

  out[2].axis = Axis::Z;
  out[2].representatives = {ProjPoint(delta, 1.0, 0.0), ProjPoint(1.0 / delta, 1.0, 0.0)};
  if (close(b, 0.5 * (a * c - c * std::sqrt(a * a - 4.0)), ftol)) out[2].formulas.push_back("b = (ac - c sqrt(a^2-4))/2");
  if (close(b, 0.5 * (a * c + c * std::sqrt(a * a - 4.0)), ftol)) out[2].formulas.push_back("b = (ac + c sqrt(a^2-4))/2");
  // the form printed in the statement for this slice, kept for comparison
  if (close(a, 0.5 * (b * c - c * std::sqrt(b * b - 4.0)), ftol))
    out[2].formulas.push_back("statement form a = (bc - c sqrt(b^2-4))/2");

  for (std::size_t i = 0; i < 3; ++i) {
    out[i].locus_value = loci.P[i];
    out[i].vanishes = loci.vanishes[i];
    for (std::size_t k = 0; k < 2; ++k) {
      out[i].contact_orders[k] = safe_contact(f, out[i].representatives[k], tol);
      if (out[i].contact_orders[k] >= 4 && out[i].hit < 0) out[i].hit = static_cast<int>(k);
    }
  }
  return out;
}

const std::vector<TableRow>& classification_table() {
  static const std::vector<TableRow> rows{
      {Case::I, "I.1", 0, 12, shape({}, {{2, 2}, {2, 4}})},
      {Case::I, "I.2", 16, 4, shape({{4, 4}}, {{2, 2}})},
      {Case::II, "II.1", 16, 4, shape({{4, 4}}, {{2, 2}})},
      {Case::II, "II.2", 8, 8, shape({{2, 4}}, {{2, 2}, {1, 4}})},
      {Case::II, "II.3", 0, 12, shape({}, {{2, 2}, {2, 4}})},
      {Case::III, "III.1", 20, 2, shape({{5, 4}}, {{1, 2}})},
      {Case::III, "III.2", 12, 6, shape({{3, 4}}, {{1, 2}, {1, 4}})},
      {Case::III, "III.3", 4, 10, shape({{1, 4}}, {{1, 2}, {2, 4}})},
      {Case::IV, "IV.1", 24, 0, shape({{6, 4}}, {})},
      {Case::IV, "IV.2", 16, 4, shape({{4, 4}}, {{1, 4}})},
      {Case::IV, "IV.3", 8, 8, shape({{2, 4}}, {{2, 4}})},
      {Case::IV, "IV.4", 0, 12, shape({}, {{3, 4}})},
  };
  return rows;
}

ClassificationReport classify(const Params& p, const FlexOptions& opts) {
  ClassificationReport r;
  r.params = p;
  const MPoly f = build_curve(p);
  r.loci = SpecialLoci::of(p, opts.tol);
  const FlexSet fs = find_flexes(f, opts);
  r.flexes = fs.flexes;
  r.diagnostics = fs.diagnostics;
  r.ordinary = fs.ordinary_count();
  r.hyperflex = fs.hyperflex_count();
  r.orbits = orbit_decomposition(GroupAction::klein_four(), r.flexes, opts.tol.point_merge);
  r.shape = orbit_shape(r.orbits);

  static const char* names[] = {"P1", "P2", "P3"};
  for (std::size_t i = 0; i < 3; ++i)
    if (r.loci.near[i])
      r.notes.push_back(std::string(names[i]) + " is close to zero but treated as nonzero");

  r.table_row = "unmatched";
  for (const auto& row : classification_table()) {
    if (row.kase != r.loci.kase || row.ordinary != r.ordinary || row.hyperflex != r.hyperflex) continue;
    if (row.shape == r.shape) {
      r.table_row = row.id;
      r.table_match = true;
      break;
    }
    r.notes.push_back("counts match row " + row.id + " but the orbit shape is " + r.shape.to_string() +
                      " instead of " + row.shape.to_string());
  }

  if (r.loci.kase == Case::I) {
    // the table splits on the surviving parameter being 0 or 6
    Complex q = 0.0;
    for (const Complex v : {p.a, p.b, p.c})
      if (std::abs(v) > std::abs(q)) q = v;
    const double t = 1e-9 * std::sqrt(p.scale());
    const std::string expected = (std::abs(q) <= t || std::abs(q - 6.0) <= t) ? "I.1" : "I.2";
    const std::string by_counts = r.hyperflex == 12 ? "I.1" : "I.2";
    if (expected != by_counts)
      r.notes.push_back("surviving parameter " + format_complex(q) + " gives the counts of row " + by_counts +
                        " while the table condition selects row " + expected);
  }
  return r;
}

double relative_error(Complex got, Complex want, double floor) {
  const double d = std::max(std::abs(got), std::abs(want));
  if (d <= floor) return 0.0;
  return std::abs(got - want) / d;
}

std::array<ResultantCheck, 3> verify_resultant_identities(const Params& p) {
  const MPoly f = MPoly::kuribayashi(p.a, p.b, p.c);
  const MPoly h = hessian(f);
  const Complex a = p.a, b = p.b, c = p.c;
  struct Slice {
    Axis axis;
    Pin zero, one;
    Complex locus, param;
  };
  const Slice slices[] = {
      {Axis::X, Pin{Axis::X, 0.0}, Pin{Axis::Z, 1.0}, a * a + b * b - a * b * c, c},
      {Axis::Y, Pin{Axis::Y, 0.0}, Pin{Axis::Z, 1.0}, a * a + c * c - a * b * c, b},
      {Axis::Z, Pin{Axis::Z, 0.0}, Pin{Axis::Y, 1.0}, b * b + c * c - a * b * c, a},
  };
  const double scale = p.scale();
  std::array<ResultantCheck, 3> out;
  for (std::size_t i = 0; i < 3; ++i) {
    const Slice& s = slices[i];
    ResultantCheck& r = out[i];
    r.axis = s.axis;
    r.numeric = resultant_formal(restrict(h, s.zero, s.one), 6, restrict(f, s.zero, s.one), 4);
    const Complex core = s.locus * s.locus * std::pow(s.param * s.param - 4.0, 4);
    r.stated = kStatedResultantConstant * core;
    r.derived = kDerivedResultantConstant * core;
    const double floor = 1e-10 * kDerivedResultantConstant * scale * scale * std::pow(std::norm(s.param) + 4.0, 4);
    r.stated_error = relative_error(r.numeric, r.stated, floor);
    r.derived_error = relative_error(r.numeric, r.derived, floor);
    r.ratio = r.stated == Complex(0.0) ? Complex(0.0) : r.numeric / r.stated;
  }
  return out;
}

ReductionReport two_parameter_reduction(Complex a, Complex b, const FlexOptions& opts) {
  ReductionReport out;
  const Params p{a, b, b};
  out.report = classify(p, opts);
  out.P = a * a + b * b - a * b * b;
  const bool b_zero = std::abs(b) <= opts.tol.locus * std::sqrt(p.scale());
  const bool p_zero = std::abs(out.P) <= opts.tol.locus * p.scale();
  std::vector<std::pair<int, int>> rows;
  if (b_zero) {
    out.block = "b=0";
    rows = {{0, 12}, {16, 4}};
  } else if (p_zero) {
    out.block = "P=0";
    rows = {{16, 4}, {8, 8}, {0, 12}};
  } else {
    out.block = "P!=0";
    rows = {{24, 0}, {16, 4}, {8, 8}, {0, 12}};
  }
  const std::pair<int, int> got{out.report.ordinary, out.report.hyperflex};
  out.in_block = std::find(rows.begin(), rows.end(), got) != rows.end();
  out.consistent = out.in_block && (!p_zero || b_zero || out.report.hyperflex > 0);
  return out;
}

std::vector<FixedOrbitReport> fixed_orbits(const Params& p, const Tolerances& tol) {
  const MPoly f = build_curve(p);
  std::vector<FixedOrbitReport> out;
  for (auto& o : fixed_locus(GroupAction::klein_four(), f, tol)) {
    const ProjPoint& rep = o.points.front();
    Axis slice = Axis::X;
    for (int i = 0; i < 3; ++i)
      if (rep[i] == Complex(0.0)) slice = static_cast<Axis>(i);
    const int k = safe_contact(f, rep, tol);
    out.push_back({std::move(o), slice, k});
  }
  return out;
}

}  // namespace flexkit
