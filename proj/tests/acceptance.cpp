#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "flexkit/kuribayashi.hpp"

using namespace flexkit;

namespace {

constexpr double kRepresentativeTol = 1e-4;  // chordal, for printed coordinates
constexpr double kExactPointTol = 1e-6;      // chordal, for closed-form points
constexpr double kIdentityTol = 1e-8;        // relative resultant error
constexpr double kSliceTol = 1e-6;           // |x| / |p| for a point on x = 0
constexpr std::uint64_t kSeed = 20240601;

bool all_passed = true;

void report(int id, bool pass, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  all_passed = all_passed && pass;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Complex draw(std::mt19937_64& rng) {
  const double re = uniform(rng, -4.0, 4.0);
  return {re, uniform(rng, -4.0, 4.0)};
}

Params smooth_triple(std::mt19937_64& rng) {
  Params p;
  do p = {draw(rng), draw(rng), draw(rng)};
  while (!p.smooth());
  return p;
}

double nearest(const std::vector<FlexRecord>& flexes, const ProjPoint& p, int* contact = nullptr) {
  double best = INFINITY;
  for (const auto& f : flexes) {
    const double d = chordal_distance(f.point, p);
    if (d < best) {
      best = d;
      if (contact) *contact = f.contact_order;
    }
  }
  return best;
}

std::string fmt(const char* format, double v) {
  char buf[128];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

// Returns the worst chordal distance from a listed point to the computed set.
double match_all(const std::vector<FlexRecord>& flexes, const std::vector<std::pair<Complex, Complex>>& listed) {
  double worst = 0;
  for (const auto& [x, y] : listed) worst = std::max(worst, nearest(flexes, ProjPoint(x, y, 1.0)));
  return worst;
}

void criterion_1() {
  const Complex i(0, 1);
  const ClassificationReport r = classify({3, 3, 0});
  const double worst = match_all(r.flexes, {{-1.75642 * i, -3.01936},
                                             {-0.581718 * i, -0.33119},
                                             {-0.91777 + 1.15085 * i, -0.22252 - 0.97492 * i},
                                             {-0.91777 - 1.15085 * i, -0.22252 + 0.97492 * i},
                                             {-0.59367 + 0.39822 * i, -0.37935 + 0.92525 * i},
                                             {-0.593675 - 0.39822 * i, -0.37935 - 0.92525 * i}});
  const bool pass = r.ordinary == 24 && r.hyperflex == 0 && r.shape.to_string() == "6_4 | -" &&
                    worst <= kRepresentativeTol;
  report(1, pass,
         "C(3,3,0): " + std::to_string(r.ordinary) + " ordinary, shape " + r.shape.to_string() +
             fmt(", worst representative distance %.2e", worst));
}

void criterion_2() {
  bool pass = true;
  std::string detail;
  for (const Params& p : {Params{1.2, 6 / std::sqrt(5.0), 6 / std::sqrt(5.0)}, Params{3, 3, 3}}) {
    const ClassificationReport r = classify(p);
    pass = pass && r.hyperflex == 12 && r.ordinary == 0 && r.diagnostics.weight_sum == 24;
    detail += (detail.empty() ? "" : "; ") + std::to_string(r.hyperflex) + " hyperflex, " +
              std::to_string(r.ordinary) + " ordinary, weight " + std::to_string(r.diagnostics.weight_sum);
  }
  report(2, pass, detail);
}

void criterion_3() {
  bool pass = true;
  std::string detail;
  const auto check = [&](double a, int ordinary, int hyperflex, const std::string& shape) {
    const ClassificationReport r = classify({a, 0, 0});
    const bool ok = r.ordinary == ordinary && r.hyperflex == hyperflex && r.shape.to_string() == shape;
    pass = pass && ok;
    detail += (detail.empty() ? "" : "; ") + fmt("a=%g: ", a) + r.shape.to_string() + (ok ? "" : " (want " + shape + ")");
  };
  check(0, 0, 12, "- | 2_2, 2_4");
  check(6, 0, 12, "- | 2_2, 2_4");
  for (const double a : {3.0, 5.0, -0.5}) check(a, 16, 4, "4_4 | 2_2");
  report(3, pass, detail);
}

void criterion_4() {
  const Complex i(0, 1);
  const ClassificationReport r = classify({3, 6 - 3 * std::sqrt(3.0), 4});
  const double worst = match_all(r.flexes, {{3.72978, 2.2488 * i},
                                             {0.225851 + 1.28153 * i, 1.14986 - 1.07474 * i},
                                             {0.225851 - 1.28153 * i, 1.14986 + 1.07474 * i},
                                             {0.334413 - 1.0111 * i, -0.471629 + 0.349376 * i},
                                             {0.334413 + 1.0111 * i, -0.471629 - 0.349376 * i},
                                             {0, 0.517638 * i}});
  const bool pass = r.ordinary == 20 && r.hyperflex == 2 && worst <= kRepresentativeTol;
  report(4, pass,
         "C(3,6-3sqrt3,4): " + std::to_string(r.ordinary) + " ordinary, " + std::to_string(r.hyperflex) +
             " hyperflex" + fmt(", worst representative distance %.2e", worst));
}

void criterion_5() {
  std::mt19937_64 rng(kSeed);
  double worst_stated = 0, worst_derived = 0, ratio_lo = INFINITY, ratio_hi = -INFINITY;
  for (int s = 0; s < 100; ++s) {
    const Params p = smooth_triple(rng);
    for (const auto& c : verify_resultant_identities(p)) {
      worst_stated = std::max(worst_stated, c.stated_error);
      worst_derived = std::max(worst_derived, c.derived_error);
      ratio_lo = std::min(ratio_lo, c.ratio.real());
      ratio_hi = std::max(ratio_hi, c.ratio.real());
    }
  }
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "constant 2985984: worst error %.3g; numeric/stated in [%.12g, %.12g]; constant 72^4: worst error %.3g",
                worst_stated, ratio_lo, ratio_hi, worst_derived);
  report(5, worst_stated <= kIdentityTol, buf);
}

void criterion_6() {
  std::mt19937_64 rng(kSeed + 6);
  int hits = 0, tested = 0, stray = 0;
  double worst = 0;
  while (tested < 20) {
    const Complex b = draw(rng), c = draw(rng);
    const Complex s = std::sqrt(c * c - 4.0);
    const Params p{0.5 * (b * c - b * s), b, c};
    if (!p.smooth()) continue;
    ++tested;
    const Complex beta = std::sqrt((-c - s) / 2.0);
    int contact = 0;
    const double d = nearest(find_flexes(build_curve(p)).flexes, ProjPoint(0.0, beta, 1.0), &contact);
    worst = std::max(worst, d);
    hits += d <= kExactPointTol && contact == 4;
  }
  for (int n = 0; n < 20; ++n) {
    const Params p = smooth_triple(rng);
    if (SpecialLoci::of(p).vanishes[0]) continue;
    for (const auto& f : find_flexes(build_curve(p)).flexes)
      stray += std::abs(f.point.unit()[0]) <= kSliceTol;
  }
  report(6, hits == 20 && stray == 0,
         std::to_string(hits) + "/20 [0:beta:1] hyperflexes" + fmt(" (worst distance %.2e), ", worst) +
             std::to_string(stray) + " flexes on x=0 off the locus");
}

void criterion_7() {
  std::mt19937_64 rng(kSeed + 7);
  const GroupAction g = GroupAction::klein_four();
  int weight_bad = 0, orbit_bad = 0, fixed_bad = 0, bezout_bad = 0, errors = 0;
  for (int n = 0; n < 200; ++n) {
    const Params p = smooth_triple(rng);
    try {
      const MPoly f = build_curve(p);
      const FlexSet s = find_flexes(f);
      weight_bad += s.weight_sum() != 24;
      for (const auto& o : orbit_decomposition(g, s.flexes)) {
        bool ok = 4 % o.orbit.size() == 0;
        for (const std::size_t m : o.members) ok = ok && s.flexes[m].contact_order == o.contact_order;
        orbit_bad += !ok;
      }
      for (const auto& o : fixed_locus(g, f)) fixed_bad += o.size() * o.stabilizer_order != 4;
      for (const auto& r : s.flexes) bezout_bad += line_intersections(f, tangent_at(f, r.point)).total() != 4;
    } catch (const Error& e) {
      ++errors;
      std::printf("  sample %d: %s\n", n, e.what());
    }
  }
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "200 triples: weight-sum failures %d, orbit failures %d, fixed-locus failures %d, Bezout failures %d, "
                "errors %d",
                weight_bad, orbit_bad, fixed_bad, bezout_bad, errors);
  report(7, weight_bad + orbit_bad + fixed_bad + bezout_bad + errors == 0, buf);
}

void criterion_8() {
  std::mt19937_64 rng(kSeed + 8);
  int consistent = 0, tested = 0, on_locus = 0, on_locus_hyper = 0;
  std::string failures;
  while (tested < 20) {
    const Complex a = draw(rng);
    Complex b = draw(rng);
    if (tested % 4 == 0) b = std::sqrt(a * a / (a - 1.0));  // P(a, b) = 0
    if (tested % 4 == 1) b = 0;
    if (!Params{a, b, b}.smooth()) continue;
    ++tested;
    try {
      const ReductionReport r = two_parameter_reduction(a, b);
      consistent += r.consistent;
      if (r.block == "P=0") {
        ++on_locus;
        on_locus_hyper += r.report.hyperflex > 0;
      }
      if (!r.consistent) failures += " " + r.block + ":" + r.report.table_row;
    } catch (const Error& e) {
      failures += std::string(" error:") + e.what();
    }
  }
  report(8, consistent == 20 && on_locus > 0 && on_locus_hyper == on_locus,
         std::to_string(consistent) + "/20 consistent, " + std::to_string(on_locus_hyper) + "/" +
             std::to_string(on_locus) + " on P=0 with hyperflexes" + failures);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  return all_passed ? 0 : 1;
}
