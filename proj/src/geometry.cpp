#include "flexkit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace flexkit {

namespace {

// Candidate filter when lifting eliminant roots; final acceptance is strict.
constexpr double kLiftTol = 1e-3;
// Contact-order threshold that flags a possible hyperflex before deflation.
constexpr double kHyperflexProbeTol = 1e-3;
// A Taylor root of the line restriction within this |t| belongs to the base point.
constexpr double kBaseRadius = 1e-2;
// Relative gradient below which an on-curve candidate is treated as singular.
constexpr double kSingularGradient = 1e-6;
constexpr double kNearSingularGradient = 1e-3;

Vec3 normalized(const Vec3& v) { return ProjPoint(v).coords(); }

int max_index(const Vec3& v) {
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(v[static_cast<std::size_t>(i)]) >= std::abs(v[static_cast<std::size_t>(k)])) k = i;
  return k;
}

// F, H_F and the derivatives needed by the two refinement schemes.
struct FlexSystem {
  explicit FlexSystem(const MPoly& curve) : f(curve), h(hessian(curve)) {
    nf = f.coeff_norm();
    nh = std::max(h.coeff_norm(), 1e-300);
    for (int i = 0; i < 3; ++i) {
      df[i] = f.partial(static_cast<Axis>(i));
      dh[i] = h.partial(static_cast<Axis>(i));
    }
    // cross product of the gradients: component k is the Jacobian
    // determinant of (F, H) in the affine chart x_k = 1
    for (int k = 0; k < 3; ++k) {
      const int i = (k + 1) % 3, j = (k + 2) % 3;
      jac[k] = df[i] * dh[j] - df[j] * dh[i];
      nj[k] = std::max(jac[k].coeff_norm(), 1e-300);
      for (int a = 0; a < 3; ++a) djac[k][a] = jac[k].partial(static_cast<Axis>(a));
    }
  }

  double gradient_ratio(const Vec3& v) const {
    const Vec3 p = normalized(v);
    const Vec3 g{df[0](p), df[1](p), df[2](p)};
    return norm(g) / (nf * std::max(1, f.degree()));
  }

  double residual(const Vec3& v) const {
    const Vec3 p = normalized(v);
    return std::abs(f(p)) / nf + std::abs(h(p)) / nh;
  }

  MPoly f, h;
  double nf, nh;
  std::array<MPoly, 3> df, dh;
  std::array<MPoly, 3> jac;
  std::array<double, 3> nj{};
  std::array<std::array<MPoly, 3>, 3> djac;
};

// Newton on (F, H) in the affine chart of the largest coordinate, with
// backtracking on the residual. Converges linearly at tangential
// intersections, which deflate() then repairs.
Vec3 newton(const FlexSystem& s, Vec3 p, int max_iters) {
  p = normalized(p);
  double r = s.residual(p);
  for (int it = 0; it < max_iters && r > 0.0; ++it) {
    const int k = max_index(p);
    const int i = (k + 1) % 3, j = (k + 2) % 3;
    const Complex fv = s.f(p), hv = s.h(p);
    const Complex fi = s.df[i](p), fj = s.df[j](p), hi = s.dh[i](p), hj = s.dh[j](p);
    const Complex det = fi * hj - fj * hi;
    if (det == Complex(0.0)) break;
    const Complex di = (-fv * hj + hv * fj) / det;
    const Complex dj = (-fi * hv + hi * fv) / det;
    bool moved = false;
    double lambda = 1.0;
    for (int half = 0; half < 30; ++half, lambda *= 0.5) {
      Vec3 cand = p;
      cand[i] += lambda * di;
      cand[j] += lambda * dj;
      const double rc = s.residual(cand);
      if (rc < r) {
        p = normalized(cand);
        r = rc;
        moved = true;
        break;
      }
    }
    if (!moved || lambda * (std::abs(di) + std::abs(dj)) < 1e-17) break;
  }
  return p;
}

// Gauss-Newton on the deflated system (F, H, J), J the chart Jacobian
// determinant of (F, H). A tangential intersection of the curve with its
// Hessian is a regular root of this system.
Vec3 deflate(const FlexSystem& s, Vec3 p, int max_iters) {
  p = normalized(p);
  auto eval = [&](const Vec3& v, int k, std::array<Complex, 3>& e) {
    // scale the chart coordinate to 1 without switching charts
    const Complex ck = v[static_cast<std::size_t>(k)];
    const Vec3 w{v[0] / ck, v[1] / ck, v[2] / ck};
    e = {s.f(w) / s.nf, s.h(w) / s.nh, s.jac[k](w) / s.nj[k]};
    return std::sqrt(std::norm(e[0]) + std::norm(e[1]) + std::norm(e[2]));
  };
  for (int it = 0; it < max_iters; ++it) {
    const int k = max_index(p);
    const int i = (k + 1) % 3, j = (k + 2) % 3;
    std::array<Complex, 3> e;
    const double r = eval(p, k, e);
    if (r == 0.0) break;
    const std::array<std::array<Complex, 2>, 3> a{{
        {s.df[i](p) / s.nf, s.df[j](p) / s.nf},
        {s.dh[i](p) / s.nh, s.dh[j](p) / s.nh},
        {s.djac[k][i](p) / s.nj[k], s.djac[k][j](p) / s.nj[k]},
    }};
    // normal equations A^H A d = -A^H e
    Complex m00 = 0.0, m01 = 0.0, m11 = 0.0, r0 = 0.0, r1 = 0.0;
    for (int row = 0; row < 3; ++row) {
      m00 += std::conj(a[row][0]) * a[row][0];
      m01 += std::conj(a[row][0]) * a[row][1];
      m11 += std::conj(a[row][1]) * a[row][1];
      r0 -= std::conj(a[row][0]) * e[static_cast<std::size_t>(row)];
      r1 -= std::conj(a[row][1]) * e[static_cast<std::size_t>(row)];
    }
    const Complex m10 = std::conj(m01);
    const Complex det = m00 * m11 - m01 * m10;
    if (det == Complex(0.0)) break;
    const Complex di = (r0 * m11 - m01 * r1) / det;
    const Complex dj = (m00 * r1 - m10 * r0) / det;
    bool moved = false;
    double lambda = 1.0;
    for (int half = 0; half < 30; ++half, lambda *= 0.5) {
      Vec3 cand = p;
      cand[i] += lambda * di;
      cand[j] += lambda * dj;
      std::array<Complex, 3> ec;
      if (eval(cand, k, ec) < r) {
        p = normalized(cand);
        moved = true;
        break;
      }
    }
    if (!moved || lambda * (std::abs(di) + std::abs(dj)) < 1e-17) break;
  }
  return p;
}

double relative_at(const MPoly& f, double scale, const Vec3& v) { return std::abs(f(normalized(v))) / scale; }

RootSet roots_or_best(const UPoly& p, const RootOptions& opts, FlexDiagnostics& d, const char* what) {
  try {
    return all_roots(p, opts);
  } catch (const NonConvergence& e) {
    d.notes.push_back(std::string(what) + ": " + e.what());
    return e.best();
  }
}

struct Candidate {
  Vec3 point;
  int root_index;  // eliminant raw root it came from, -1 for the line at infinity
};

struct MergedPoint {
  ProjPoint point;
  int roots = 0;
  double residual = 0;
};

FlexSet run_pass(const MPoly& f, const FlexSystem& sys, const Mat3& frame, int tighten, const Tolerances& tol) {
  FlexSet out;
  FlexDiagnostics& d = out.diagnostics;
  d.frame = frame;
  const double strict = static_cast<double>(tighten);

  const MPoly g = f.compose(frame);
  const MPoly hg = hessian(g);
  const double ng = g.coeff_norm(), nhg = std::max(hg.coeff_norm(), 1e-300);
  RootOptions ropts;
  ropts.residual_tol = tol.residual;
  ropts.cluster_tol = tol.cluster;

  std::vector<Candidate> candidates;

  // affine chart z = 1: eliminate y
  const MPoly ga = restrict(g, Pin{Axis::Z, 1.0});
  const MPoly ha = restrict(hg, Pin{Axis::Z, 1.0});
  const UPoly eliminant = resultant_bivariate(ga, ha, Axis::Y);
  d.eliminant_degree = eliminant.degree();
  if (eliminant.degree() >= 1) {
    const RootSet xs = roots_or_best(eliminant, ropts, d, "eliminant");
    d.raw_roots = static_cast<int>(xs.raw.size());
    for (std::size_t r = 0; r < xs.raw.size(); ++r) {
      const Complex x0 = xs.raw[r];
      const UPoly fy = restrict(g, Pin{Axis::X, x0}, Pin{Axis::Z, 1.0});
      if (fy.degree() < 1) continue;
      const RootSet ys = roots_or_best(fy, ropts, d, "fiber");
      double best = INFINITY;
      Vec3 best_point{};
      bool kept = false;
      for (const Complex y0 : ys.raw) {
        const Vec3 q{x0, y0, 1.0};
        const double score = relative_at(hg, nhg, q);
        if (score <= kLiftTol) {
          candidates.push_back({frame * q, static_cast<int>(r)});
          kept = true;
        }
        if (score < best) {
          best = score;
          best_point = q;
        }
      }
      if (!kept && std::isfinite(best)) candidates.push_back({frame * best_point, static_cast<int>(r)});
    }
  }

  // line z = 0 of the frame
  const MPoly gi = restrict(g, Pin{Axis::Z, 0.0});
  const UPoly bx = gi.substitute(Axis::Y, 1.0).as_univariate(Axis::X);
  if (bx.degree() >= 1) {
    const RootSet xs = roots_or_best(bx, ropts, d, "infinity");
    for (const Complex x0 : xs.raw) {
      const Vec3 q{x0, 1.0, 0.0};
      if (relative_at(hg, nhg, q) <= kLiftTol) candidates.push_back({frame * q, -1});
    }
  }
  if (bx.degree() < g.degree()) {
    const Vec3 q{1.0, 0.0, 0.0};
    if (relative_at(g, ng, q) <= kLiftTol && relative_at(hg, nhg, q) <= kLiftTol)
      candidates.push_back({frame * q, -1});
  }
  d.candidates = static_cast<int>(candidates.size());

  // refine in the original coordinates and merge
  std::vector<MergedPoint> merged;
  for (const auto& c : candidates) {
    const Vec3 p = newton(sys, c.point, 80 * tighten);
    const double rf = relative_at(sys.f, sys.nf, p);
    const double rh = relative_at(sys.h, sys.nh, p);
    if (rf > tol.on_curve / strict || rh > tol.hessian / strict) {
      if (rf <= tol.on_curve && sys.gradient_ratio(p) <= kSingularGradient)
        throw Error(ErrorKind::SingularPoint, "curve is singular near a flex candidate");
      ++d.rejected_candidates;
      continue;
    }
    const ProjPoint pp(p);
    auto hit = std::find_if(merged.begin(), merged.end(), [&](const MergedPoint& m) {
      return same_point(m.point, pp, tol.point_merge / strict);
    });
    const double res = rf + rh;
    if (hit == merged.end()) {
      merged.push_back({pp, c.root_index >= 0 ? 1 : 0, res});
    } else {
      hit->roots += c.root_index >= 0 ? 1 : 0;
      if (res < hit->residual) {
        hit->point = pp;
        hit->residual = res;
      }
    }
  }

  // classify; hyperflex candidates are deflated before the strict test
  std::vector<std::pair<FlexRecord, int>> classified;
  for (const auto& m : merged) {
    const TangentLine line = tangent_at(f, m.point, tol);
    ProjPoint point = m.point;
    int order = 0;
    if (contact_order(f, line, kHyperflexProbeTol) >= 4) {
      const ProjPoint refined(deflate(sys, m.point.coords(), 40 * tighten));
      const TangentLine refined_line = tangent_at(f, refined, tol);
      if (contact_order(f, refined_line, tol.contact / strict) >= 4) {
        point = refined;
        order = 4;
        ++d.deflated;
      }
    }
    if (order == 0) order = contact_order(f, line, tol.contact / strict);
    if (order < 3) {
      // F = H = 0 off the flexes only happens at (near-)singular points
      if (sys.gradient_ratio(point.coords()) <= kNearSingularGradient)
        throw Error(ErrorKind::SingularPoint, "curve is singular near a flex candidate");
      ++d.rejected_candidates;
      d.notes.push_back("candidate with contact order " + std::to_string(order) + " dropped");
      continue;
    }
    auto dup = std::find_if(classified.begin(), classified.end(), [&](const auto& c) {
      return same_point(c.first.point, point, tol.point_merge / strict);
    });
    if (dup != classified.end()) {
      dup->second += m.roots;
      continue;
    }
    classified.emplace_back(FlexRecord::from_contact(point, order), m.roots);
  }
  std::sort(classified.begin(), classified.end(),
            [](const auto& a, const auto& b) { return projective_less(a.first.point, b.first.point); });
  for (const auto& [rec, roots] : classified) {
    d.max_curve_residual = std::max(d.max_curve_residual, relative_value(sys.f, rec.point));
    d.max_hessian_residual = std::max(d.max_hessian_residual, relative_value(sys.h, rec.point));
    out.flexes.push_back(rec);
    d.root_counts.push_back(roots);
  }
  d.weight_sum = out.weight_sum();
  return out;
}

Mat3 permutation(int a, int b) {
  Mat3 m = identity3();
  std::swap(m[static_cast<std::size_t>(a)], m[static_cast<std::size_t>(b)]);
  return m;
}

}  // namespace

MPoly hessian(const MPoly& f) {
  if (!f.is_homogeneous()) throw Error(ErrorKind::NotHomogeneous, "hessian needs a homogeneous form");
  std::array<std::array<MPoly, 3>, 3> m;
  for (int i = 0; i < 3; ++i) {
    const MPoly fi = f.partial(static_cast<Axis>(i));
    for (int j = 0; j < 3; ++j) m[i][j] = fi.partial(static_cast<Axis>(j));
  }
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

double relative_value(const MPoly& f, const ProjPoint& p) {
  const double n = f.coeff_norm();
  return n == 0.0 ? 0.0 : std::abs(f(p.coords())) / n;
}

TangentLine tangent_at(const MPoly& f, const ProjPoint& p, const Tolerances& tol) {
  if (relative_value(f, p) > 100.0 * tol.on_curve)
    throw Error(ErrorKind::Unsupported, "tangent_at: point is not on the curve");
  const Vec3 u = p.unit();
  Vec3 grad{};
  for (int i = 0; i < 3; ++i) grad[static_cast<std::size_t>(i)] = f.partial(static_cast<Axis>(i))(u);
  const double gn = norm(grad);
  if (gn <= 1e-9 * f.coeff_norm() * std::max(1, f.degree()))
    throw Error(ErrorKind::SingularPoint, "gradient vanishes: curve is singular at the point");
  for (auto& c : grad) c /= gn;
  // second spanning point: on the line and Hermitian-orthogonal to p
  const Vec3 dir = cross(grad, conj(u));
  return TangentLine{grad, p, ProjPoint(dir)};
}

UPoly line_restriction(const MPoly& f, const TangentLine& line) {
  const Vec3 b = line.base.unit();
  const Vec3 d = line.direction.unit();
  const int deg = std::max(0, f.degree());
  std::array<std::vector<UPoly>, 3> powers;
  for (int i = 0; i < 3; ++i) {
    const UPoly lin({b[static_cast<std::size_t>(i)], d[static_cast<std::size_t>(i)]});
    powers[i].push_back(UPoly({1.0}));
    for (int k = 1; k <= deg; ++k) powers[i].push_back(powers[i].back() * lin);
  }
  UPoly out;
  for (const auto& [m, c] : f.terms()) out = out + c * (powers[0][m[0]] * powers[1][m[1]] * powers[2][m[2]]);
  return out;
}

int contact_order(const MPoly& f, const TangentLine& line, double tol) {
  return vanishing_order(line_restriction(f, line), 0.0, tol);
}

LineIntersections line_intersections(const MPoly& f, const TangentLine& line, double tol) {
  const UPoly q = line_restriction(f, line);
  LineIntersections out;
  out.contact = vanishing_order(q, 0.0, tol);
  const UPoly core = q.trimmed(1e-12);
  out.at_infinity = f.degree() - core.degree();
  if (core.degree() >= 1) {
    RootOptions opts;
    opts.residual_tol = 1e-6;
    RootSet rs;
    try {
      rs = all_roots(core, opts);
    } catch (const NonConvergence& e) {
      rs = e.best();
    }
    for (const Complex t : rs.raw) (std::abs(t) <= kBaseRadius ? out.near_base : out.elsewhere) += 1;
  }
  return out;
}

FlexRecord FlexRecord::from_contact(const ProjPoint& p, int contact_order) {
  if (contact_order == 3) return FlexRecord{p, 3, 1, 1, {1, 2, 4}};
  if (contact_order == 4) return FlexRecord{p, 4, 2, 2, {1, 2, 5}};
  throw Error(ErrorKind::Unsupported, "a flex of a quartic has contact order 3 or 4");
}

int FlexSet::weight_sum() const {
  int s = 0;
  for (const auto& r : flexes) s += r.weight;
  return s;
}

int FlexSet::ordinary_count() const {
  return static_cast<int>(std::count_if(flexes.begin(), flexes.end(), [](const auto& r) { return r.weight == 1; }));
}

int FlexSet::hyperflex_count() const {
  return static_cast<int>(std::count_if(flexes.begin(), flexes.end(), [](const auto& r) { return r.weight == 2; }));
}

Mat3 generic_frame(int attempt) {
  // Gram-Schmidt on a seeded random complex matrix; the bit-level mapping
  // to [-1, 1) keeps the frame identical across standard libraries
  std::mt19937_64 rng(0x5eed0f1e8ULL + static_cast<unsigned long long>(attempt));
  auto uniform = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  std::array<Vec3, 3> cols;
  for (auto& c : cols)
    for (auto& x : c) {
      const double re = uniform();
      x = Complex(re, uniform());
    }
  for (int k = 0; k < 3; ++k) {
    for (int j = 0; j < k; ++j) {
      const Complex proj = hdot(cols[j], cols[k]);
      for (int i = 0; i < 3; ++i) cols[k][i] -= proj * cols[j][i];
    }
    const double n = norm(cols[k]);
    for (auto& x : cols[k]) x /= n;
  }
  Mat3 m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = cols[j][i];
  return m;
}

FlexSet find_flexes(const MPoly& f, const FlexOptions& opts) {
  if (!f.is_homogeneous()) throw Error(ErrorKind::NotHomogeneous, "curve form must be homogeneous");
  if (f.degree() != 4) throw Error(ErrorKind::NotQuartic, "curve form has degree " + std::to_string(f.degree()));
  if (!opts.tol.valid()) throw Error(ErrorKind::Unsupported, "tolerances must be positive");

  std::vector<Mat3> frames;
  if (opts.frame) {
    frames = {*opts.frame, *opts.frame * permutation(1, 2), *opts.frame * permutation(0, 2)};
  } else {
    for (int k = 0; k < 3; ++k) frames.push_back(generic_frame(k));
  }

  const FlexSystem sys(f);
  const int expected = expected_count(3, 1);
  FlexSet last;
  bool have_last = false;
  for (std::size_t attempt = 0; attempt < frames.size(); ++attempt) {
    try {
      for (int tighten : {1, 4}) {
        FlexSet set = run_pass(f, sys, frames[attempt], tighten, opts.tol);
        set.diagnostics.frame_attempts = static_cast<int>(attempt) + 1;
        set.diagnostics.refinement_passes = tighten == 1 ? 1 : 2;
        if (set.weight_sum() == expected) return set;
        last = std::move(set);
        have_last = true;
      }
      // an explicit frame only switches charts on degeneracy
      if (opts.frame) break;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateLeadingCoefficient || attempt + 1 == frames.size()) throw;
    }
  }
  if (!have_last) throw Error(ErrorKind::WeightSumMismatch, "no frame produced a flex set");
  throw WeightSumMismatch("flex weights sum to " + std::to_string(last.weight_sum()) + ", expected " +
                              std::to_string(expected),
                          last);
}

int expected_count(int genus, int q) {
  if (genus < 2 || q < 1) throw Error(ErrorKind::Unsupported, "expected_count needs genus >= 2 and q >= 1");
  if (q == 1) return genus * (genus * genus - 1);
  return (2 * q - 1) * (2 * q - 1) * (genus - 1) * (genus - 1) * genus;
}

}  // namespace flexkit
