#include "flexkit/group.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>

namespace flexkit {

namespace {

Mat3 scaled_to_max(const Mat3& m) {
  std::size_t bi = 0, bj = 0;
  double best = -1;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (std::abs(m[i][j]) > best * (1 + 1e-12)) {
        best = std::abs(m[i][j]);
        bi = i;
        bj = j;
      }
  if (!(best > 0) || !std::isfinite(best)) throw Error(ErrorKind::Unsupported, "transform matrix is zero");
  Mat3 out = m;
  const Complex s = m[bi][bj];
  for (auto& row : out)
    for (auto& e : row) e /= s;
  out[bi][bj] = 1.0;
  return out;
}

bool contains_point(const std::vector<ProjPoint>& pts, const ProjPoint& p, double tol) {
  return std::any_of(pts.begin(), pts.end(), [&](const ProjPoint& q) { return same_point(p, q, tol); });
}

// Points of F on the coordinate subspace spanned by the axes in `span`.
void slice_points(const MPoly& f, const std::vector<int>& span, std::vector<ProjPoint>& out, double tol) {
  if (span.size() == 1) {
    Vec3 e{};
    e[static_cast<std::size_t>(span[0])] = 1.0;
    const ProjPoint p(e);
    if (relative_value(f, p) <= 1e-12) out.push_back(p);
    return;
  }
  if (span.size() != 2) return;
  const int i = span[0], j = span[1], k = 3 - i - j;
  // binary form on x_k = 0; chart x_j = 1 plus the point e_i
  const MPoly binary = restrict(f, Pin{static_cast<Axis>(k), 0.0});
  if (binary.is_zero()) throw Error(ErrorKind::Unsupported, "curve contains a fixed line");
  const UPoly u = binary.substitute(static_cast<Axis>(j), 1.0).as_univariate(static_cast<Axis>(i));
  if (u.degree() >= 1) {
    RootSet rs;
    try {
      rs = all_roots(u);
    } catch (const NonConvergence& e) {
      rs = e.best();
    }
    for (const Complex r : rs.raw) {
      Vec3 v{};
      v[static_cast<std::size_t>(i)] = r;
      v[static_cast<std::size_t>(j)] = 1.0;
      const ProjPoint p(v);
      if (!contains_point(out, p, tol)) out.push_back(p);
    }
  }
  if (u.degree() < binary.degree()) {
    Vec3 v{};
    v[static_cast<std::size_t>(i)] = 1.0;
    const ProjPoint p(v);
    if (!contains_point(out, p, tol)) out.push_back(p);
  }
}

}  // namespace

Transform::Transform(const Mat3& m) : m_(scaled_to_max(m)) {
  if (std::abs(det(m_)) <= 1e-10) throw Error(ErrorKind::Unsupported, "transform is not invertible");
}

bool Transform::is_diagonal() const {
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j && m_[i][j] != Complex(0.0)) return false;
  return true;
}

bool Transform::equals(const Transform& other, double tol) const {
  // both are scaled to a unit max entry; match the scalar at other's max
  std::size_t bi = 0, bj = 0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (std::abs(other.m_[i][j]) > std::abs(other.m_[bi][bj])) {
        bi = i;
        bj = j;
      }
  const Complex lambda = m_[bi][bj] / other.m_[bi][bj];
  double diff = 0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) diff = std::max(diff, std::abs(m_[i][j] - lambda * other.m_[i][j]));
  return diff <= tol * max_abs(m_);
}

Transform sigma() { return Transform(diag3(-1.0, 1.0, 1.0)); }
Transform tau() { return Transform(diag3(1.0, -1.0, 1.0)); }

GroupAction GroupAction::generate(const std::vector<Transform>& generators, std::size_t max_order) {
  GroupAction g;
  g.elements_.push_back(Transform::identity());
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const Transform current = g.elements_[queue.front()];
    queue.pop_front();
    for (const auto& gen : generators) {
      const Transform next = gen.compose(current);
      if (g.index_of(next) >= 0) continue;
      if (g.elements_.size() == max_order) throw Error(ErrorKind::Unsupported, "group closure exceeds max order");
      g.elements_.push_back(next);
      queue.push_back(g.elements_.size() - 1);
    }
  }
  return g;
}

GroupAction GroupAction::klein_four() { return generate({sigma(), tau()}); }

int GroupAction::index_of(const Transform& g) const {
  for (std::size_t k = 0; k < elements_.size(); ++k)
    if (elements_[k].equals(g)) return static_cast<int>(k);
  return -1;
}

Orbit orbit(const GroupAction& g, const ProjPoint& p, double tol) {
  Orbit o;
  for (const auto& e : g.elements()) {
    const ProjPoint q = e.apply(p);
    if (!contains_point(o.points, q, tol)) o.points.push_back(q);
  }
  o.stabilizer_order = g.order() / o.size();
  return o;
}

std::vector<Transform> stabilizer(const GroupAction& g, const ProjPoint& p, double tol) {
  std::vector<Transform> out;
  for (const auto& e : g.elements())
    if (same_point(e.apply(p), p, tol)) out.push_back(e);
  return out;
}

bool preserves(const GroupAction& g, const MPoly& f, double tol) {
  for (const auto& e : g.elements()) {
    const MPoly image = f.compose(e.matrix());
    // scalar from the largest coefficient of F
    Monomial top{};
    double best = -1;
    for (const auto& [m, c] : f.terms())
      if (std::abs(c) > best) {
        best = std::abs(c);
        top = m;
      }
    if (best <= 0) return true;
    const Complex lambda = image.coeff(top[0], top[1], top[2]) / f.coeff(top[0], top[1], top[2]);
    if (distance(image, lambda * f) > tol) return false;
  }
  return true;
}

std::vector<Orbit> fixed_locus(const GroupAction& g, const MPoly& f, const Tolerances& tol) {
  if (!preserves(g, f)) throw Error(ErrorKind::NonInvariantCurve, "curve is not invariant under the group");
  std::vector<ProjPoint> points;
  for (const auto& e : g.elements()) {
    if (e.equals(Transform::identity())) continue;
    if (!e.is_diagonal()) throw Error(ErrorKind::Unsupported, "fixed_locus supports diagonal transforms only");
    const Mat3& m = e.matrix();
    // eigenspaces: coordinate axes sharing a diagonal entry
    std::vector<std::vector<int>> spaces;
    for (int i = 0; i < 3; ++i) {
      auto it = std::find_if(spaces.begin(), spaces.end(), [&](const std::vector<int>& s) {
        return std::abs(m[static_cast<std::size_t>(s[0])][static_cast<std::size_t>(s[0])] -
                        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)]) <= 1e-12;
      });
      if (it == spaces.end())
        spaces.push_back({i});
      else
        it->push_back(i);
    }
    for (const auto& s : spaces) {
      std::vector<ProjPoint> found;
      slice_points(f, s, found, tol.point_merge);
      for (const auto& p : found)
        if (!contains_point(points, p, tol.point_merge)) points.push_back(p);
    }
  }
  std::sort(points.begin(), points.end(), projective_less);
  std::vector<Orbit> out;
  std::vector<bool> used(points.size(), false);
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (used[k]) continue;
    Orbit o = orbit(g, points[k], tol.point_merge);
    for (const auto& q : o.points)
      for (std::size_t j = k; j < points.size(); ++j)
        if (!used[j] && same_point(points[j], q, tol.point_merge)) used[j] = true;
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<FlexOrbit> orbit_decomposition(const GroupAction& g, const std::vector<FlexRecord>& flexes, double tol) {
  std::vector<FlexOrbit> out;
  std::vector<bool> used(flexes.size(), false);
  for (std::size_t k = 0; k < flexes.size(); ++k) {
    if (used[k]) continue;
    FlexOrbit fo;
    fo.orbit = orbit(g, flexes[k].point, tol);
    fo.contact_order = flexes[k].contact_order;
    fo.weight = flexes[k].weight;
    for (const auto& q : fo.orbit.points) {
      std::size_t hit = flexes.size();
      for (std::size_t j = 0; j < flexes.size(); ++j)
        if (same_point(flexes[j].point, q, tol)) {
          hit = j;
          break;
        }
      if (hit == flexes.size())
        throw Error(ErrorKind::NonInvariantCurve, "flex set is not closed under the group action");
      if (flexes[hit].contact_order != fo.contact_order)
        throw Error(ErrorKind::MixedWeightOrbit, "orbit mixes contact orders " + std::to_string(fo.contact_order) +
                                                     " and " + std::to_string(flexes[hit].contact_order));
      used[hit] = true;
      fo.members.push_back(hit);
    }
    out.push_back(std::move(fo));
  }
  return out;
}

std::string OrbitShape::render(const std::vector<std::pair<int, int>>& side) {
  if (side.empty()) return "-";
  std::string s;
  for (const auto& [count, size] : side) {
    if (!s.empty()) s += ", ";
    s += std::to_string(count) + "_" + std::to_string(size);
  }
  return s;
}

std::string OrbitShape::to_string() const { return render(ordinary) + " | " + render(hyperflex); }

OrbitShape orbit_shape(const std::vector<FlexOrbit>& orbits) {
  std::map<int, int> ordinary, hyperflex;
  for (const auto& o : orbits) ++(o.weight == 2 ? hyperflex : ordinary)[o.orbit.size()];
  OrbitShape shape;
  for (const auto& [size, count] : ordinary) shape.ordinary.emplace_back(count, size);
  for (const auto& [size, count] : hyperflex) shape.hyperflex.emplace_back(count, size);
  return shape;
}

}  // namespace flexkit
