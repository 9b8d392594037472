#include "flatstrata/decompose.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

#include "flatstrata/error.hpp"

namespace flatstrata {

namespace {

std::optional<Rational> exact_sqrt(const Rational& r) {
  if (r.sign() < 0) return std::nullopt;
  mpz_class n = r.num(), d = r.den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
  return Rational(mpq_class(sn, sd));
}

Rational slope_of(const Direction& dir) {
  return Rational(static_cast<long>(dir.p()), static_cast<long>(dir.q()));
}

// One step of the upward flow: from a point on the bottom of its cylinder to
// the point where the trajectory reaches the top.
Segment flow(const FlatSurface& m, const BoundaryPoint& pt, const Rational& slope) {
  const auto& d = m.diagram();
  std::size_t j = d.cyl_bottom(pt.label);
  Rational dx = slope * m.height(j);
  Rational x = m.pos_bottom(pt.label) + pt.offset + dx;
  auto [label, off] = m.top_label_at(j, x - m.twist(j));
  return {j, pt, {label, off}, {dx, m.height(j)}};
}

mpz_class metric_denominator(const FlatSurface& m) {
  mpz_class den = 1;
  for (auto& [l, w] : m.metrics().widths) den = lcm(den, w.den());
  for (auto& h : m.metrics().heights) den = lcm(den, h.den());
  for (auto& t : m.metrics().twists) den = lcm(den, t.den());
  return den;
}

}  // namespace

std::optional<Rational> GeometricCylinder::circumference() const { return exact_sqrt(circumference_squared()); }
std::optional<Rational> GeometricCylinder::height() const { return exact_sqrt(height_squared()); }

Rational DirectionalDecomposition::area() const {
  Rational a = 0;
  for (const auto& c : cylinders) a += c.area;
  return a;
}

const SaddleConnection& DirectionalDecomposition::saddle_connection(Label prong) const {
  for (const auto& s : saddle_connections)
    if (s.prong == prong) return s;
  throw Error(ErrorCode::BadInput, "no saddle connection from prong " + std::to_string(prong));
}

std::uint64_t tracing_budget(const FlatSurface& m, const Direction& dir) {
  if (const char* env = std::getenv("FLATSTRATA_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  mpz_class den = metric_denominator(m);
  Rational bound = Rational(16) * Rational(static_cast<long>(std::llabs(dir.p()) + dir.q())) * m.area() *
                       Rational(mpz_class(den * den)) + Rational(64);
  mpz_class b = bound.floor().num();
  if (!b.fits_ulong_p()) return UINT64_MAX;
  return b.get_ui();
}

SaddleConnection trace_separatrix(const FlatSurface& m, const Direction& dir, Label prong) {
  if (!m.diagram().has_label(prong)) throw Error(ErrorCode::BadInput, "unknown prong " + std::to_string(prong));
  SaddleConnection sc{prong, dir, {0, 0}, {}};
  if (dir.is_horizontal()) {
    sc.holonomy = {m.width(prong), 0};
    return sc;
  }
  Rational slope = slope_of(dir);
  std::uint64_t budget = tracing_budget(m, dir);
  BoundaryPoint cur{prong, 0};
  for (std::uint64_t steps = 0;; ++steps) {
    if (steps >= budget)
      throw Error(ErrorCode::Budget, "separatrix from " + std::to_string(prong) + " in direction " + dir.str() +
                                         " exceeded " + std::to_string(budget) + " crossings");
    Segment s = flow(m, cur, slope);
    sc.holonomy = sc.holonomy + s.displacement;
    sc.segments.push_back(s);
    if (s.to.offset.is_zero()) break;
    cur = s.to;
  }
  return sc;
}

namespace {

DirectionalDecomposition horizontal_decomposition(const FlatSurface& m) {
  DirectionalDecomposition out{Direction::horizontal(), {}, {}};
  const auto& d = m.diagram();
  for (Label l : d.labels()) out.saddle_connections.push_back(trace_separatrix(m, out.direction, l));
  for (std::size_t j = 0; j < m.cylinder_count(); ++j) {
    const auto& w = d.cylinders()[j];
    GeometricCylinder c;
    c.direction = out.direction;
    c.strips.push_back({j, {w.bottom[0], 0}, 0, m.circumference(j), 0, m.height(j)});
    c.core = {m.circumference(j), 0};
    c.cross_section = m.circumference(j);
    c.area = m.cylinder_area(j);
    for (Label l : w.top) {
      c.left.push_back(l);
      c.left_points.push_back({m.twist(j) + m.pos_top(l), m.height(j)});
    }
    for (Label l : w.bottom) {
      c.right.push_back(l);
      c.right_points.push_back({m.pos_bottom(l), 0});
    }
    out.cylinders.push_back(std::move(c));
  }
  return out;
}

}  // namespace

DirectionalDecomposition decompose(const FlatSurface& m, const Direction& dir) {
  if (dir.is_horizontal()) return horizontal_decomposition(m);
  const auto& d = m.diagram();
  Rational slope = slope_of(dir);
  DirectionalDecomposition out{dir, {}, {}};

  std::map<Label, std::set<Rational>> cuts;
  for (Label l : d.labels()) cuts[l].insert(Rational(0));
  for (Label l : d.labels()) {
    SaddleConnection sc = trace_separatrix(m, dir, l);
    for (const auto& s : sc.segments) cuts[s.to.label].insert(s.to.offset);
    out.saddle_connections.push_back(std::move(sc));
  }

  // Intervals of the horizontal saddle connections cut at every crossing;
  // the flow permutes them and each orbit sweeps out one cylinder.
  std::map<BoundaryPoint, Rational> length;
  for (auto& [l, offs] : cuts) {
    std::vector<Rational> v(offs.begin(), offs.end());
    v.push_back(m.width(l));
    for (std::size_t i = 0; i + 1 < v.size(); ++i) length[{l, v[i]}] = v[i + 1] - v[i];
  }
  std::set<BoundaryPoint> seen;
  for (auto& [start, len] : length) {
    if (seen.count(start)) continue;
    GeometricCylinder c;
    c.direction = dir;
    c.cross_section = len;
    Vec2 q{0, 0};
    Rational total_height = 0;
    BoundaryPoint cur = start;
    do {
      seen.insert(cur);
      if (length.at(cur) != len) throw Error(ErrorCode::Malformed, "interval lengths disagree along a cylinder");
      Segment s = flow(m, cur, slope);
      std::size_t j = s.cylinder;
      c.strips.push_back({j, cur, m.pos_bottom(cur.label) + cur.offset, len, slope, m.height(j)});
      if (cur.offset.is_zero()) {
        c.left.push_back(cur.label);
        c.left_points.push_back(q);
      }
      if (cur.offset + len == m.width(cur.label)) {
        c.right.push_back(d.next_bottom(cur.label));
        c.right_points.push_back(q + Vec2{len, 0});
      }
      q = q + s.displacement;
      total_height += m.height(j);
      cur = s.to;
    } while (!(cur == start));
    c.core = q;
    c.area = len * total_height;
    if (c.left.empty() || c.right.empty()) throw Error(ErrorCode::Malformed, "cylinder boundary without a zero");
    out.cylinders.push_back(std::move(c));
  }
  return out;
}

std::optional<GeometricCylinder> vertical_cylinder_through(const FlatSurface& m, Label l) {
  auto dec = decompose(m, Direction::vertical());
  for (auto& c : dec.cylinders) {
    Rational covered = 0;
    for (const auto& s : c.strips)
      if (s.start.label == l) covered += s.length;
    if (covered == m.width(l)) return c;
  }
  return std::nullopt;
}

FlatSurface apply_matrix(const FlatSurface& m, const Matrix2& a) {
  Rational det = a.det();
  if (det.is_zero()) throw Error(ErrorCode::Singular, "matrix is not invertible");
  Direction dir = Direction::of(a.inverse() * Vec2{1, 0});
  if ((a * dir.vector()).x.sign() < 0) return apply_matrix(rotate_pi(m), -a);

  auto dec = decompose(m, dir);
  std::vector<CylinderWords> words;
  Metrics mt;
  for (const auto& sc : dec.saddle_connections) mt.widths[sc.prong] = (a * sc.holonomy).x;
  bool orient = det.sign() > 0;
  for (const auto& c : dec.cylinders) {
    Rational circ = (a * c.core).x;
    mt.heights.push_back(c.area * det.abs() / circ);
    Vec2 top_start = orient ? c.left_points[0] : c.right_points[0];
    Vec2 bottom_start = orient ? c.right_points[0] : c.left_points[0];
    mt.twists.push_back((a * (top_start - bottom_start)).x);
    words.push_back(orient ? CylinderWords{c.left, c.right} : CylinderWords{c.right, c.left});
  }
  return FlatSurface(CylinderDiagram(std::move(words)), std::move(mt));
}

FlatSurface deform_class(const FlatSurface& m, const Direction& dir, const std::vector<std::size_t>& cyls,
                         const Matrix2& g) {
  if (!(g * dir.vector() == dir.vector())) throw Error(ErrorCode::BadParameters, "deformation must fix the direction");
  Matrix2 a = frame_for(dir);
  Matrix2 ga = a * g * a.inverse();  // [[1, t], [0, lambda]] in the frame
  FlatSurface framed = apply_matrix(m, a);
  FlatSurface deformed = stretch_class(shear_class(framed, cyls, ga.b), cyls, ga.d);
  return apply_matrix(deformed, a.inverse());
}

Metrics align_twists(const FlatSurface& m, const std::vector<std::size_t>& adjustable,
                     const std::vector<AlignmentDemand>& demands) {
  const auto& d = m.diagram();
  std::set<std::size_t> free(adjustable.begin(), adjustable.end());
  std::map<std::size_t, Rational> fixed;
  for (const auto& dm : demands) {
    std::size_t j = dm.cylinder;
    if (j >= m.cylinder_count() || !d.has_label(dm.bottom.label) || !d.has_label(dm.top.label) ||
        d.cyl_bottom(dm.bottom.label) != j || d.cyl_top(dm.top.label) != j)
      throw Error(ErrorCode::BadParameters, "demand does not name a bottom and a top point of its cylinder");
    const Rational& c = m.circumference(j);
    Rational t = (m.pos_bottom(dm.bottom.label) + dm.bottom.offset - m.pos_top(dm.top.label) - dm.top.offset).mod(c);
    if (auto it = fixed.find(j); it != fixed.end()) {
      if (it->second != t) throw Error(ErrorCode::Infeasible, "conflicting demands on cylinder " + std::to_string(j));
      continue;
    }
    if (!free.count(j) && m.twist(j) != t)
      throw Error(ErrorCode::Infeasible, "cylinder " + std::to_string(j) + " is not adjustable");
    fixed[j] = t;
  }
  Metrics out = m.metrics();
  for (auto& [j, t] : fixed) out.twists[j] = t;
  return out;
}

}  // namespace flatstrata
