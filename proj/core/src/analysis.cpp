#include "flatstrata/analysis.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "flatstrata/error.hpp"

namespace flatstrata {

namespace {

using Polygon = std::vector<Vec2>;

// Sutherland-Hodgman against a convex counterclockwise clip polygon.
Polygon clip(const Polygon& subject, const Polygon& window) {
  Polygon out = subject;
  for (std::size_t i = 0; i < window.size() && !out.empty(); ++i) {
    const Vec2& e1 = window[i];
    const Vec2& e2 = window[(i + 1) % window.size()];
    Vec2 edge = e2 - e1;
    Polygon in = std::move(out);
    out.clear();
    for (std::size_t k = 0; k < in.size(); ++k) {
      const Vec2& s = in[k];
      const Vec2& e = in[(k + 1) % in.size()];
      Rational ds = cross(edge, s - e1), de = cross(edge, e - e1);
      bool s_in = ds.sign() >= 0, e_in = de.sign() >= 0;
      if (s_in) out.push_back(s);
      if (s_in != e_in) {
        Rational t = ds / (ds - de);
        out.push_back(s + t * (e - s));
      }
    }
  }
  return out;
}

Rational polygon_area(const Polygon& p) {
  Rational a = 0;
  for (std::size_t i = 0; i < p.size(); ++i) a += cross(p[i], p[(i + 1) % p.size()]);
  return a.abs() / Rational(2);
}

Polygon strip_polygon(const Strip& s, const Rational& shift) {
  Rational dx = s.slope * s.height;
  Rational x = s.x0 + shift;
  return {{x, 0}, {x + s.length, 0}, {x + s.length + dx, s.height}, {x + dx, s.height}};
}

std::pair<Rational, Rational> x_range(const Polygon& p) {
  Rational lo = p[0].x, hi = p[0].x;
  for (const auto& v : p) {
    lo = min(lo, v.x);
    hi = max(hi, v.x);
  }
  return {lo, hi};
}

// Overlap length of [0, la] and [t, t + lb].
Rational section_overlap(const Rational& t, const Rational& la, const Rational& lb) {
  Rational lo = max(Rational(0), t), hi = min(la, t + lb);
  return hi > lo ? hi - lo : Rational(0);
}

// Integral of section_overlap over [s, e]; the integrand is linear between
// its four corners.
Rational section_integral(const Rational& s, const Rational& e, const Rational& la, const Rational& lb) {
  if (!(s < e) || !(s < la) || !(-lb < e)) return 0;
  std::vector<Rational> ts{s, e};
  for (const Rational& bp : {-lb, Rational(0), la - lb, la})
    if (s < bp && bp < e) ts.push_back(bp);
  std::sort(ts.begin(), ts.end());
  Rational total = 0;
  Rational prev = section_overlap(ts[0], la, lb);
  for (std::size_t i = 1; i < ts.size(); ++i) {
    Rational f = section_overlap(ts[i], la, lb);
    total += (ts[i] - ts[i - 1]) * (prev + f) / Rational(2);
    prev = std::move(f);
  }
  return total;
}

// Sections of one cylinder inside a horizontal cylinder: disjoint intervals
// of the bottom circle, all moving with the same slope.
struct Band {
  Rational slope;
  std::vector<std::pair<Rational, Rational>> intervals;  // start, length
};

// Strips of c grouped by horizontal cylinder, with abutting strips merged.
std::map<std::size_t, Band> bands(const FlatSurface& m, const GeometricCylinder& c) {
  std::map<std::size_t, Band> out;
  for (const auto& s : c.strips) {
    auto& b = out[s.cylinder];
    b.slope = s.slope;
    b.intervals.push_back({s.x0, s.length});
  }
  for (auto& [j, b] : out) {
    auto& iv = b.intervals;
    std::sort(iv.begin(), iv.end());
    std::vector<std::pair<Rational, Rational>> merged;
    for (auto& x : iv) {
      if (!merged.empty() && merged.back().first + merged.back().second == x.first)
        merged.back().second += x.second;
      else
        merged.push_back(x);
    }
    const Rational& circ = m.circumference(j);
    if (merged.size() > 1 && merged.back().first + merged.back().second == merged.front().first + circ) {
      merged.back().second += merged.front().second;
      merged.erase(merged.begin());
    }
    iv = std::move(merged);
  }
  return out;
}

// Two sections spanning the full height h of a cylinder of circumference c.
// At height y the section of b, shifted by k circumferences, starts
// t(y) + k c after the section of a, so the overlap is the integral over y of
// sum_k g(t(y) + k c). Substituting t for y turns this into an integral of a
// c-periodic function, each full period contributing la * lb.
Rational band_overlap(const Rational& c, const Rational& h, const Rational& xa, const Rational& la,
                      const Rational& sa, const Rational& xb, const Rational& lb, const Rational& sb) {
  Rational t0 = xb - xa;
  Rational dt = sb - sa;
  if (dt.is_zero()) {
    Rational total = 0;
    Rational kmin = ((-lb - t0) / c).floor(), kmax = ((la - t0) / c).floor() + Rational(1);
    for (Rational k = kmin; k <= kmax; k += Rational(1)) total += section_overlap(t0 + k * c, la, lb);
    return total * h;
  }
  Rational t1 = t0 + dt * h;
  Rational lo = min(t0, t1), hi = max(t0, t1);
  Rational periods = ((hi - lo) / c).floor();
  lo += periods * c;
  // shifts k with t + k c in (-lb, la) for some t in [lo, hi]
  Rational total = periods * la * lb;
  Rational kmin = ((-lb - hi) / c).floor(), kmax = ((la - lo) / c).floor() + Rational(1);
  for (Rational k = kmin; k <= kmax; k += Rational(1)) total += section_integral(lo + k * c, hi + k * c, la, lb);
  return total / dt.abs();
}

Rational strip_overlap_clipped(const FlatSurface& m, const Strip& a, const Strip& b) {
  if (a.cylinder != b.cylinder) return 0;
  const Rational& c = m.circumference(a.cylinder);
  Polygon pa = strip_polygon(a, 0);
  Polygon pb = strip_polygon(b, 0);
  auto [alo, ahi] = x_range(pa);
  auto [blo, bhi] = x_range(pb);
  Rational kmin = ((alo - bhi) / c).floor(), kmax = ((ahi - blo) / c).floor() + Rational(1);
  Rational total = 0;
  for (Rational k = kmin; k <= kmax; k += Rational(1)) {
    Polygon inter = clip(pa, strip_polygon(b, k * c));
    if (inter.size() >= 3) total += polygon_area(inter);
  }
  return total;
}

}  // namespace

Rational overlap_area(const FlatSurface& m, const GeometricCylinder& a, const GeometricCylinder& b) {
  auto ba = bands(m, a), bb = bands(m, b);
  Rational total = 0;
  for (const auto& [j, x] : ba) {
    auto it = bb.find(j);
    if (it == bb.end()) continue;
    const Band& y = it->second;
    for (const auto& [xa, la] : x.intervals)
      for (const auto& [xb, lb] : y.intervals)
        total += band_overlap(m.circumference(j), m.height(j), xa, la, x.slope, xb, lb, y.slope);
  }
  return total;
}

Rational overlap_area_by_clipping(const FlatSurface& m, const GeometricCylinder& a, const GeometricCylinder& b) {
  Rational total = 0;
  for (const auto& sa : a.strips)
    for (const auto& sb : b.strips) total += strip_overlap_clipped(m, sa, sb);
  return total;
}

Rational proportion(const FlatSurface& m, const GeometricCylinder& x, const std::vector<GeometricCylinder>& e) {
  Rational inside = 0;
  for (const auto& c : e) inside += overlap_area(m, x, c);
  return inside / x.area;
}

// ---------------------------------------------------------------- symmetries

std::vector<AffineSymmetry> translation_isoms(const FlatSurface& m1, const FlatSurface& m2) {
  std::vector<AffineSymmetry> out;
  for (auto& phi : translation_label_maps(m1, m2))
    out.push_back({Matrix2::identity(), phi, cylinder_map(m1, m2, phi), {}});
  return out;
}

std::vector<AffineSymmetry> minus_id_involutions(const FlatSurface& m) {
  const auto& d = m.diagram();
  FlatSurface r = rotate_pi(m);
  std::vector<AffineSymmetry> out;
  for (auto& phi : translation_label_maps(r, m)) {
    bool involution = true;
    for (auto& [a, b] : phi)
      if (phi.at(b) != a) involution = false;
    if (!involution) continue;
    AffineSymmetry sym{-Matrix2::identity(), phi, cylinder_map(r, m, phi), {}};
    // Zeros: the left end of l goes to the right end of phi(l).
    std::set<int> fixed_zeros;
    for (Label l : d.labels())
      if (d.left_vertex(l) == d.right_vertex(phi.at(l))) fixed_zeros.insert(d.left_vertex(l));
    for (int z : fixed_zeros) sym.fixed_points.push_back({FixedPoint::Kind::Zero, z, 0, 0, {0, 0}});
    for (Label l : d.labels())
      if (phi.at(l) == l)
        sym.fixed_points.push_back({FixedPoint::Kind::SaddleMidpoint, -1, l, 0, {m.width(l) / Rational(2), 0}});
    for (std::size_t j = 0; j < m.cylinder_count(); ++j) {
      if (sym.cylinders[j] != j) continue;
      // On cylinder j the map is (x, y) -> (s - x, h - y) mod c.
      Label b = r.diagram().cylinders()[j].bottom[0];
      Rational delta = m.pos_bottom(phi.at(b)) - r.pos_bottom(b);
      const Rational& c = m.circumference(j);
      Rational s = (m.twist(j) + delta).mod(c);
      Rational y = m.height(j) / Rational(2);
      for (Rational x : {s / Rational(2), (s / Rational(2) + c / Rational(2)).mod(c)}) {
        Rational image = (s - x).mod(c);
        if (image != x) throw Error(ErrorCode::Malformed, "fixed point certificate failed");
        sym.fixed_points.push_back({FixedPoint::Kind::Interior, -1, 0, j, {x, y}});
      }
    }
    out.push_back(std::move(sym));
  }
  return out;
}

PrymResult is_prym(const FlatSurface& m) {
  if (!(m.diagram().profile() == SingularityProfile::from_orders({4})))
    throw Error(ErrorCode::UnsupportedStratum, "Prym detection is implemented for H(4) only");
  PrymResult res;
  auto invs = minus_id_involutions(m);
  res.involutions = invs.size();
  for (auto& s : invs) {
    if (s.fixed_points.size() == 4) {
      res.is_prym = true;
      res.witness = s;
      break;
    }
  }
  return res;
}

// ---------------------------------------------------------------- spin parity

namespace {

struct Passage {
  std::size_t cylinder;
  Rational xb;
  Rational dx;
};

void simple_cycles(const CylinderDiagram& d, std::size_t start, std::size_t at, std::vector<bool>& on_path,
                   std::vector<Label>& path, std::vector<std::vector<Label>>& out) {
  for (Label l : d.cylinders()[at].top) {
    std::size_t next = d.cyl_bottom(l);
    if (next == start) {
      path.push_back(l);
      out.push_back(path);
      path.pop_back();
    } else if (next > start && !on_path[next]) {
      on_path[next] = true;
      path.push_back(l);
      simple_cycles(d, start, next, on_path, path, out);
      path.pop_back();
      on_path[next] = false;
    }
  }
}

int parity_of(const std::vector<std::vector<int>>& gram, const std::vector<int>& qv) {
  std::size_t n = qv.size();
  using Vec = std::vector<int>;
  auto form = [&](const Vec& u, const Vec& v) {
    int s = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (u[i])
        for (std::size_t j = 0; j < n; ++j)
          if (v[j]) s ^= gram[i][j];
    return s;
  };
  auto quad = [&](const Vec& u) {
    int s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!u[i]) continue;
      s ^= qv[i];
      for (std::size_t j = i + 1; j < n; ++j)
        if (u[j]) s ^= gram[i][j];
    }
    return s;
  };
  auto add = [&](Vec a, const Vec& b) {
    for (std::size_t i = 0; i < n; ++i) a[i] ^= b[i];
    return a;
  };
  std::vector<Vec> pool;
  for (std::size_t i = 0; i < n; ++i) {
    Vec e(n, 0);
    e[i] = 1;
    pool.push_back(e);
  }
  int arf = 0, pairs = 0;
  while (true) {
    std::optional<std::pair<std::size_t, std::size_t>> hit;
    for (std::size_t i = 0; i < pool.size() && !hit; ++i)
      for (std::size_t j = i + 1; j < pool.size() && !hit; ++j)
        if (form(pool[i], pool[j])) hit = {i, j};
    if (!hit) break;
    Vec x = pool[hit->first], y = pool[hit->second];
    arf ^= quad(x) & quad(y);
    ++pairs;
    std::vector<Vec> rest;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (i == hit->first || i == hit->second) continue;
      Vec z = pool[i];
      if (form(z, y)) z = add(z, x);
      if (form(pool[i], x)) z = add(z, y);
      rest.push_back(z);
    }
    pool = std::move(rest);
  }
  for (const auto& z : pool)
    if (quad(z)) throw Error(ErrorCode::Malformed, "quadratic form does not vanish on the radical");
  return pairs * 1000 + arf;
}

}  // namespace

int spin_parity(const FlatSurface& m) {
  const auto& d = m.diagram();
  for (int k : d.profile().orders)
    if (k % 2 != 0) throw Error(ErrorCode::UnsupportedStratum, "spin parity needs zeros of even order");
  std::vector<std::vector<Label>> cycles;
  for (std::size_t s = 0; s < d.cylinder_count(); ++s) {
    std::vector<bool> on_path(d.cylinder_count(), false);
    on_path[s] = true;
    std::vector<Label> path;
    simple_cycles(d, s, s, on_path, path, cycles);
  }
  std::size_t k = d.cylinder_count(), g = cycles.size(), n = k + g;
  // Transversal number i crosses label l at offset w_l (i + 1) / (g + 1).
  auto offset = [&](Label l, std::size_t i) {
    return m.width(l) * Rational(static_cast<long>(i + 1), static_cast<long>(g + 1));
  };
  std::vector<std::vector<Passage>> curves;
  for (std::size_t i = 0; i < g; ++i) {
    const auto& cyc = cycles[i];
    std::vector<Passage> p;
    for (std::size_t a = 0; a < cyc.size(); ++a) {
      Label in = cyc[a], out = cyc[(a + 1) % cyc.size()];
      std::size_t j = d.cyl_bottom(in);
      Rational xb = m.pos_bottom(in) + offset(in, i);
      Rational xt = m.twist(j) + m.pos_top(out) + offset(out, i);
      p.push_back({j, xb, (xt - xb).mod(m.circumference(j))});
    }
    curves.push_back(std::move(p));
  }
  std::vector<std::vector<int>> gram(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < g; ++i)
    for (const auto& p : curves[i]) {
      gram[p.cylinder][k + i] ^= 1;
      gram[k + i][p.cylinder] ^= 1;
    }
  for (std::size_t a = 0; a < g; ++a)
    for (std::size_t b = a + 1; b < g; ++b) {
      int s = 0;
      for (const auto& p : curves[a])
        for (const auto& q : curves[b]) {
          if (p.cylinder != q.cylinder) continue;
          const Rational& c = m.circumference(p.cylinder);
          Rational lo = ((p.xb - q.xb) / c).floor();
          Rational hi = ((p.xb + p.dx - q.xb - q.dx) / c).floor();
          s ^= static_cast<int>((lo - hi).abs().num().get_si() & 1);
        }
      gram[k + a][k + b] = gram[k + b][k + a] = s;
    }
  // Core curves and upward transversals have winding 0, so q = 1 on each.
  std::vector<int> qv(n, 1);
  int packed = parity_of(gram, qv);
  int pairs = packed / 1000;
  if (pairs != d.genus()) throw Error(ErrorCode::Malformed, "core curves and transversals do not span homology");
  return packed % 1000;
}

ComponentTag component(const CylinderDiagram& d) {
  const auto& p = d.profile();
  bool h4 = p == SingularityProfile::from_orders({4});
  bool h2 = p == SingularityProfile::from_orders({2});
  bool h11 = p == SingularityProfile::from_orders({1, 1});
  if (h2 || h11) return ComponentTag::Hyperelliptic;
  if (!h4) throw Error(ErrorCode::UnsupportedStratum, "component classification covers H(4), H(2), H(1,1)");
  FlatSurface m = build(d, default_metrics(d));
  bool hyp = false;
  for (auto& s : minus_id_involutions(m))
    if (s.fixed_points.size() == static_cast<std::size_t>(2 * d.genus() + 2)) hyp = true;
  int parity = spin_parity(m);
  if (hyp != (parity == 0))
    throw Error(ErrorCode::Malformed, "involution search and spin parity disagree on " + d.str());
  return hyp ? ComponentTag::Hyperelliptic : ComponentTag::Odd;
}

// ---------------------------------------------------------------- lattices

namespace {

mpz_class as_integer(const Rational& r) {
  if (!r.is_integer()) throw Error(ErrorCode::Malformed, "expected an integer");
  return r.num();
}

}  // namespace

std::pair<Vec2, Vec2> lattice_basis(const std::vector<Vec2>& gens) {
  mpz_class den = 1;
  for (const auto& v : gens) den = lcm(lcm(den, v.x.den()), v.y.den());
  Rational scale{mpz_class(den)};
  mpz_class gx = 0, px = 0, py = 0;
  for (const auto& v : gens) {
    mpz_class x = as_integer(v.x * scale), y = as_integer(v.y * scale);
    if (y == 0) {
      gx = gcd(gx, x);
      continue;
    }
    if (py == 0) {
      px = x;
      py = y;
      continue;
    }
    mpz_class g, a, b;
    mpz_gcdext(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t(), py.get_mpz_t(), y.get_mpz_t());
    mpz_class nx = a * px + b * x, ny = g;
    mpz_class rx = (y / g) * px - (py / g) * x;  // y-component cancels
    px = nx;
    py = ny;
    gx = gcd(gx, rx);
  }
  if (gx == 0 || py == 0) throw Error(ErrorCode::BadInput, "vectors do not span a lattice of rank 2");
  gx = abs(gx);
  Vec2 a{Rational(gx) / scale, 0}, b{Rational(px) / scale, Rational(py) / scale};
  // Lagrange reduction.
  while (true) {
    if (norm_squared(b) < norm_squared(a)) std::swap(a, b);
    Rational mu = dot(a, b) / norm_squared(a);
    Rational k = (mu + Rational(1, 2)).floor();
    if (k.is_zero()) break;
    b = b - k * a;
  }
  if (cross(a, b).sign() < 0) b = -b;
  return {a, b};
}

bool lattice_contains(const Vec2& a, const Vec2& b, const Vec2& v) {
  Rational det = cross(a, b);
  if (det.is_zero()) throw Error(ErrorCode::Singular, "degenerate lattice basis");
  Rational s = cross(v, b) / det, t = cross(a, v) / det;
  return s.is_integer() && t.is_integer();
}

bool same_lattice(const Vec2& a1, const Vec2& b1, const Vec2& a2, const Vec2& b2) {
  return lattice_contains(a1, b1, a2) && lattice_contains(a1, b1, b2) && lattice_contains(a2, b2, a1) &&
         lattice_contains(a2, b2, b1);
}

namespace {

// Primitive lattice vector along dir (positive orientation), if any.
std::optional<Vec2> primitive_along(const Vec2& a, const Vec2& b, const Direction& dir) {
  Vec2 u = dir.vector();
  Rational det = cross(a, b);
  // u = s a + t b with rational s, t; scale to the primitive integer combination.
  Rational s = cross(u, b) / det, t = cross(a, u) / det;
  mpz_class den = lcm(s.den(), t.den());
  mpz_class si = (s * Rational(mpz_class(den))).num(), ti = (t * Rational(mpz_class(den))).num();
  mpz_class g = gcd(si, ti);
  if (g == 0) return std::nullopt;
  si /= g;
  ti /= g;
  return Rational(si) * a + Rational(ti) * b;
}

bool degenerate_slit(const SlitTorus& p) {
  auto h = primitive_along(p.alpha, p.beta, Direction::horizontal());
  auto v = primitive_along(p.alpha, p.beta, Direction::of(p.slit));
  if (!h || !v) return false;
  return cross(*h, *v).abs() == p.covolume();
}

}  // namespace

std::optional<Rational> slit_torus_cylinder_proportion(const SlitTorus& p, const Direction& dir) {
  auto v = primitive_along(p.alpha, p.beta, dir);
  if (!v) return std::nullopt;
  Rational white = cross(p.slit, *v).abs();
  if (white >= p.covolume()) return std::nullopt;
  return Rational(1) - white / p.covolume();
}

P12Report p12_isometry_check(const SlitTorus& p1, const SlitTorus& p2, const std::vector<Direction>& samples) {
  auto violated = [](const std::string& why) { return Error(ErrorCode::HypothesisViolated, why); };
  if (!p1.slit.x.is_zero() || !p2.slit.x.is_zero()) throw violated("slits must be vertical");
  if (p1.slit.y.abs() != p2.slit.y.abs() || p1.slit.y.is_zero()) throw violated("slits must have equal nonzero length");
  if (p1.covolume() != p1.area || p2.covolume() != p2.area) throw violated("area must equal lattice covolume");
  if (p1.area < p2.area) throw violated("need Area(P1) >= Area(P2)");
  P12Report rep;
  rep.r = p2.area / p1.area;
  rep.degenerate_slit = degenerate_slit(p2);
  std::vector<Vec2> v1s;
  for (const auto& dir : samples) {
    auto q1 = slit_torus_cylinder_proportion(p1, dir);
    auto q2 = slit_torus_cylinder_proportion(p2, dir);
    if (!q1) continue;  // no cylinder on P1 in this direction
    if (!q2 || *q1 != *q2) throw violated("cylinder proportions differ in direction " + dir.str());
    if (dir == Direction::vertical()) continue;  // parallel to the slit, carries no length data
    Vec2 v1 = *primitive_along(p1.alpha, p1.beta, dir);
    // |det(slit, v2)| = (1 - q2) covol2 with v2 parallel to v1.
    Rational scale = (Rational(1) - *q2) * p2.covolume() / cross(p1.slit, v1).abs();
    Vec2 v2 = scale * v1;
    v1s.push_back(v1);
    rep.derived.push_back(v2);
  }
  bool basis = false;
  for (std::size_t i = 0; i < v1s.size() && !basis; ++i)
    for (std::size_t j = i + 1; j < v1s.size() && !basis; ++j)
      if (cross(v1s[i], v1s[j]).abs() == p1.covolume()) basis = true;
  bool has_horizontal = std::find(samples.begin(), samples.end(), Direction::horizontal()) != samples.end();
  if (!basis || !has_horizontal)
    throw violated("samples must include the horizontal and a direction completing a basis of Lambda1");
  rep.scaled_lattice_contained = true;
  for (const auto& v2 : rep.derived)
    if (!lattice_contains(p2.alpha, p2.beta, v2)) rep.scaled_lattice_contained = false;
  // r Lambda1 in Lambda2 has index r^2 covol1 / covol2 = r, a positive
  // integer; with r <= 1 this forces r = 1 and equal lattices.
  rep.isometric = rep.scaled_lattice_contained && rep.r == Rational(1) &&
                  same_lattice(p1.alpha, p1.beta, p2.alpha, p2.beta);
  return rep;
}

// ---------------------------------------------------------------- cutting

std::string to_string(CutComponent::Kind k) {
  switch (k) {
    case CutComponent::Kind::Cylinder: return "cylinder";
    case CutComponent::Kind::SlitTorus: return "slit_torus";
    case CutComponent::Kind::Other: return "other";
  }
  return "other";
}

namespace {

struct UnionFind {
  std::vector<std::size_t> p;
  explicit UnionFind(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  std::size_t find(std::size_t x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { p[find(a)] = find(b); }
};

// Side of a label: top = its occurrence in a top word (facing cyl_top).
struct Side {
  Label label;
  bool top;
  friend auto operator<=>(const Side&, const Side&) = default;
};

}  // namespace

std::vector<CutComponent> cut_along(const FlatSurface& m, const Direction& dir, const std::vector<Label>& prongs) {
  if (prongs.empty()) throw Error(ErrorCode::BadParameters, "empty cut family");
  auto dec = decompose(m, dir);
  std::vector<Chain> chains;
  for (Label p : prongs) chains.push_back(saddle_connection_chain(m, dec.saddle_connection(p)));
  for (std::size_t i = 1; i < prongs.size(); ++i)
    if (!homologous(m, chains[0], chains[i]))
      throw Error(ErrorCode::NotHomologous, "saddle connections " + std::to_string(prongs[0]) + " and " +
                                                std::to_string(prongs[i]) + " are not homologous");

  Matrix2 a = frame_for(dir);
  Matrix2 back = a.inverse();
  FlatSurface n = apply_matrix(m, a);
  const auto& d = n.diagram();
  std::set<Label> cut(prongs.begin(), prongs.end());
  std::size_t k = d.cylinder_count();

  UnionFind comps(k);
  for (Label l : d.labels())
    if (!cut.count(l)) comps.unite(d.cyl_top(l), d.cyl_bottom(l));

  // Walk every link and split it at cut crossings into vertex copies.
  struct Arc {
    std::vector<Corner> corners;
    std::optional<Side> begin, end;
  };
  std::vector<Arc> arcs;
  std::map<Corner, std::size_t> arc_of;
  std::set<Corner> visited;
  for (Label l : d.labels())
    for (bool top : {true, false}) {
      Corner start{l, top};
      if (visited.count(start)) continue;
      struct Step {
        Corner corner;
        Label crossed;
        Side before, after;
      };
      std::vector<Step> cycle;
      Corner c = start;
      do {
        visited.insert(c);
        if (c.top) {
          Label b = d.next_top(c.label);
          cycle.push_back({c, b, {b, true}, {b, false}});
          c = Corner{d.prev_bottom(b), false};
        } else {
          cycle.push_back({c, c.label, {c.label, false}, {c.label, true}});
          c = Corner{c.label, true};
        }
      } while (!(c == start));
      std::size_t len = cycle.size();
      std::size_t first = len;
      for (std::size_t i = 0; i < len; ++i)
        if (cut.count(cycle[i].crossed)) {
          first = i;
          break;
        }
      if (first == len) {
        Arc arc;
        for (auto& s : cycle) arc.corners.push_back(s.corner);
        for (auto& cn : arc.corners) arc_of[cn] = arcs.size();
        arcs.push_back(std::move(arc));
        continue;
      }
      std::size_t i0 = (first + 1) % len;
      Arc cur;
      cur.begin = cycle[first].after;
      for (std::size_t t = 0; t < len; ++t) {
        const Step& s = cycle[(i0 + t) % len];
        cur.corners.push_back(s.corner);
        if (cut.count(s.crossed)) {
          cur.end = s.before;
          for (auto& cn : cur.corners) arc_of[cn] = arcs.size();
          arcs.push_back(cur);
          cur = Arc{};
          cur.begin = s.after;
        }
      }
    }

  auto corner_cylinder = [&](const Corner& c) { return c.top ? d.cyl_top(c.label) : d.cyl_bottom(c.label); };
  auto side_cylinder = [&](const Side& s) { return s.top ? d.cyl_top(s.label) : d.cyl_bottom(s.label); };

  std::map<Side, std::size_t> side_index;
  for (Label l : cut)
    for (bool top : {true, false}) side_index.emplace(Side{l, top}, side_index.size());
  UnionFind circles(side_index.size());
  for (const auto& arc : arcs)
    if (arc.begin) circles.unite(side_index.at(*arc.begin), side_index.at(*arc.end));

  std::map<std::size_t, CutComponent> by_root;
  std::vector<std::size_t> roots;
  for (std::size_t j = 0; j < k; ++j) {
    std::size_t r = comps.find(j);
    if (!by_root.count(r)) {
      by_root.emplace(r, CutComponent{CutComponent::Kind::Other, 0, 0, 0, {}, std::nullopt});
      roots.push_back(r);
    }
    by_root.at(r).cylinders.push_back(j);
    by_root.at(r).area += n.cylinder_area(j);
  }

  std::vector<CutComponent> out;
  for (std::size_t r : roots) {
    CutComponent comp = by_root.at(r);
    long vertices = 0, edges = 0, faces = static_cast<long>(comp.cylinders.size());
    for (const auto& arc : arcs)
      if (comps.find(corner_cylinder(arc.corners[0])) == r) ++vertices;
    for (Label l : d.labels()) {
      if (cut.count(l)) {
        if (comps.find(d.cyl_top(l)) == r) ++edges;
        if (comps.find(d.cyl_bottom(l)) == r) ++edges;
      } else if (comps.find(d.cyl_top(l)) == r) {
        ++edges;
      }
    }
    edges += faces;
    std::set<std::size_t> circle_roots;
    for (auto& [s, idx] : side_index)
      if (comps.find(side_cylinder(s)) == r) circle_roots.insert(circles.find(idx));
    long chi = vertices - edges + faces;
    comp.boundary_circles = static_cast<int>(circle_roots.size());
    comp.genus = static_cast<int>((2 - chi - comp.boundary_circles) / 2);
    if (comp.genus == 0 && comp.boundary_circles == 2 && comp.cylinders.size() == 1) {
      comp.kind = CutComponent::Kind::Cylinder;
    } else if (comp.genus == 1 && comp.boundary_circles == 1) {
      comp.kind = CutComponent::Kind::SlitTorus;
      // Lattice: holonomies of fundamental cycles of the component's
      // 1-skeleton, taken in the frame and mapped back.
      struct Edge {
        std::size_t u, v;
        Vec2 hol;
      };
      std::vector<Edge> es;
      auto vertex = [&](const Corner& c) { return arc_of.at(c); };
      for (Label l : d.labels()) {
        Vec2 hol{n.width(l), 0};
        bool top_here = comps.find(d.cyl_top(l)) == r;
        bool bottom_here = comps.find(d.cyl_bottom(l)) == r;
        if (top_here) es.push_back({vertex({d.prev_top(l), true}), vertex({l, true}), hol});
        if (bottom_here && cut.count(l)) es.push_back({vertex({d.prev_bottom(l), false}), vertex({l, false}), hol});
      }
      for (std::size_t j : comp.cylinders) {
        const auto& w = d.cylinders()[j];
        es.push_back({vertex({w.bottom.back(), false}), vertex({w.top.back(), true}), {n.twist(j), n.height(j)}});
      }
      std::map<std::size_t, Vec2> pot;
      std::vector<Vec2> gens;
      pot[es[0].u] = {0, 0};
      bool grew = true;
      std::vector<bool> used(es.size(), false);
      while (grew) {
        grew = false;
        for (std::size_t i = 0; i < es.size(); ++i) {
          if (used[i]) continue;
          const Edge& e = es[i];
          bool hu = pot.count(e.u), hv = pot.count(e.v);
          if (hu && !hv) {
            pot[e.v] = pot[e.u] + e.hol;
          } else if (!hu && hv) {
            pot[e.u] = pot[e.v] - e.hol;
          } else if (hu && hv) {
            Vec2 g = pot[e.u] + e.hol - pot[e.v];
            if (!(g == Vec2{0, 0})) gens.push_back(back * g);
          } else {
            continue;
          }
          used[i] = true;
          grew = true;
        }
      }
      auto [al, be] = lattice_basis(gens);
      SlitTorus t{al, be, dec.saddle_connection(prongs[0]).holonomy, comp.area, false};
      if (t.covolume() != t.area) throw Error(ErrorCode::Malformed, "slit torus covolume differs from its area");
      t.degenerate = degenerate_slit(t);
      comp.torus = t;
    }
    out.push_back(std::move(comp));
  }
  return out;
}

}  // namespace flatstrata
