#include "flatstrata/homology.hpp"

#include <deque>
#include <set>

#include "flatstrata/error.hpp"

namespace flatstrata {

PeriodBasis::PeriodBasis(const CylinderDiagram& d)
    : key_(d.canonical_key()), labels_(d.label_count()), cylinders_(d.cylinder_count()) {
  // BFS spanning tree of the undirected cylinder graph.
  std::vector<bool> in_tree(labels_, false), reached(cylinders_, false);
  std::vector<std::vector<std::size_t>> tree_adj(cylinders_);
  std::deque<std::size_t> q{0};
  reached[0] = true;
  while (!q.empty()) {
    std::size_t u = q.front();
    q.pop_front();
    for (Label l : d.labels()) {
      std::size_t a = d.cyl_top(l), b = d.cyl_bottom(l);
      if (a != u && b != u) continue;
      std::size_t v = a == u ? b : a;
      if (reached[v]) continue;
      reached[v] = true;
      in_tree[d.index_of(l)] = true;
      tree_adj[a].push_back(b);
      tree_adj[b].push_back(a);
      q.push_back(v);
    }
  }
  coord_of_edge_.assign(labels_ + cylinders_, -1);
  for (std::size_t i = 0; i < labels_; ++i) {
    if (in_tree[i]) continue;
    coord_of_edge_[i] = static_cast<long>(elements_.size());
    Chain c(labels_ + cylinders_, 0);
    c[i] = 1;
    elements_.push_back(c);
    names_.push_back("s" + std::to_string(d.labels()[i]));
  }
  for (std::size_t j = 0; j < cylinders_; ++j) {
    coord_of_edge_[labels_ + j] = static_cast<long>(elements_.size());
    Chain c(labels_ + cylinders_, 0);
    c[labels_ + j] = 1;
    elements_.push_back(c);
    names_.push_back("v" + std::to_string(j));
  }
  // Tree label e entering side S (the tree side holding cyl_bottom(e)):
  // the faces of S give e = sum(leaving S) - sum(other entering S).
  tree_expansion_.assign(labels_, std::vector<long>(elements_.size(), 0));
  for (std::size_t i = 0; i < labels_; ++i) {
    if (!in_tree[i]) continue;
    Label e = d.labels()[i];
    std::size_t root = d.cyl_bottom(e), other = d.cyl_top(e);
    std::vector<bool> side(cylinders_, false);
    std::deque<std::size_t> bfs{root};
    side[root] = true;
    while (!bfs.empty()) {
      std::size_t u = bfs.front();
      bfs.pop_front();
      for (std::size_t v : tree_adj[u]) {
        if (side[v] || (u == root && v == other) || (u == other && v == root)) continue;
        side[v] = true;
        bfs.push_back(v);
      }
    }
    for (std::size_t k = 0; k < labels_; ++k) {
      if (in_tree[k]) continue;
      Label l = d.labels()[k];
      bool enters = side[d.cyl_bottom(l)] && !side[d.cyl_top(l)];
      bool leaves = side[d.cyl_top(l)] && !side[d.cyl_bottom(l)];
      if (enters) tree_expansion_[i][coord_of_edge_[k]] -= 1;
      if (leaves) tree_expansion_[i][coord_of_edge_[k]] += 1;
    }
  }
}

HomologyClass PeriodBasis::reduce(const Chain& c) const {
  if (c.size() != labels_ + cylinders_) throw Error(ErrorCode::BasisMismatch, "chain length does not match basis");
  HomologyClass out(elements_.size(), 0);
  for (std::size_t e = 0; e < c.size(); ++e) {
    if (c[e] == 0) continue;
    if (coord_of_edge_[e] >= 0) {
      out[coord_of_edge_[e]] += c[e];
    } else {
      for (std::size_t k = 0; k < out.size(); ++k) out[k] += c[e] * tree_expansion_[e][k];
    }
  }
  return out;
}

void PeriodBasis::check(const CylinderDiagram& d) const {
  if (d.canonical_key() != key_ || d.label_count() != labels_ || d.cylinder_count() != cylinders_)
    throw Error(ErrorCode::BasisMismatch, "basis was built for a different diagram");
}

Vec2 chain_holonomy(const FlatSurface& m, const Chain& c) {
  const auto& d = m.diagram();
  std::size_t n = d.label_count();
  if (c.size() != n + d.cylinder_count()) throw Error(ErrorCode::BasisMismatch, "chain length does not match surface");
  Vec2 h{0, 0};
  for (std::size_t i = 0; i < n; ++i)
    if (c[i]) h.x += Rational(c[i]) * m.width(d.labels()[i]);
  for (std::size_t j = 0; j < d.cylinder_count(); ++j)
    if (c[n + j]) h = h + Rational(c[n + j]) * Vec2{m.twist(j), m.height(j)};
  return h;
}

std::vector<Vec2> period_vector(const FlatSurface& m, const PeriodBasis& basis) {
  basis.check(m.diagram());
  std::vector<Vec2> out;
  for (const auto& e : basis.elements()) out.push_back(chain_holonomy(m, e));
  return out;
}

Chain segment_chain(const FlatSurface& m, const Segment& s) {
  const auto& d = m.diagram();
  std::size_t n = d.label_count();
  std::size_t j = s.cylinder;
  Chain c(n + d.cylinder_count(), 0);
  const auto& w = d.cylinders()[j];
  for (std::size_t i = 0; i < d.bottom_index(s.from.label); ++i) c[d.index_of(w.bottom[i])] -= 1;
  c[n + j] += 1;
  for (std::size_t i = 0; i < d.top_index(s.to.label); ++i) c[d.index_of(w.top[i])] += 1;
  Rational slid = s.from.offset + s.displacement.x - s.to.offset;
  Rational path = m.twist(j) + m.pos_top(s.to.label) - m.pos_bottom(s.from.label);
  Rational k = (slid - path) / m.circumference(j);
  if (!k.is_integer()) throw Error(ErrorCode::Malformed, "segment endpoints do not match its displacement");
  long wind = k.num().get_si();
  if (wind != 0)
    for (Label l : w.top) c[d.index_of(l)] += wind;
  return c;
}

namespace {

void add_to(Chain& a, const Chain& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
}

}  // namespace

Chain saddle_connection_chain(const FlatSurface& m, const SaddleConnection& sc) {
  const auto& d = m.diagram();
  Chain c(d.label_count() + d.cylinder_count(), 0);
  if (sc.direction.is_horizontal()) {
    c[d.index_of(sc.prong)] = 1;
    return c;
  }
  for (const auto& s : sc.segments) add_to(c, segment_chain(m, s));
  return c;
}

Chain core_chain(const FlatSurface& m, const GeometricCylinder& cyl) {
  const auto& d = m.diagram();
  Chain c(d.label_count() + d.cylinder_count(), 0);
  if (cyl.direction.is_horizontal()) {
    for (Label l : d.cylinders()[cyl.strips[0].cylinder].top) c[d.index_of(l)] += 1;
    return c;
  }
  // Run through the middle of every strip.
  Rational half = cyl.cross_section / Rational(2);
  std::size_t r = cyl.strips.size();
  for (std::size_t k = 0; k < r; ++k) {
    const Strip& s = cyl.strips[k];
    const Strip& next = cyl.strips[(k + 1) % r];
    Segment seg{s.cylinder,
                {s.start.label, s.start.offset + half},
                {next.start.label, next.start.offset + half},
                {s.slope * s.height, s.height}};
    add_to(c, segment_chain(m, seg));
  }
  return c;
}

HomologyClass core_class(const FlatSurface& m, const GeometricCylinder& c) {
  return PeriodBasis(m.diagram()).reduce(core_chain(m, c));
}

HomologyClass saddle_connection_class(const FlatSurface& m, const SaddleConnection& sc) {
  return PeriodBasis(m.diagram()).reduce(saddle_connection_chain(m, sc));
}

bool homologous(const FlatSurface& m, const Chain& a, const Chain& b) {
  PeriodBasis basis(m.diagram());
  return basis.reduce(a) == basis.reduce(b) && chain_holonomy(m, a) == chain_holonomy(m, b);
}

std::size_t integer_rank(const std::vector<std::vector<long>>& rows) {
  if (rows.empty()) return 0;
  std::vector<std::vector<Rational>> a;
  for (const auto& r : rows) {
    std::vector<Rational> v;
    for (long x : r) v.emplace_back(x);
    a.push_back(std::move(v));
  }
  std::size_t rank = 0, cols = a[0].size();
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t p = rank;
    while (p < a.size() && a[p][c].is_zero()) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t i = rank + 1; i < a.size(); ++i) {
      if (a[i][c].is_zero()) continue;
      Rational f = a[i][c] / a[rank][c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace flatstrata
