#include "flatstrata/surface.hpp"

#include <algorithm>
#include <random>

#include "flatstrata/error.hpp"

namespace flatstrata {

FlatSurface::FlatSurface(CylinderDiagram diagram, Metrics metrics)
    : diagram_(std::move(diagram)), metrics_(std::move(metrics)) {
  const auto& cyls = diagram_.cylinders();
  std::size_t k = cyls.size();
  if (metrics_.heights.size() != k || metrics_.twists.size() != k)
    throw Error(ErrorCode::BadInput, "need one height and one twist per cylinder");
  for (Label l : diagram_.labels()) {
    auto it = metrics_.widths.find(l);
    if (it == metrics_.widths.end()) throw Error(ErrorCode::MissingLabel, "no width for label " + std::to_string(l));
    if (it->second.sign() <= 0) throw Error(ErrorCode::NonPositive, "width of " + std::to_string(l) + " must be positive");
  }
  for (auto& [l, w] : metrics_.widths)
    if (!diagram_.has_label(l)) throw Error(ErrorCode::BadInput, "width given for unknown label " + std::to_string(l));

  pos_top_.resize(diagram_.label_count());
  pos_bottom_.resize(diagram_.label_count());
  for (std::size_t j = 0; j < k; ++j) {
    if (metrics_.heights[j].sign() <= 0) throw Error(ErrorCode::NonPositive, "heights must be positive");
    Rational top = 0, bottom = 0;
    for (Label l : cyls[j].top) {
      pos_top_[diagram_.index_of(l)] = top;
      top += width(l);
    }
    for (Label l : cyls[j].bottom) {
      pos_bottom_[diagram_.index_of(l)] = bottom;
      bottom += width(l);
    }
    if (top != bottom)
      throw Error(ErrorCode::InconsistentWidths, "cylinder " + std::to_string(j) + ": top length " + top.str() +
                                                     " != bottom length " + bottom.str());
    circumference_.push_back(top);
    metrics_.twists[j] = metrics_.twists[j].mod(top);
  }
}

Rational FlatSurface::area() const {
  Rational a = 0;
  for (std::size_t j = 0; j < cylinder_count(); ++j) a += cylinder_area(j);
  return a;
}

std::pair<Label, Rational> FlatSurface::top_label_at(std::size_t j, const Rational& u) const {
  Rational v = u.mod(circumference(j));
  for (Label l : diagram_.cylinders()[j].top) {
    Rational off = v - pos_top(l);
    if (off.sign() >= 0 && off < width(l)) return {l, off};
  }
  throw Error(ErrorCode::Malformed, "top coordinate outside cylinder");
}

std::pair<Label, Rational> FlatSurface::bottom_label_at(std::size_t j, const Rational& x) const {
  Rational v = x.mod(circumference(j));
  for (Label l : diagram_.cylinders()[j].bottom) {
    Rational off = v - pos_bottom(l);
    if (off.sign() >= 0 && off < width(l)) return {l, off};
  }
  throw Error(ErrorCode::Malformed, "bottom coordinate outside cylinder");
}

FlatSurface build(const CylinderDiagram& d, Metrics m) {
  std::vector<Label> unknown;
  for (Label l : d.labels())
    if (!m.widths.count(l)) unknown.push_back(l);
  if (!unknown.empty()) {
    // Rows: per cylinder, sum(top) - sum(bottom) = 0, unknowns on the left.
    std::size_t u = unknown.size();
    std::map<Label, std::size_t> col;
    for (std::size_t i = 0; i < u; ++i) col[unknown[i]] = i;
    std::vector<std::vector<Rational>> rows;
    for (const auto& c : d.cylinders()) {
      std::vector<Rational> row(u + 1, Rational(0));
      auto add = [&](Label l, int s) {
        if (auto it = col.find(l); it != col.end())
          row[it->second] += Rational(s);
        else
          row[u] -= Rational(s) * m.widths.at(l);
      };
      for (Label l : c.top) add(l, 1);
      for (Label l : c.bottom) add(l, -1);
      rows.push_back(std::move(row));
    }
    std::size_t r = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t c = 0; c < u && r < rows.size(); ++c) {
      std::size_t p = r;
      while (p < rows.size() && rows[p][c].is_zero()) ++p;
      if (p == rows.size()) continue;
      std::swap(rows[p], rows[r]);
      Rational inv = Rational(1) / rows[r][c];
      for (auto& x : rows[r]) x *= inv;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == r || rows[i][c].is_zero()) continue;
        Rational f = rows[i][c];
        for (std::size_t j = c; j <= u; ++j) rows[i][j] -= f * rows[r][j];
      }
      pivot_col.push_back(c);
      ++r;
    }
    for (std::size_t i = r; i < rows.size(); ++i)
      if (!rows[i][u].is_zero()) throw Error(ErrorCode::InconsistentWidths, "given widths violate an equation");
    if (r < u) throw Error(ErrorCode::InconsistentWidths, "widths underdetermined; supply more of them");
    for (std::size_t i = 0; i < r; ++i) m.widths[unknown[pivot_col[i]]] = rows[i][u];
  }
  if (m.heights.empty()) m.heights.assign(d.cylinder_count(), Rational(1));
  if (m.twists.empty()) m.twists.assign(d.cylinder_count(), Rational(0));
  return FlatSurface(d, std::move(m));
}

Metrics default_metrics(const CylinderDiagram& d) {
  Metrics m;
  bool unit = true;
  for (const auto& c : d.cylinders())
    if (c.top.size() != c.bottom.size()) unit = false;
  if (unit) {
    for (Label l : d.labels()) m.widths[l] = 1;
  } else {
    for (auto& [l, w] : d.standard_widths()) m.widths[l] = Rational(w);
  }
  m.heights.assign(d.cylinder_count(), Rational(1));
  m.twists.assign(d.cylinder_count(), Rational(0));
  return m;
}

Metrics random_metrics(const CylinderDiagram& d, std::uint64_t seed, long den) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coeff(1, 3 * den);
  Metrics m;
  for (Label l : d.labels()) m.widths[l] = 0;
  for (Label l : d.labels()) {
    Rational r(coeff(rng), den);
    for (Label c : shortest_cycle_through(d, l)) m.widths[c] += r;
  }
  for (const auto& c : d.cylinders()) {
    Rational circ = 0;
    for (Label l : c.bottom) circ += m.widths[l];
    m.heights.emplace_back(std::uniform_int_distribution<long>(1, 4 * den)(rng), den);
    Rational steps = (circ * Rational(den)).floor();
    long k = std::uniform_int_distribution<long>(0, steps.num().get_si() - 1)(rng);
    m.twists.emplace_back(k, den);
  }
  return m;
}

FlatSurface rotate_pi(const FlatSurface& m) {
  std::vector<CylinderWords> cyls;
  for (const auto& c : m.diagram().cylinders())
    cyls.push_back({std::vector<Label>(c.bottom.rbegin(), c.bottom.rend()),
                    std::vector<Label>(c.top.rbegin(), c.top.rend())});
  return FlatSurface(CylinderDiagram(std::move(cyls)), m.metrics());
}

FlatSurface reflect_x(const FlatSurface& m) {
  std::vector<CylinderWords> cyls;
  for (const auto& c : m.diagram().cylinders()) cyls.push_back({c.bottom, c.top});
  Metrics mt = m.metrics();
  for (auto& t : mt.twists) t = -t;
  return FlatSurface(CylinderDiagram(std::move(cyls)), std::move(mt));
}

FlatSurface reflect_y(const FlatSurface& m) {
  std::vector<CylinderWords> cyls;
  for (const auto& c : m.diagram().cylinders())
    cyls.push_back({std::vector<Label>(c.top.rbegin(), c.top.rend()),
                    std::vector<Label>(c.bottom.rbegin(), c.bottom.rend())});
  Metrics mt = m.metrics();
  for (auto& t : mt.twists) t = -t;
  return FlatSurface(CylinderDiagram(std::move(cyls)), std::move(mt));
}

namespace {

void check_cylinders(const FlatSurface& m, const std::vector<std::size_t>& cyls) {
  if (cyls.empty()) throw Error(ErrorCode::BadParameters, "empty cylinder class");
  for (std::size_t j : cyls)
    if (j >= m.cylinder_count()) throw Error(ErrorCode::BadParameters, "cylinder index out of range");
}

}  // namespace

FlatSurface shear_class(const FlatSurface& m, const std::vector<std::size_t>& cyls, const Rational& t) {
  check_cylinders(m, cyls);
  Metrics mt = m.metrics();
  std::vector<bool> seen(m.cylinder_count(), false);
  for (std::size_t j : cyls) {
    if (seen[j]) continue;
    seen[j] = true;
    mt.twists[j] += t * mt.heights[j];
  }
  return FlatSurface(m.diagram(), std::move(mt));
}

FlatSurface stretch_class(const FlatSurface& m, const std::vector<std::size_t>& cyls, const Rational& lambda) {
  check_cylinders(m, cyls);
  if (lambda.sign() <= 0) throw Error(ErrorCode::NonPositive, "stretch factor must be positive");
  Metrics mt = m.metrics();
  std::vector<bool> seen(m.cylinder_count(), false);
  for (std::size_t j : cyls) {
    if (seen[j]) continue;
    seen[j] = true;
    mt.heights[j] *= lambda;
  }
  return FlatSurface(m.diagram(), std::move(mt));
}

std::vector<std::size_t> cylinder_map(const FlatSurface& m1, const FlatSurface& m2,
                                      const std::map<Label, Label>& labels) {
  std::vector<std::size_t> out;
  for (const auto& c : m1.diagram().cylinders()) out.push_back(m2.diagram().cyl_top(labels.at(c.top[0])));
  return out;
}

std::vector<std::map<Label, Label>> translation_label_maps(const FlatSurface& m1, const FlatSurface& m2) {
  std::vector<std::map<Label, Label>> out;
  if (m1.area() != m2.area()) return out;
  for (auto& phi : m1.diagram().isomorphisms(m2.diagram())) {
    bool ok = true;
    for (auto& [a, b] : phi)
      if (m1.width(a) != m2.width(b)) ok = false;
    if (!ok) continue;
    auto cmap = cylinder_map(m1, m2, phi);
    for (std::size_t j = 0; j < m1.cylinder_count() && ok; ++j) {
      std::size_t j2 = cmap[j];
      if (m1.height(j) != m2.height(j2)) {
        ok = false;
        break;
      }
      // Relative position of one top label against one bottom label.
      Label a = m1.diagram().cylinders()[j].top[0];
      Label b = m1.diagram().cylinders()[j].bottom[0];
      Rational o1 = (m1.twist(j) + m1.pos_top(a) - m1.pos_bottom(b)).mod(m1.circumference(j));
      Rational o2 = (m2.twist(j2) + m2.pos_top(phi.at(a)) - m2.pos_bottom(phi.at(b))).mod(m2.circumference(j2));
      if (o1 != o2) ok = false;
    }
    if (ok) out.push_back(phi);
  }
  return out;
}

bool translation_equivalent(const FlatSurface& m1, const FlatSurface& m2) {
  return !translation_label_maps(m1, m2).empty();
}

}  // namespace flatstrata
