#pragma once

// Independent reference computations used by the unit and acceptance tests.
// Nothing here calls canonical(), enumerate() or the zero walk of the library.

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "flatstrata/analysis.hpp"
#include "flatstrata/decompose.hpp"
#include "flatstrata/diagram.hpp"
#include "flatstrata/surface.hpp"

namespace oracle {

using flatstrata::CylinderWords;
using flatstrata::Label;
using Words = std::vector<CylinderWords>;

// Zero orders of a raw diagram, from the permutation on angle-pi corners.
// Corner (l, top) sits after l on the top of its cylinder; (l, bottom) after l
// on the bottom. Returns empty if some label is not on exactly one top and
// one bottom.
inline std::vector<int> zero_orders(const Words& w, int n) {
  std::vector<int> tcyl(n + 1, -1), bcyl(n + 1, -1), tpos(n + 1), bpos(n + 1);
  for (int j = 0; j < static_cast<int>(w.size()); ++j) {
    for (int i = 0; i < static_cast<int>(w[j].top.size()); ++i) tcyl[w[j].top[i]] = j, tpos[w[j].top[i]] = i;
    for (int i = 0; i < static_cast<int>(w[j].bottom.size()); ++i)
      bcyl[w[j].bottom[i]] = j, bpos[w[j].bottom[i]] = i;
  }
  auto next_top = [&](int a) {
    const auto& t = w[tcyl[a]].top;
    return t[(tpos[a] + 1) % t.size()];
  };
  auto prev_bottom = [&](int b) {
    const auto& s = w[bcyl[b]].bottom;
    return s[(bpos[b] + s.size() - 1) % s.size()];
  };
  // corner index: 2l for top, 2l+1 for bottom
  std::vector<bool> seen(2 * (n + 1), false);
  std::vector<int> orders;
  for (int l = 1; l <= n; ++l) {
    if (seen[2 * l]) continue;
    int len = 0;
    int c = 2 * l;
    do {
      seen[c] = true;
      ++len;
      int lab = c / 2;
      c = (c % 2 == 0) ? 2 * prev_bottom(next_top(lab)) + 1 : 2 * lab;
    } while (c != 2 * l);
    orders.push_back(len / 2 - 1);
  }
  std::sort(orders.rbegin(), orders.rend());
  return orders;
}

inline bool connected_and_positive(const Words& w, int n) {
  std::size_t k = w.size();
  std::vector<int> tcyl(n + 1), bcyl(n + 1);
  for (std::size_t j = 0; j < k; ++j) {
    for (Label l : w[j].top) tcyl[l] = static_cast<int>(j);
    for (Label l : w[j].bottom) bcyl[l] = static_cast<int>(j);
  }
  // reach[i][j]: directed path i -> j along edges top-cylinder -> bottom-cylinder
  std::vector<std::vector<bool>> reach(k, std::vector<bool>(k, false));
  for (int l = 1; l <= n; ++l) reach[tcyl[l]][bcyl[l]] = true;
  for (std::size_t m = 0; m < k; ++m)
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (reach[i][m] && reach[m][j]) reach[i][j] = true;
  for (int l = 1; l <= n; ++l)
    if (!(bcyl[l] == tcyl[l] || reach[bcyl[l]][tcyl[l]])) return false;
  // every edge on a cycle makes weak and strong connectivity agree
  for (std::size_t j = 1; j < k; ++j)
    if (!reach[0][j]) return false;
  return true;
}

// Isomorphism key by exhaustive search: all label permutations, cylinder
// orders and word rotations.
inline std::vector<int> brute_key(const Words& w, int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<int> best;
  auto rotations = [](const std::vector<Label>& v) {
    std::vector<int> best(v.begin(), v.end());
    for (std::size_t s = 1; s < v.size(); ++s) {
      std::vector<int> r;
      for (std::size_t i = 0; i < v.size(); ++i) r.push_back(v[(s + i) % v.size()]);
      best = std::min(best, r);
    }
    return best;
  };
  do {
    std::vector<std::vector<int>> cyls;
    for (const auto& c : w) {
      std::vector<Label> t, b;
      for (Label l : c.top) t.push_back(perm[l - 1]);
      for (Label l : c.bottom) b.push_back(perm[l - 1]);
      std::vector<int> enc = rotations(t);
      enc.push_back(0);
      auto rb = rotations(b);
      enc.insert(enc.end(), rb.begin(), rb.end());
      enc.push_back(-1);
      cyls.push_back(enc);
    }
    std::sort(cyls.begin(), cyls.end());
    std::vector<int> key;
    for (const auto& c : cyls) key.insert(key.end(), c.begin(), c.end());
    if (best.empty() || key < best) best = key;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Every cylinder diagram with labels 1..n and the given zero orders, one per
// isomorphism class, found by listing all assignments of labels to words.
inline std::vector<Words> brute_force_diagrams(std::vector<int> orders, int n) {
  std::sort(orders.rbegin(), orders.rend());
  std::map<std::vector<int>, Words> classes;
  for (int k = 1; k <= n; ++k) {
    // label -> cylinder for tops and bottoms, as base-k numbers
    long total = 1;
    for (int i = 0; i < n; ++i) total *= k;
    for (long ta = 0; ta < total; ++ta) {
      std::vector<int> tc(n + 1);
      long x = ta;
      for (int l = 1; l <= n; ++l) tc[l] = static_cast<int>(x % k), x /= k;
      for (long ba = 0; ba < total; ++ba) {
        std::vector<int> bc(n + 1);
        long y = ba;
        for (int l = 1; l <= n; ++l) bc[l] = static_cast<int>(y % k), y /= k;
        std::vector<std::vector<Label>> tops(k), bots(k);
        for (int l = 1; l <= n; ++l) tops[tc[l]].push_back(l), bots[bc[l]].push_back(l);
        bool empty = false;
        for (int j = 0; j < k; ++j) empty |= tops[j].empty() || bots[j].empty();
        if (empty) continue;
        // all word orders (sorted start, permutations of the rest)
        std::vector<std::vector<std::vector<Label>>> top_choices(k), bot_choices(k);
        for (int j = 0; j < k; ++j) {
          auto t = tops[j];
          do top_choices[j].push_back(t);
          while (std::next_permutation(t.begin() + 1, t.end()));
          auto b = bots[j];
          do bot_choices[j].push_back(b);
          while (std::next_permutation(b.begin() + 1, b.end()));
        }
        std::vector<std::size_t> idx(2 * k, 0);
        while (true) {
          Words w(k);
          for (int j = 0; j < k; ++j) w[j] = {top_choices[j][idx[2 * j]], bot_choices[j][idx[2 * j + 1]]};
          if (connected_and_positive(w, n) && zero_orders(w, n) == orders) {
            auto key = brute_key(w, n);
            classes.emplace(key, w);
          }
          int pos = 0;
          for (; pos < 2 * k; ++pos) {
            std::size_t lim = pos % 2 == 0 ? top_choices[pos / 2].size() : bot_choices[pos / 2].size();
            if (++idx[pos] < lim) break;
            idx[pos] = 0;
          }
          if (pos == 2 * k) break;
        }
      }
    }
  }
  std::vector<Words> out;
  for (auto& [key, w] : classes) out.push_back(w);
  return out;
}

// Horizontal presentation read back from decompose(m, (1,0)) alone.
struct Reconstructed {
  Words words;
  std::map<Label, flatstrata::Rational> widths;
  std::vector<flatstrata::Rational> heights, twists;
};

inline Reconstructed reconstruct_horizontal(const flatstrata::DirectionalDecomposition& dec) {
  Reconstructed r;
  for (const auto& sc : dec.saddle_connections) r.widths[sc.prong] = sc.holonomy.x;
  for (const auto& c : dec.cylinders) {
    r.words.push_back({c.left, c.right});
    r.heights.push_back(c.area / c.core.x);
    r.twists.push_back(c.left_points[0].x - c.right_points[0].x);
  }
  return r;
}

// Random invertible rational matrix with small entries.
inline flatstrata::Matrix2 random_matrix(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> e(-3, 3), den(1, 2);
  while (true) {
    flatstrata::Matrix2 a{flatstrata::Rational(e(rng), den(rng)), flatstrata::Rational(e(rng), den(rng)),
                          flatstrata::Rational(e(rng), den(rng)), flatstrata::Rational(e(rng), den(rng))};
    if (!a.det().is_zero()) return a;
  }
}

inline flatstrata::Direction random_direction(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> e(-3, 3), f(0, 3);
  while (true) {
    long p = e(rng), q = f(rng);
    if (p != 0 || q != 0) return flatstrata::Direction(p, q);
  }
}

// Cylinder invariants of a decomposition as a sorted multiset: core up to
// sign, then area.
inline std::vector<std::pair<flatstrata::Vec2, flatstrata::Rational>> cylinder_signature(
    const flatstrata::DirectionalDecomposition& dec, const flatstrata::Matrix2& a = {}) {
  std::vector<std::pair<flatstrata::Vec2, flatstrata::Rational>> out;
  for (const auto& c : dec.cylinders) {
    flatstrata::Vec2 v = a * c.core;
    if (v.y.sign() < 0 || (v.y.is_zero() && v.x.sign() < 0)) v = -v;
    out.push_back({v, c.area * a.det().abs()});
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Sorted multiset of P(X, {Y}) over X in dx and Y in dy.
inline std::vector<flatstrata::Rational> pair_proportions(const flatstrata::FlatSurface& m,
                                                          const flatstrata::DirectionalDecomposition& dx,
                                                          const flatstrata::DirectionalDecomposition& dy) {
  std::vector<flatstrata::Rational> out;
  for (const auto& x : dx.cylinders)
    for (const auto& y : dy.cylinders) out.push_back(flatstrata::proportion(m, x, {y}));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace oracle
