#include "flatstrata/diagram.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include "flatstrata/error.hpp"

namespace flatstrata {

int SingularityProfile::label_count() const {
  int n = 0;
  for (int k : orders) n += k + 1;
  return n;
}

int SingularityProfile::max_cylinders() const {
  return genus + static_cast<int>(orders.size()) - 1;
}

std::string SingularityProfile::str() const {
  std::string s = "H(";
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(orders[i]);
  }
  return s + ")";
}

SingularityProfile SingularityProfile::from_orders(std::vector<int> orders) {
  if (orders.empty()) throw Error(ErrorCode::BadParameters, "stratum needs at least one cone point");
  std::sort(orders.rbegin(), orders.rend());
  int total = 0;
  for (int k : orders) {
    if (k < 0) throw Error(ErrorCode::BadParameters, "negative singularity order");
    total += k;
  }
  if (total % 2 != 0) throw Error(ErrorCode::BadParameters, "orders must sum to an even number");
  if (orders.size() > 1 && orders.back() == 0)
    throw Error(ErrorCode::BadParameters, "marked points are only supported on the torus");
  return {std::move(orders), total / 2 + 1};
}

SingularityProfile SingularityProfile::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '(' && c != ')') s += c;
  if (s.empty() || (s[0] != 'H' && s[0] != 'h'))
    throw Error(ErrorCode::BadInput, "stratum must look like H(4) or H(1,1): '" + text + "'");
  s = s.substr(1);
  std::vector<int> orders;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty() || !std::all_of(part.begin(), part.end(), ::isdigit))
      throw Error(ErrorCode::BadInput, "bad stratum '" + text + "'");
    orders.push_back(std::stoi(part));
  }
  return from_orders(std::move(orders));
}

std::string to_string(ComponentTag tag) {
  switch (tag) {
    case ComponentTag::Hyperelliptic: return "hyperelliptic";
    case ComponentTag::Odd: return "odd";
    case ComponentTag::Even: return "even";
    case ComponentTag::NonApplicable: return "none";
  }
  return "none";
}

namespace {

template <class T>
std::size_t cyc_next(std::size_t i, const std::vector<T>& w) { return (i + 1) % w.size(); }
template <class T>
std::size_t cyc_prev(std::size_t i, const std::vector<T>& w) { return (i + w.size() - 1) % w.size(); }

// Undirected connectivity of cylinders linked by shared labels.
bool connected(const std::vector<CylinderWords>& cyls) {
  std::size_t k = cyls.size();
  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::map<Label, std::size_t> top_of;
  for (std::size_t i = 0; i < k; ++i)
    for (Label l : cyls[i].top) top_of[l] = i;
  for (std::size_t i = 0; i < k; ++i)
    for (Label l : cyls[i].bottom) parent[find(i)] = find(top_of.at(l));
  for (std::size_t i = 0; i < k; ++i)
    if (find(i) != find(0)) return false;
  return true;
}

}  // namespace

bool admits_positive_widths(const std::vector<CylinderWords>& cylinders) {
  std::size_t k = cylinders.size();
  std::map<Label, std::size_t> top_of, bottom_of;
  for (std::size_t i = 0; i < k; ++i) {
    for (Label l : cylinders[i].top) top_of[l] = i;
    for (Label l : cylinders[i].bottom) bottom_of[l] = i;
  }
  // reach[u][v]: v reachable from u along label edges top_of -> bottom_of.
  std::vector<std::vector<bool>> reach(k, std::vector<bool>(k, false));
  for (std::size_t i = 0; i < k; ++i) reach[i][i] = true;
  for (auto& [l, u] : top_of) reach[u][bottom_of.at(l)] = true;
  for (std::size_t m = 0; m < k; ++m)
    for (std::size_t u = 0; u < k; ++u)
      if (reach[u][m])
        for (std::size_t v = 0; v < k; ++v)
          if (reach[m][v]) reach[u][v] = true;
  for (auto& [l, u] : top_of)
    if (!reach[bottom_of.at(l)][u]) return false;
  return true;
}

CylinderDiagram::CylinderDiagram(std::vector<CylinderWords> cylinders) : cylinders_(std::move(cylinders)) {
  if (cylinders_.empty()) throw Error(ErrorCode::Malformed, "diagram has no cylinders");
  std::map<Label, int> top_count, bottom_count;
  for (const auto& c : cylinders_) {
    if (c.top.empty() || c.bottom.empty()) throw Error(ErrorCode::Malformed, "empty boundary word");
    for (Label l : c.top)
      if (++top_count[l] > 1) throw Error(ErrorCode::DuplicateLabel, "label " + std::to_string(l) + " repeated on tops");
    for (Label l : c.bottom)
      if (++bottom_count[l] > 1)
        throw Error(ErrorCode::DuplicateLabel, "label " + std::to_string(l) + " repeated on bottoms");
  }
  for (auto& [l, n] : top_count)
    if (!bottom_count.count(l)) throw Error(ErrorCode::MissingLabel, "label " + std::to_string(l) + " has no bottom occurrence");
  for (auto& [l, n] : bottom_count)
    if (!top_count.count(l)) throw Error(ErrorCode::MissingLabel, "label " + std::to_string(l) + " has no top occurrence");
  if (!connected(cylinders_)) throw Error(ErrorCode::Disconnected, "glued surface is disconnected");
  if (!admits_positive_widths(cylinders_))
    throw Error(ErrorCode::NonPositive, "circumference equations admit no positive widths");

  for (auto& [l, n] : top_count) labels_.push_back(l);
  info_.resize(labels_.size());
  for (std::size_t i = 0; i < cylinders_.size(); ++i) {
    for (std::size_t j = 0; j < cylinders_[i].top.size(); ++j) {
      auto& inf = info_[index_of(cylinders_[i].top[j])];
      inf.cyl_top = i;
      inf.top_index = j;
    }
    for (std::size_t j = 0; j < cylinders_[i].bottom.size(); ++j) {
      auto& inf = info_[index_of(cylinders_[i].bottom[j])];
      inf.cyl_bottom = i;
      inf.bottom_index = j;
    }
  }

  auto copies = vertex_copies();
  int vcount = 0;
  std::map<int, int> corners_at;
  for (auto& [corner, v] : copies) {
    ++corners_at[v];
    vcount = std::max(vcount, v + 1);
  }
  vertex_count_ = vcount;
  left_vertex_.resize(labels_.size());
  for (Label l : labels_) left_vertex_[index_of(l)] = copies.at(Corner{prev_top(l), true});
  std::vector<int> orders;
  for (auto& [v, n] : corners_at) orders.push_back(n / 2 - 1);
  int n_labels = static_cast<int>(labels_.size());
  int euler = vcount - n_labels;  // V - E + F with one vertical edge and one face per cylinder
  if ((2 - euler) % 2 != 0) throw Error(ErrorCode::Malformed, "non-orientable gluing");
  std::sort(orders.rbegin(), orders.rend());
  profile_.orders = orders;
  profile_.genus = (2 - euler) / 2;
  bool torus = profile_.genus == 1 && orders.size() == 1;
  if (!torus && orders.back() == 0)
    throw Error(ErrorCode::Malformed, "diagram has a marked point (order-0 singularity)");
}

bool CylinderDiagram::has_label(Label l) const {
  return std::binary_search(labels_.begin(), labels_.end(), l);
}

std::size_t CylinderDiagram::index_of(Label l) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), l);
  if (it == labels_.end() || *it != l) throw Error(ErrorCode::BadInput, "unknown label " + std::to_string(l));
  return static_cast<std::size_t>(it - labels_.begin());
}

Label CylinderDiagram::next_top(Label l) const {
  const auto& w = cylinders_[cyl_top(l)].top;
  return w[cyc_next(top_index(l), w)];
}
Label CylinderDiagram::prev_top(Label l) const {
  const auto& w = cylinders_[cyl_top(l)].top;
  return w[cyc_prev(top_index(l), w)];
}
Label CylinderDiagram::next_bottom(Label l) const {
  const auto& w = cylinders_[cyl_bottom(l)].bottom;
  return w[cyc_next(bottom_index(l), w)];
}
Label CylinderDiagram::prev_bottom(Label l) const {
  const auto& w = cylinders_[cyl_bottom(l)].bottom;
  return w[cyc_prev(bottom_index(l), w)];
}

std::map<Corner, int> CylinderDiagram::vertex_copies(const std::vector<Label>& cut) const {
  std::set<Label> cut_set(cut.begin(), cut.end());
  // Link step: returns (next corner, label crossed).
  auto step = [&](const Corner& c) -> std::pair<Corner, Label> {
    if (c.top) {
      Label b = next_top(c.label);
      return {Corner{prev_bottom(b), false}, b};
    }
    return {Corner{c.label, true}, c.label};
  };
  std::map<Corner, int> result;
  int next_id = 0;
  // First pass: walk each link cycle; split it at crossings of cut labels.
  for (Label l : labels_) {
    for (bool top : {true, false}) {
      Corner start{l, top};
      if (result.count(start)) continue;
      std::vector<Corner> cycle;
      std::vector<bool> cut_after;
      Corner c = start;
      do {
        cycle.push_back(c);
        auto [nc, crossed] = step(c);
        cut_after.push_back(cut_set.count(crossed) > 0);
        c = nc;
      } while (!(c == start));
      std::size_t m = cycle.size();
      auto first_cut = std::find(cut_after.begin(), cut_after.end(), true);
      if (first_cut == cut_after.end()) {
        for (auto& cc : cycle) result[cc] = next_id;
        ++next_id;
        continue;
      }
      // Arcs start right after each cut crossing.
      std::size_t s = (static_cast<std::size_t>(first_cut - cut_after.begin()) + 1) % m;
      int id = -1;
      for (std::size_t t = 0; t < m; ++t) {
        std::size_t i = (s + t) % m;
        if (id < 0) id = next_id++;
        result[cycle[i]] = id;
        if (cut_after[i]) id = -1;
      }
    }
  }
  // Renumber by first appearance in corner order for determinism.
  std::map<int, int> renum;
  for (auto& [corner, v] : result) {
    if (!renum.count(v)) {
      int nid = static_cast<int>(renum.size());
      renum[v] = nid;
    }
  }
  for (auto& [corner, v] : result) v = renum[v];
  return result;
}

int CylinderDiagram::left_vertex(Label l) const { return left_vertex_[index_of(l)]; }
int CylinderDiagram::right_vertex(Label l) const { return left_vertex(next_top(l)); }

CylinderDiagram CylinderDiagram::reflect_x() const {
  std::vector<CylinderWords> out;
  for (const auto& c : cylinders_) out.push_back({c.bottom, c.top});
  return CylinderDiagram(std::move(out));
}

CylinderDiagram CylinderDiagram::reflect_y() const {
  std::vector<CylinderWords> out;
  for (const auto& c : cylinders_) {
    CylinderWords w{std::vector<Label>(c.top.rbegin(), c.top.rend()),
                    std::vector<Label>(c.bottom.rbegin(), c.bottom.rend())};
    out.push_back(std::move(w));
  }
  return CylinderDiagram(std::move(out));
}

CylinderDiagram CylinderDiagram::apply(SymmetryElement g) const {
  switch (g) {
    case SymmetryElement::Identity: return *this;
    case SymmetryElement::ReflectX: return reflect_x();
    case SymmetryElement::ReflectY: return reflect_y();
    case SymmetryElement::ReflectXY: return reflect_x().reflect_y();
  }
  return *this;
}

namespace {

// Depth-first search for the minimal encoding. The encoding of one cylinder
// is |top|, top..., |bottom|, bottom..., with labels renamed by first use.
class CanonicalSearch {
 public:
  explicit CanonicalSearch(const std::vector<CylinderWords>& cyls) : cyls_(cyls), used_(cyls.size(), false) {}

  std::vector<int> run() {
    dfs(0);
    return best_;
  }

 private:
  // Appends v; returns false if the prefix is now worse than best_.
  bool push(int v, int& state) {
    std::size_t pos = cur_.size();
    cur_.push_back(v);
    if (state == 0 && !best_.empty()) {
      if (v > best_[pos]) return false;
      if (v < best_[pos]) state = -1;
    }
    return true;
  }

  bool push_word(const std::vector<Label>& w, std::size_t rot, int& state, std::vector<Label>& fresh) {
    if (!push(static_cast<int>(w.size()), state)) return false;
    for (std::size_t i = 0; i < w.size(); ++i) {
      Label l = w[(rot + i) % w.size()];
      auto it = names_.find(l);
      int name;
      if (it == names_.end()) {
        name = static_cast<int>(names_.size()) + 1;
        names_[l] = name;
        fresh.push_back(l);
      } else {
        name = it->second;
      }
      if (!push(name, state)) return false;
    }
    return true;
  }

  void dfs(std::size_t depth) {
    if (depth == cyls_.size()) {
      if (best_.empty() || cur_ < best_) best_ = cur_;
      return;
    }
    for (std::size_t c = 0; c < cyls_.size(); ++c) {
      if (used_[c]) continue;
      used_[c] = true;
      const auto& w = cyls_[c];
      for (std::size_t rt = 0; rt < w.top.size(); ++rt) {
        for (std::size_t rb = 0; rb < w.bottom.size(); ++rb) {
          std::size_t mark = cur_.size();
          int state = state_;
          std::vector<Label> fresh;
          bool ok = push_word(w.top, rt, state, fresh) && push_word(w.bottom, rb, state, fresh);
          if (ok) {
            int saved = state_;
            state_ = state;
            dfs(depth + 1);
            state_ = saved;
          }
          for (Label l : fresh) names_.erase(l);
          cur_.resize(mark);
        }
      }
      used_[c] = false;
    }
  }

  const std::vector<CylinderWords>& cyls_;
  std::vector<bool> used_;
  std::vector<int> cur_, best_;
  std::map<Label, int> names_;
  int state_ = 0;
};

std::vector<CylinderWords> decode(const std::vector<int>& key) {
  std::vector<CylinderWords> out;
  std::size_t i = 0;
  while (i < key.size()) {
    CylinderWords w;
    int nt = key[i++];
    for (int j = 0; j < nt; ++j) w.top.push_back(key[i++]);
    int nb = key[i++];
    for (int j = 0; j < nb; ++j) w.bottom.push_back(key[i++]);
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace

std::vector<int> CylinderDiagram::canonical_key() const { return CanonicalSearch(cylinders_).run(); }

CylinderDiagram CylinderDiagram::canonical() const { return CylinderDiagram(decode(canonical_key())); }

bool CylinderDiagram::isomorphic(const CylinderDiagram& other) const {
  return label_count() == other.label_count() && cylinder_count() == other.cylinder_count() &&
         canonical_key() == other.canonical_key();
}

namespace {

struct IsoSearch {
  const CylinderDiagram& a;
  const CylinderDiagram& b;
  std::vector<std::map<Label, Label>>& out;

  struct State {
    std::map<Label, Label> fwd, bwd;
    std::vector<bool> done;
    std::vector<bool> hit;  // cylinders of b already used
  };

  // Binds the words of cylinder c to cylinder t with the given rotations.
  bool align(State& s, std::size_t c, std::size_t t, std::size_t top_shift, std::size_t bottom_shift) const {
    const auto& w1 = a.cylinders()[c];
    const auto& w2 = b.cylinders()[t];
    if (s.hit[t] || w1.top.size() != w2.top.size() || w1.bottom.size() != w2.bottom.size()) return false;
    auto bind = [&](Label x, Label y) {
      auto fx = s.fwd.find(x);
      auto fy = s.bwd.find(y);
      if (fx != s.fwd.end() || fy != s.bwd.end())
        return fx != s.fwd.end() && fy != s.bwd.end() && fx->second == y && fy->second == x;
      s.fwd[x] = y;
      s.bwd[y] = x;
      return true;
    };
    for (std::size_t i = 0; i < w1.top.size(); ++i)
      if (!bind(w1.top[i], w2.top[(i + top_shift) % w2.top.size()])) return false;
    for (std::size_t i = 0; i < w1.bottom.size(); ++i)
      if (!bind(w1.bottom[i], w2.bottom[(i + bottom_shift) % w2.bottom.size()])) return false;
    s.done[c] = true;
    s.hit[t] = true;
    return true;
  }

  void extend(const State& s) const {
    std::size_t k = a.cylinder_count();
    std::size_t c = k;
    for (std::size_t i = 0; i < k && c == k; ++i) {
      if (s.done[i]) continue;
      const auto& w = a.cylinders()[i];
      for (Label l : w.top)
        if (s.fwd.count(l)) c = i;
      for (Label l : w.bottom)
        if (s.fwd.count(l)) c = i;
    }
    if (c == k) {
      if (std::find(s.done.begin(), s.done.end(), false) == s.done.end() &&
          std::find(out.begin(), out.end(), s.fwd) == out.end())
        out.push_back(s.fwd);
      return;
    }
    const auto& w = a.cylinders()[c];
    std::optional<std::size_t> target, top_shift, bottom_shift;
    for (std::size_t i = 0; i < w.top.size() && !top_shift; ++i) {
      auto it = s.fwd.find(w.top[i]);
      if (it == s.fwd.end()) continue;
      target = b.cyl_top(it->second);
      top_shift = (b.top_index(it->second) + w.top.size() - i) % w.top.size();
    }
    for (std::size_t i = 0; i < w.bottom.size() && !bottom_shift; ++i) {
      auto it = s.fwd.find(w.bottom[i]);
      if (it == s.fwd.end()) continue;
      std::size_t t = b.cyl_bottom(it->second);
      if (target && *target != t) return;
      target = t;
      bottom_shift = (b.bottom_index(it->second) + w.bottom.size() - i) % w.bottom.size();
    }
    const auto& tw = b.cylinders()[*target];
    if (tw.top.size() != w.top.size() || tw.bottom.size() != w.bottom.size()) return;
    std::size_t t0 = top_shift.value_or(0), t1 = top_shift ? t0 + 1 : w.top.size();
    std::size_t b0 = bottom_shift.value_or(0), b1 = bottom_shift ? b0 + 1 : w.bottom.size();
    for (std::size_t rt = t0; rt < t1; ++rt)
      for (std::size_t rb = b0; rb < b1; ++rb) {
        State next = s;
        if (align(next, c, *target, rt, rb)) extend(next);
      }
  }

  void run() const {
    std::size_t k = a.cylinder_count();
    const auto& root = a.cylinders()[0];
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t rt = 0; rt < root.top.size(); ++rt)
        for (std::size_t rb = 0; rb < root.bottom.size(); ++rb) {
          State s{{}, {}, std::vector<bool>(k, false), std::vector<bool>(k, false)};
          if (align(s, 0, j, rt, rb)) extend(s);
        }
  }
};

}  // namespace

std::vector<std::map<Label, Label>> CylinderDiagram::isomorphisms(const CylinderDiagram& other) const {
  std::vector<std::map<Label, Label>> result;
  if (label_count() != other.label_count() || cylinder_count() != other.cylinder_count()) return result;
  IsoSearch{*this, other, result}.run();
  return result;
}

std::vector<Label> shortest_cycle_through(const CylinderDiagram& d, Label l) {
  // BFS from cyl_bottom(l) back to cyl_top(l).
  std::size_t k = d.cylinder_count();
  std::size_t src = d.cyl_bottom(l), dst = d.cyl_top(l);
  std::vector<std::optional<Label>> via(k);
  std::vector<bool> seen(k, false);
  std::deque<std::size_t> q{src};
  seen[src] = true;
  while (!q.empty()) {
    std::size_t u = q.front();
    q.pop_front();
    if (u == dst) break;
    for (Label m : d.cylinders()[u].top) {
      std::size_t v = d.cyl_bottom(m);
      if (!seen[v]) {
        seen[v] = true;
        via[v] = m;
        q.push_back(v);
      }
    }
  }
  std::vector<Label> path;
  for (std::size_t v = dst; v != src;) {
    Label m = *via[v];
    path.push_back(m);
    v = d.cyl_top(m);
  }
  std::reverse(path.begin(), path.end());
  path.insert(path.begin(), l);
  return path;
}

std::map<Label, long> CylinderDiagram::standard_widths() const {
  std::map<Label, long> w;
  for (Label l : labels_) w[l] = 0;
  for (Label l : labels_)
    for (Label m : shortest_cycle_through(*this, l)) ++w[m];
  return w;
}

std::string CylinderDiagram::str() const {
  std::string s;
  for (const auto& c : cylinders_) {
    if (!s.empty()) s += " ";
    s += "(";
    for (std::size_t i = 0; i < c.top.size(); ++i) s += (i ? "," : "") + std::to_string(c.top[i]);
    s += ")/(";
    for (std::size_t i = 0; i < c.bottom.size(); ++i) s += (i ? "," : "") + std::to_string(c.bottom[i]);
    s += ")";
  }
  return s;
}

std::vector<SymmetryOrbit> symmetry_classes(const std::vector<CylinderDiagram>& diagrams) {
  std::map<std::vector<int>, CylinderDiagram> by_key;
  for (const auto& d : diagrams) by_key.emplace(d.canonical_key(), d.canonical());
  std::set<std::vector<int>> assigned;
  std::vector<SymmetryOrbit> orbits;
  for (auto& [key, d] : by_key) {
    if (assigned.count(key)) continue;
    std::map<std::vector<int>, CylinderDiagram> members;
    for (auto g : {SymmetryElement::Identity, SymmetryElement::ReflectX, SymmetryElement::ReflectY,
                   SymmetryElement::ReflectXY}) {
      CylinderDiagram img = d.apply(g);
      auto k = img.canonical_key();
      if (!by_key.count(k))
        throw Error(ErrorCode::NotClosed, "reflection of " + d.str() + " is missing from the input set");
      members.emplace(k, img.canonical());
    }
    SymmetryOrbit orbit{members.begin()->second, {}};
    for (auto& [k, m] : members) {
      assigned.insert(k);
      orbit.members.push_back(m);
    }
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

}  // namespace flatstrata
