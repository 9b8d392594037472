#include <algorithm>
#include <map>
#include <set>

#include "flatstrata/diagram.hpp"
#include "flatstrata/error.hpp"

namespace flatstrata {

namespace {

void partitions(int n, int parts, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (parts == 0) {
    if (n == 0) out.push_back(cur);
    return;
  }
  for (int p = std::min(n - (parts - 1), max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions(n - p, parts - 1, p, cur, out);
    cur.pop_back();
  }
}

class BottomSearch {
 public:
  BottomSearch(const SingularityProfile& profile, std::vector<std::vector<Label>> tops, std::size_t budget,
               std::size_t& nodes, std::map<std::vector<int>, CylinderDiagram>& found)
      : profile_(profile), tops_(std::move(tops)), budget_(budget), nodes_(nodes), found_(found) {
    int n = 0;
    for (auto& t : tops_) n += static_cast<int>(t.size());
    used_.assign(n + 1, false);
    remaining_ = n;
  }

  void run() { cylinder(0); }

 private:
  void tick() {
    if (++nodes_ > budget_) throw Error(ErrorCode::ResourceLimit, "enumeration exceeded node budget");
  }

  void cylinder(std::size_t i) {
    if (i == tops_.size()) {
      if (remaining_ == 0) leaf();
      return;
    }
    int later = static_cast<int>(tops_.size() - i - 1);
    // First label of the cyclic word is its minimum.
    for (Label f = 1; f < static_cast<Label>(used_.size()); ++f) {
      if (used_[f]) continue;
      tick();
      used_[f] = true;
      --remaining_;
      std::vector<Label> word{f};
      extend(i, f, later, word);
      ++remaining_;
      used_[f] = false;
    }
  }

  void extend(std::size_t i, Label f, int later, std::vector<Label>& word) {
    if (remaining_ >= later && !closed_alone(i, word)) {
      bottoms_.push_back(word);
      cylinder(i + 1);
      bottoms_.pop_back();
    }
    if (remaining_ <= later) return;
    for (Label l = f + 1; l < static_cast<Label>(used_.size()); ++l) {
      if (used_[l]) continue;
      tick();
      used_[l] = true;
      --remaining_;
      word.push_back(l);
      extend(i, f, later, word);
      word.pop_back();
      ++remaining_;
      used_[l] = false;
    }
  }

  // A cylinder whose bottom labels are exactly its top labels is a closed
  // torus component unless it is the whole surface.
  bool closed_alone(std::size_t i, const std::vector<Label>& word) const {
    if (tops_.size() == 1) return false;
    std::set<Label> a(tops_[i].begin(), tops_[i].end()), b(word.begin(), word.end());
    return a == b;
  }

  void leaf() {
    std::vector<CylinderWords> cyls;
    for (std::size_t i = 0; i < tops_.size(); ++i) cyls.push_back({tops_[i], bottoms_[i]});
    try {
      CylinderDiagram d(std::move(cyls));
      if (!(d.profile() == profile_)) return;
      auto key = d.canonical_key();
      if (!found_.count(key)) found_.emplace(key, d.canonical());
    } catch (const Error&) {
    }
  }

  const SingularityProfile& profile_;
  std::vector<std::vector<Label>> tops_;
  std::size_t budget_;
  std::size_t& nodes_;
  std::map<std::vector<int>, CylinderDiagram>& found_;
  std::vector<bool> used_;
  int remaining_ = 0;
  std::vector<std::vector<Label>> bottoms_;
};

}  // namespace

std::vector<CylinderDiagram> enumerate(const SingularityProfile& profile, const EnumerationOptions& options) {
  int n = profile.label_count();
  int kmax = profile.max_cylinders();
  std::vector<int> counts = options.cylinder_counts;
  if (counts.empty())
    for (int k = 1; k <= kmax; ++k) counts.push_back(k);
  std::sort(counts.begin(), counts.end());
  counts.erase(std::unique(counts.begin(), counts.end()), counts.end());

  std::size_t nodes = 0;
  std::vector<CylinderDiagram> result;
  for (int k : counts) {
    if (k < 1 || k > kmax || k > n) continue;
    std::map<std::vector<int>, CylinderDiagram> found;
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    partitions(n, k, n, cur, parts);
    for (const auto& sizes : parts) {
      std::vector<std::vector<Label>> tops;
      Label next = 1;
      for (int s : sizes) {
        std::vector<Label> w;
        for (int j = 0; j < s; ++j) w.push_back(next++);
        tops.push_back(std::move(w));
      }
      BottomSearch(profile, std::move(tops), options.node_budget, nodes, found).run();
    }
    for (auto& [key, d] : found) result.push_back(d);
  }
  return result;
}

}  // namespace flatstrata
