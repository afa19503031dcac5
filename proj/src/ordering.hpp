#pragma once

// Deterministic output ordering shared by the cut and dendrogram code:
// members sorted by label, groups ordered by their smallest label.

#include <algorithm>
#include <string>
#include <vector>

namespace dioclust::detail {

inline void sort_by_label(std::vector<std::size_t>& members, const std::vector<std::string>& labels) {
  std::sort(members.begin(), members.end(),
            [&](std::size_t a, std::size_t b) { return labels[a] < labels[b]; });
}

inline void sort_groups(std::vector<std::vector<std::size_t>>& groups,
                        const std::vector<std::string>& labels) {
  for (auto& g : groups) sort_by_label(g, labels);
  std::sort(groups.begin(), groups.end(), [&](const auto& a, const auto& b) {
    return labels[a.front()] < labels[b.front()];
  });
}

/// Union-find over node indices.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

  std::vector<std::vector<std::size_t>> groups() {
    std::vector<std::vector<std::size_t>> by_root(parent_.size());
    for (std::size_t i = 0; i < parent_.size(); ++i) by_root[find(i)].push_back(i);
    std::vector<std::vector<std::size_t>> out;
    for (auto& g : by_root)
      if (!g.empty()) out.push_back(std::move(g));
    return out;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace dioclust::detail
