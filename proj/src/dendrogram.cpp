#include "dioclust/dendrogram.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>

#include "json.hpp"

#include "dioclust/errors.hpp"
#include "dioclust/text.hpp"
#include "ordering.hpp"

namespace dioclust {

namespace {

std::string block_text(const std::vector<std::size_t>& block, const std::vector<std::string>& labels) {
  std::string s = "{";
  for (std::size_t k = 0; k < block.size(); ++k) {
    if (k) s += ',';
    s += labels[block[k]];
  }
  return s + "}";
}

}  // namespace

std::vector<std::vector<std::size_t>> Dendrogram::roots() const {
  detail::DisjointSets sets(leaves.size());
  for (const auto& event : merges)
    for (const auto& block : event.blocks)
      for (std::size_t leaf : block) sets.unite(event.blocks.front().front(), leaf);
  auto groups = sets.groups();
  detail::sort_groups(groups, leaves);
  return groups;
}

Dendrogram to_dendrogram(const Ultrametric& u, double tolerance) {
  const auto report = validate_ultrametric(u.dist, tolerance);
  if (!report.valid()) {
    throw ValidationError("not an ultrametric; refusing to build a dendrogram\n" +
                          report.to_string(u.labels, u.dist));
  }
  const std::size_t n = u.size();
  Dendrogram d{u.labels, {}};

  struct Pair {
    double value;
    std::size_t i, j;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (u(i, j) != kInfinity) pairs.push_back({u(i, j), i, j});
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.value < b.value; });

  // Current clusters, indexed by id; cluster_of maps each leaf to its id.
  std::vector<std::size_t> cluster_of(n);
  std::iota(cluster_of.begin(), cluster_of.end(), std::size_t{0});
  std::vector<std::vector<std::size_t>> members(n);
  for (std::size_t i = 0; i < n; ++i) members[i] = {i};

  for (std::size_t start = 0; start < pairs.size();) {
    const double delta = pairs[start].value;
    std::size_t end = start;
    detail::DisjointSets joined(n);
    bool any = false;
    for (; end < pairs.size() && pairs[end].value == delta; ++end)
      any |= joined.unite(cluster_of[pairs[end].i], cluster_of[pairs[end].j]);
    start = end;
    if (!any) continue;

    std::vector<std::vector<std::size_t>> fused(n);  // root id -> cluster ids
    for (std::size_t c = 0; c < n; ++c)
      if (!members[c].empty()) fused[joined.find(c)].push_back(c);

    std::vector<MergeEvent> events;
    for (std::size_t root = 0; root < n; ++root) {
      if (fused[root].size() < 2) continue;
      MergeEvent event{delta, {}};
      std::vector<std::size_t> merged;
      for (std::size_t c : fused[root]) {
        event.blocks.push_back(members[c]);
        merged.insert(merged.end(), members[c].begin(), members[c].end());
        members[c].clear();
      }
      for (std::size_t leaf : merged) cluster_of[leaf] = root;
      members[root] = std::move(merged);
      detail::sort_groups(event.blocks, d.leaves);
      events.push_back(std::move(event));
    }
    std::sort(events.begin(), events.end(), [&](const MergeEvent& a, const MergeEvent& b) {
      return d.leaves[a.blocks.front().front()] < d.leaves[b.blocks.front().front()];
    });
    for (auto& e : events) d.merges.push_back(std::move(e));
  }
  return d;
}

Ultrametric from_dendrogram(const Dendrogram& d) {
  const std::size_t n = d.leaves.size();
  DioidMatrix dist = DioidMatrix::identity(n);
  std::vector<std::size_t> cluster_of(n);
  std::iota(cluster_of.begin(), cluster_of.end(), std::size_t{0});
  std::vector<std::vector<std::size_t>> members(n);
  for (std::size_t i = 0; i < n; ++i) members[i] = {i};

  double previous = 0.0;
  for (std::size_t e = 0; e < d.merges.size(); ++e) {
    const auto& event = d.merges[e];
    const std::string where = "merge event " + std::to_string(e + 1);
    if (!(event.resolution > 0.0) || !std::isfinite(event.resolution)) {
      throw ValidationError(where + ": resolution must be positive and finite");
    }
    if (event.resolution < previous) throw ValidationError(where + ": resolutions must be nondecreasing");
    previous = event.resolution;
    if (event.blocks.size() < 2) throw ValidationError(where + ": needs at least two blocks");

    std::vector<std::size_t> ids;
    for (const auto& block : event.blocks) {
      if (block.empty()) throw ValidationError(where + ": empty block");
      for (std::size_t leaf : block)
        if (leaf >= n) throw ValidationError(where + ": leaf index out of range");
      const std::size_t id = cluster_of[block.front()];
      auto sorted = block;
      std::sort(sorted.begin(), sorted.end());
      auto current = members[id];
      std::sort(current.begin(), current.end());
      if (sorted != current) {
        throw ValidationError(where + ": block " + block_text(block, d.leaves) +
                              " is not a current cluster (merges are not nested)");
      }
      if (std::find(ids.begin(), ids.end(), id) != ids.end()) {
        throw ValidationError(where + ": the same cluster appears twice");
      }
      ids.push_back(id);
    }
    for (std::size_t a = 0; a < ids.size(); ++a)
      for (std::size_t b = a + 1; b < ids.size(); ++b)
        for (std::size_t x : members[ids[a]])
          for (std::size_t y : members[ids[b]]) {
            dist.set(x, y, event.resolution);
            dist.set(y, x, event.resolution);
          }
    const std::size_t root = ids.front();
    for (std::size_t k = 1; k < ids.size(); ++k) {
      for (std::size_t leaf : members[ids[k]]) cluster_of[leaf] = root;
      members[root].insert(members[root].end(), members[ids[k]].begin(), members[ids[k]].end());
      members[ids[k]].clear();
    }
  }
  return Ultrametric{d.leaves, std::move(dist), Provenance{"dendrogram", "", n}};
}

namespace {

struct TreeNode {
  double height = 0.0;
  std::optional<std::size_t> leaf;
  std::vector<std::size_t> children;
  std::size_t min_leaf = 0;  // leaf with the smallest label below this node
};

struct Tree {
  std::vector<TreeNode> nodes;
  std::vector<std::size_t> roots;
};

Tree build_tree(const Dendrogram& d) {
  const auto& labels = d.leaves;
  const std::size_t n = labels.size();
  Tree tree;
  std::vector<std::size_t> node_of(n);
  for (std::size_t i = 0; i < n; ++i) {
    tree.nodes.push_back({0.0, i, {}, i});
    node_of[i] = i;
  }
  auto by_label = [&](std::size_t a, std::size_t b) {
    return labels[tree.nodes[a].min_leaf] < labels[tree.nodes[b].min_leaf];
  };
  for (const auto& event : d.merges) {
    TreeNode parent{event.resolution, std::nullopt, {}, 0};
    for (const auto& block : event.blocks) parent.children.push_back(node_of[block.front()]);
    std::sort(parent.children.begin(), parent.children.end(), by_label);
    parent.min_leaf = tree.nodes[parent.children.front()].min_leaf;
    tree.nodes.push_back(std::move(parent));
    for (const auto& block : event.blocks)
      for (std::size_t leaf : block) node_of[leaf] = tree.nodes.size() - 1;
  }
  for (std::size_t i = 0; i < n; ++i) tree.roots.push_back(node_of[i]);
  std::sort(tree.roots.begin(), tree.roots.end());
  tree.roots.erase(std::unique(tree.roots.begin(), tree.roots.end()), tree.roots.end());
  std::sort(tree.roots.begin(), tree.roots.end(), by_label);
  return tree;
}

std::string newick_label(const std::string& label) {
  if (label.find_first_of(" \t\r\n()[]':;,") == std::string::npos) return label;
  std::string quoted = "'";
  for (char c : label) {
    if (c == '\'') quoted += '\'';
    quoted += c;
  }
  return quoted + "'";
}

void write_newick(std::ostream& out, const Tree& tree, const Dendrogram& d, std::size_t node) {
  const TreeNode& t = tree.nodes[node];
  if (t.leaf) {
    out << newick_label(d.leaves[*t.leaf]);
    return;
  }
  out << '(';
  for (std::size_t k = 0; k < t.children.size(); ++k) {
    if (k) out << ',';
    const std::size_t child = t.children[k];
    write_newick(out, tree, d, child);
    out << ':' << format_number(t.height - tree.nodes[child].height);
  }
  out << ')';
}

std::string dot_quote(const std::string& s) {
  std::string q = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') q += '\\';
    q += c;
  }
  return q + "\"";
}

}  // namespace

std::string to_newick(const Dendrogram& d) {
  const Tree tree = build_tree(d);
  std::ostringstream out;
  for (std::size_t root : tree.roots) {
    write_newick(out, tree, d, root);
    out << ";\n";
  }
  return out.str();
}

std::string to_json(const Dendrogram& d, const Ultrametric& u) {
  using json = nlohmann::ordered_json;
  json doc;
  doc["labels"] = u.labels;
  json merges = json::array();
  for (const auto& event : d.merges) {
    json blocks = json::array();
    for (const auto& block : event.blocks) {
      json names = json::array();
      for (std::size_t leaf : block) names.push_back(d.leaves[leaf]);
      blocks.push_back(std::move(names));
    }
    merges.push_back(json{{"resolution", event.resolution}, {"blocks", std::move(blocks)}});
  }
  doc["merges"] = std::move(merges);
  json matrix = json::array();
  for (std::size_t i = 0; i < u.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < u.size(); ++j) {
      if (u(i, j) == kInfinity) {
        row.push_back(nullptr);
      } else {
        row.push_back(u(i, j));
      }
    }
    matrix.push_back(std::move(row));
  }
  doc["matrix"] = std::move(matrix);
  doc["provenance"] = json{{"method", u.provenance.method},
                           {"spec", u.provenance.spec},
                           {"n", u.provenance.n}};
  return doc.dump(2) + "\n";
}

std::string to_dot(const Network& net, const Ultrametric& u, double delta) {
  if (!(delta >= 0.0)) throw ArgumentError("to_dot: resolution must be >= 0");
  if (net.size() != u.size()) throw ArgumentError("to_dot: network and ultrametric sizes differ");
  const Partition p = cut_at_resolution(u, delta);
  std::ostringstream out;
  out << "digraph threshold {\n";
  out << "  label=" << dot_quote("A(i,j) <= " + format_number(delta)) << ";\n";
  std::size_t cluster = 0;
  for (const auto& block : p.blocks) {
    if (block.size() < 2) {
      out << "  " << dot_quote(net.label(block.front())) << ";\n";
      continue;
    }
    out << "  subgraph cluster_" << cluster++ << " {\n";
    out << "    label=" << dot_quote(block_text(block, net.labels())) << ";\n";
    for (std::size_t leaf : block) out << "    " << dot_quote(net.label(leaf)) << ";\n";
    out << "  }\n";
  }
  for (std::size_t i = 0; i < net.size(); ++i)
    for (std::size_t j = 0; j < net.size(); ++j)
      if (i != j && net(i, j) <= delta) {
        out << "  " << dot_quote(net.label(i)) << " -> " << dot_quote(net.label(j))
            << " [label=" << dot_quote(format_number(net(i, j))) << "];\n";
      }
  out << "}\n";
  return out.str();
}

std::string to_csv(const std::vector<std::string>& labels, const DioidMatrix& m) {
  std::ostringstream out;
  save_network(out, Network(labels, m));
  return out.str();
}

std::string partition_to_text(const Partition& p, const std::vector<std::string>& labels) {
  std::string out;
  for (const auto& block : p.blocks) out += block_text(block, labels) + "\n";
  return out;
}

std::string partition_to_json(const Partition& p, const std::vector<std::string>& labels) {
  using json = nlohmann::ordered_json;
  json blocks = json::array();
  for (const auto& block : p.blocks) {
    json names = json::array();
    for (std::size_t leaf : block) names.push_back(labels[leaf]);
    blocks.push_back(std::move(names));
  }
  json doc{{"resolution", p.resolution}, {"blocks", std::move(blocks)}};
  return doc.dump(2) + "\n";
}

std::string merge_summary(const Dendrogram& d) {
  std::string out;
  for (const auto& event : d.merges) {
    out += "delta=" + format_number(event.resolution) + ": ";
    for (std::size_t k = 0; k < event.blocks.size(); ++k) {
      if (k) out += " + ";
      out += block_text(event.blocks[k], d.leaves);
    }
    out += '\n';
  }
  const auto roots = d.roots();
  if (roots.size() > 1) {
    out += "unmerged roots:";
    for (const auto& r : roots) out += " " + block_text(r, d.leaves);
    out += '\n';
  }
  return out;
}

}  // namespace dioclust
