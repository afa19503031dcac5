#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dioclust/network.hpp"
#include "dioclust/ultrametric.hpp"

namespace dioclust {

/// Blocks (current clusters) that fuse into one cluster at `resolution`.
struct MergeEvent {
  double resolution = 0.0;
  std::vector<std::vector<std::size_t>> blocks;
};

/// Merge tree over leaf indices. Events are nondecreasing in resolution;
/// several events may share a resolution when disjoint clusters form at the
/// same level. Unmerged clusters at the end are separate roots.
struct Dendrogram {
  std::vector<std::string> leaves;
  std::vector<MergeEvent> merges;

  /// Final clusters, ordered by smallest label.
  std::vector<std::vector<std::size_t>> roots() const;
  bool is_forest() const { return roots().size() > 1; }
};

/// Merge tree of a valid ultrametric: one event per cluster formed at each
/// distinct finite value. Throws ValidationError if `u` fails validation at
/// `tolerance`.
Dendrogram to_dendrogram(const Ultrametric& u, double tolerance = 0.0);

/// Inverse of to_dendrogram(). Throws ValidationError on non-nested merges.
Ultrametric from_dendrogram(const Dendrogram& d);

/// Newick with node heights equal to merge resolutions (leaves at height 0,
/// branch length = parent height - child height). A forest yields one tree
/// per line.
std::string to_newick(const Dendrogram& d);

/// {"labels", "merges": [{"resolution", "blocks"}], "matrix", "provenance"};
/// +inf matrix entries are null.
std::string to_json(const Dendrogram& d, const Ultrametric& u);

/// Directed threshold graph: edge i -> j wherever A(i, j) <= delta. Nodes
/// co-clustered by `u` at delta are grouped into cluster subgraphs.
std::string to_dot(const Network& net, const Ultrametric& u, double delta);

/// Dense CSV in the network layout.
std::string to_csv(const std::vector<std::string>& labels, const DioidMatrix& m);

/// One block per line, labels comma-separated.
std::string partition_to_text(const Partition& p, const std::vector<std::string>& labels);
std::string partition_to_json(const Partition& p, const std::vector<std::string>& labels);

/// Human-readable merge list: "<resolution> -> {a} + {b}" per event.
std::string merge_summary(const Dendrogram& d);

}  // namespace dioclust
