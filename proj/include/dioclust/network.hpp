#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dioclust/dioid.hpp"

namespace dioclust {

/// Labeled node set with an asymmetric dissimilarity matrix.
///
/// Construction only checks shape, label uniqueness and entry signs; the
/// remaining network invariants (zero diagonal, positive off-diagonal) are
/// reported by validate_network() and enforced by the clustering methods.
class Network {
 public:
  Network(std::vector<std::string> labels, DioidMatrix dissimilarities);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const DioidMatrix& dissimilarities() const noexcept { return dissim_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return dissim_(i, j); }

  std::optional<std::size_t> index_of(std::string_view label) const;

 private:
  std::vector<std::string> labels_;
  DioidMatrix dissim_;
};

enum class NetworkFormat { dense_csv, edge_list };

/// Dense CSV: header row and first column carry labels, "inf" or an empty
/// cell is +inf (an empty diagonal cell is 0). Edge list: tab-separated
/// `src dst weight` lines, unlisted pairs are +inf, a single-field line
/// declares an isolated node, '#' starts a comment line.
Network load_network(std::istream& in, NetworkFormat format);
Network load_network_file(const std::filesystem::path& path, NetworkFormat format);

/// Writes the dense CSV layout read by load_network().
void save_network(std::ostream& out, const Network& net);

/// Input-output "uses" table: flow(i, j) is how much of sector i's output is
/// consumed by sector j.
struct UsesTable {
  std::vector<std::string> labels;
  std::vector<double> flow;  // row-major, size() * size()

  std::size_t size() const noexcept { return labels.size(); }
  double operator()(std::size_t i, std::size_t j) const { return flow[i * labels.size() + j]; }
};

/// Same dense layout as the network CSV; empty cells are zero flow.
UsesTable load_uses_table(std::istream& in);

struct UsesOptions {
  /// Drop the self-flow U(j, j) from column j's total.
  bool exclude_diagonal = false;
};

/// A(i, j) = 1 - U(i, j) / sum_k U(k, j) off the diagonal, 0 on it.
Network from_uses_table(const UsesTable& table, UsesOptions options = {});

struct NetworkReport {
  std::vector<std::string> violations;
  /// Every directed minimax cost is finite (the finite edges form a strongly
  /// connected digraph). False means method outputs are forests.
  bool minimax_connected = true;

  bool valid() const noexcept { return violations.empty(); }
  std::string to_string() const;
};

NetworkReport validate_network(const Network& net);

/// Throws ValidationError listing the violations when the network is invalid.
void require_valid(const Network& net);

}  // namespace dioclust
