#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dioclust/dioid.hpp"

namespace dioclust {

/// Which method produced an output, in canonical spec form.
struct Provenance {
  std::string method;  // kind name, e.g. "semi-reciprocal"
  std::string spec;    // full spec, e.g. "semi-reciprocal:3"
  std::size_t n = 0;
};

/// Labeled ultrametric matrix. Use validate_ultrametric() to check it; the
/// clustering methods produce valid ones by construction.
struct Ultrametric {
  std::vector<std::string> labels;
  DioidMatrix dist;
  Provenance provenance;

  std::size_t size() const noexcept { return labels.size(); }
  double operator()(std::size_t i, std::size_t j) const noexcept { return dist(i, j); }
};

/// u(x, y) > max(u(x, via), u(via, y)).
struct TripleViolation {
  std::size_t x;
  std::size_t via;
  std::size_t y;
};

struct UltrametricReport {
  static constexpr std::size_t kMaxReported = 20;

  std::vector<std::pair<std::size_t, std::size_t>> asymmetric_pairs;
  std::vector<std::size_t> nonzero_diagonal;
  std::vector<std::pair<std::size_t, std::size_t>> nonpositive_pairs;
  std::vector<TripleViolation> triples;  // first kMaxReported in scan order
  std::size_t triple_count = 0;
  bool idempotent = true;  // m (x) m == m within tolerance
  double tolerance = 0.0;

  bool valid() const noexcept {
    return asymmetric_pairs.empty() && nonzero_diagonal.empty() && nonpositive_pairs.empty() &&
           triple_count == 0 && idempotent;
  }

  std::string to_string(const std::vector<std::string>& labels, const DioidMatrix& m) const;
};

/// Checks symmetry, the identity property, the strong triangle inequality by
/// triple scan and, independently, dioid idempotency. Triples are scanned as
/// x < y, then via ascending.
UltrametricReport validate_ultrametric(const DioidMatrix& m, double tolerance = 0.0);

/// Nodes grouped by resolution: blocks are the classes of u(x, y) <= delta.
struct Partition {
  double resolution = 0.0;
  std::vector<std::vector<std::size_t>> blocks;
};

/// Blocks ordered by smallest label; members sorted by label.
Partition cut_at_resolution(const Ultrametric& u, double delta);

}  // namespace dioclust
