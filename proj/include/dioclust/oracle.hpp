#pragma once

// Brute-force reference implementations. Everything here enumerates simple
// chains directly and never touches the dioid algebra, so it can be used to
// check the matrix-power methods.

#include <cstddef>
#include <optional>
#include <vector>

#include "dioclust/network.hpp"
#include "dioclust/ultrametric.hpp"

namespace dioclust::oracle {

/// Largest network the brute_* ultrametric builders accept.
inline constexpr std::size_t kMaxNodes = 8;

struct Chain {
  std::vector<std::size_t> nodes;  // empty when no chain exists
  double cost = 0.0;               // max over consecutive dissimilarities
};

/// Cheapest simple chain from src to dst with at most `max_nodes` nodes
/// (endpoints included). src == dst gives the single-node chain of cost 0.
Chain brute_minimax_chain(const DioidMatrix& a, std::size_t src, std::size_t dst,
                          std::optional<std::size_t> max_nodes = std::nullopt);

/// Cost of brute_minimax_chain(); +inf when dst is unreachable.
double brute_minimax_cost(const Network& net, std::size_t src, std::size_t dst,
                          std::optional<std::size_t> max_nodes = std::nullopt);

Ultrametric brute_reciprocal(const Network& net);
Ultrametric brute_nonreciprocal(const Network& net);
Ultrametric brute_semi_reciprocal(const Network& net, std::size_t t);

/// Requires a symmetric network.
Ultrametric brute_single_linkage(const Network& net);

}  // namespace dioclust::oracle
