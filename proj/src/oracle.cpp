#include "dioclust/oracle.hpp"

#include <algorithm>
#include <limits>

#include "dioclust/errors.hpp"

namespace dioclust::oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Search {
  const DioidMatrix& a;
  std::size_t dst;
  std::size_t max_nodes;
  std::vector<std::size_t> path;
  std::vector<bool> on_path;
  Chain best{{}, kInf};

  void walk(std::size_t at, double cost) {
    if (at == dst) {
      if (best.nodes.empty() || cost < best.cost) best = Chain{path, cost};
      return;
    }
    if (path.size() >= max_nodes) return;
    for (std::size_t next = 0; next < a.size(); ++next) {
      if (on_path[next]) continue;
      const double step = std::max(cost, a(at, next));
      if (step == kInf) continue;
      if (!best.nodes.empty() && step >= best.cost) continue;
      on_path[next] = true;
      path.push_back(next);
      walk(next, step);
      path.pop_back();
      on_path[next] = false;
    }
  }
};

void check_size(const Network& net) {
  if (net.size() > kMaxNodes) {
    throw ArgumentError("oracle: network has " + std::to_string(net.size()) + " nodes, limit is " +
                        std::to_string(kMaxNodes));
  }
}

// Minimax chain cost between every pair over the weights in `w`.
DioidMatrix all_pairs(const DioidMatrix& w, std::optional<std::size_t> max_nodes = std::nullopt) {
  const std::size_t n = w.size();
  std::vector<double> out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = brute_minimax_chain(w, i, j, max_nodes).cost;
  return DioidMatrix(n, std::move(out));
}

Ultrametric wrap(const Network& net, DioidMatrix m, std::string method, std::string spec) {
  return Ultrametric{net.labels(), std::move(m), Provenance{std::move(method), std::move(spec), net.size()}};
}

}  // namespace

Chain brute_minimax_chain(const DioidMatrix& a, std::size_t src, std::size_t dst,
                          std::optional<std::size_t> max_nodes) {
  const std::size_t n = a.size();
  if (src >= n || dst >= n) throw ArgumentError("brute_minimax_chain: node index out of range");
  const std::size_t limit = std::min(max_nodes.value_or(n), n);
  if (limit < 1) throw ArgumentError("brute_minimax_chain: max_nodes must be >= 1");
  if (src == dst) return Chain{{src}, 0.0};
  Search s{a, dst, limit, {src}, std::vector<bool>(n, false)};
  s.on_path[src] = true;
  s.walk(src, 0.0);
  return s.best;
}

double brute_minimax_cost(const Network& net, std::size_t src, std::size_t dst,
                          std::optional<std::size_t> max_nodes) {
  return brute_minimax_chain(net.dissimilarities(), src, dst, max_nodes).cost;
}

Ultrametric brute_reciprocal(const Network& net) {
  check_size(net);
  const std::size_t n = net.size();
  std::vector<double> sym(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) sym[i * n + j] = std::max(net(i, j), net(j, i));
  return wrap(net, all_pairs(DioidMatrix(n, std::move(sym))), "reciprocal", "reciprocal");
}

Ultrametric brute_nonreciprocal(const Network& net) {
  check_size(net);
  const DioidMatrix costs = all_pairs(net.dissimilarities());
  const std::size_t n = net.size();
  std::vector<double> out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = std::max(costs(i, j), costs(j, i));
  return wrap(net, DioidMatrix(n, std::move(out)), "nonreciprocal", "nonreciprocal");
}

Ultrametric brute_semi_reciprocal(const Network& net, std::size_t t) {
  check_size(net);
  if (t < 2) throw ArgumentError("brute_semi_reciprocal: t must be >= 2");
  // Secondary chains of at most t nodes, in both directions, give the cost
  // of each hop on the main chain.
  const DioidMatrix secondary = all_pairs(net.dissimilarities(), t);
  const std::size_t n = net.size();
  std::vector<double> hop(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) hop[i * n + j] = std::max(secondary(i, j), secondary(j, i));
  return wrap(net, all_pairs(DioidMatrix(n, std::move(hop))), "semi-reciprocal",
              "semi-reciprocal:" + std::to_string(t));
}

Ultrametric brute_single_linkage(const Network& net) {
  check_size(net);
  const std::size_t n = net.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (net(i, j) != net(j, i)) throw ArgumentError("brute_single_linkage: network is not symmetric");
  return wrap(net, all_pairs(net.dissimilarities()), "single-linkage", "single-linkage");
}

}  // namespace dioclust::oracle
