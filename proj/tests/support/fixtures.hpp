#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dioclust/network.hpp"

namespace fixtures {

using dioclust::DioidMatrix;
using dioclust::Network;

using Edges = std::map<std::pair<std::string, std::string>, double>;

inline Network from_edges(const std::vector<std::string>& labels, const Edges& edges, double undrawn) {
  const std::size_t n = labels.size();
  std::vector<double> a(n * n, undrawn);
  for (std::size_t i = 0; i < n; ++i) a[i * n + i] = 0.0;
  auto index = [&](const std::string& s) {
    for (std::size_t i = 0; i < n; ++i)
      if (labels[i] == s) return i;
    throw std::out_of_range(s);
  };
  for (const auto& [e, w] : edges) a[index(e.first) * n + index(e.second)] = w;
  return Network(labels, DioidMatrix(n, std::move(a)));
}

// Four-node loop a->b->c->d->a at 1 with heavier reverse edges.
inline Network loop4(double undrawn = 6.0) {
  return from_edges({"a", "b", "c", "d"},
                    {{{"a", "b"}, 1}, {{"b", "c"}, 1}, {{"c", "d"}, 1}, {{"d", "a"}, 1},
                     {{"b", "a"}, 3}, {{"c", "b"}, 5}, {{"d", "c"}, 2}, {{"a", "d"}, 5}},
                    undrawn);
}

// Eight-node network where u(x, x') steps down 4, 3, 2, 1 as the
// semi-reciprocal chain length grows.
inline Network ladder8(double undrawn = 5.0) {
  return from_edges(
      {"x", "x1", "x2", "x3", "x4", "x'", "x5", "x6"},
      {{{"x", "x1"}, 1},  {{"x1", "x2"}, 1}, {{"x2", "x4"}, 1}, {{"x3", "x4"}, 2},
       {{"x4", "x'"}, 1}, {{"x'", "x5"}, 1}, {{"x5", "x6"}, 1}, {{"x6", "x"}, 1},
       {{"x1", "x3"}, 3}, {{"x2", "x3"}, 2}, {{"x5", "x3"}, 2}, {{"x3", "x'"}, 4},
       {{"x'", "x3"}, 4}, {{"x", "x3"}, 4},  {{"x3", "x"}, 4},  {{"x3", "x6"}, 2}},
      undrawn);
}

inline std::vector<std::string> make_labels(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("n" + std::to_string(i));
  return labels;
}

/// Dissimilarities uniform in (0, 1].
inline Network random_network(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) a[i * n + j] = 1.0 - u(rng);
  return Network(make_labels(n), DioidMatrix(n, std::move(a)));
}

/// Values from {1, ..., levels}: many ties, which stresses equal-resolution merges.
inline Network random_tied_network(std::mt19937_64& rng, std::size_t n, int levels = 4) {
  std::uniform_int_distribution<int> u(1, levels);
  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) a[i * n + j] = u(rng);
  return Network(make_labels(n), DioidMatrix(n, std::move(a)));
}

/// Each off-diagonal edge absent (+inf) with probability p_missing.
inline Network random_sparse_network(std::mt19937_64& rng, std::size_t n, double p_missing) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) a[i * n + j] = u(rng) < p_missing ? dioclust::kInfinity : 1.0 - u(rng);
  return Network(make_labels(n), DioidMatrix(n, std::move(a)));
}

inline Network random_symmetric_network(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a[i * n + j] = a[j * n + i] = 1.0 - u(rng);
  return Network(make_labels(n), DioidMatrix(n, std::move(a)));
}

inline double value(const Network& net, const std::string& from, const std::string& to) {
  return net(*net.index_of(from), *net.index_of(to));
}

}  // namespace fixtures
