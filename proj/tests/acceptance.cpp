// Acceptance run: one PASS/FAIL/SKIP line per criterion, exit status 1 if
// anything failed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "dioclust/dendrogram.hpp"
#include "dioclust/methods.hpp"
#include "dioclust/oracle.hpp"
#include "support/fixtures.hpp"
#include "support/properties.hpp"

using namespace dioclust;

namespace {

struct Outcome {
  enum Kind { pass, fail, skip } kind = pass;
  std::string detail;
};

Outcome failed(std::string why) { return {Outcome::fail, std::move(why)}; }

int failures = 0;

void criterion(const std::string& id, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = failed(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (o.kind == Outcome::pass && limit_s > 0 && secs > limit_s) {
    o = failed("took " + std::to_string(secs) + " s, limit " + std::to_string(limit_s) + " s");
  }
  const char* tag = o.kind == Outcome::pass ? "[PASS]" : o.kind == Outcome::fail ? "[FAIL]" : "[SKIP]";
  if (o.kind == Outcome::fail) ++failures;
  char timing[32];
  std::snprintf(timing, sizeof timing, "%.3f s", secs);
  std::cout << tag << ' ' << id << ' ' << title << " (" << timing << ")";
  while (!o.detail.empty() && o.detail.back() == '\n') o.detail.pop_back();
  for (auto pos = o.detail.find('\n'); pos != std::string::npos; pos = o.detail.find('\n', pos))
    o.detail.replace(pos, 1, "; ");
  if (!o.detail.empty()) std::cout << ": " << o.detail;
  std::cout << std::endl;
}

double pair_value(const Ultrametric& u, const std::string& a, const std::string& b) {
  std::size_t i = u.size(), j = u.size();
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (u.labels[k] == a) i = k;
    if (u.labels[k] == b) j = k;
  }
  if (i == u.size() || j == u.size()) throw std::runtime_error("no pair " + a + "," + b);
  return u(i, j);
}

// Every unordered pair equals expected[pair] or `rest`.
std::string mismatch(const Ultrametric& u, const std::map<std::pair<std::string, std::string>, double>& expected,
                     double rest) {
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < u.size(); ++j) {
      if (i == j) continue;
      auto it = expected.find({std::min(u.labels[i], u.labels[j]), std::max(u.labels[i], u.labels[j])});
      const double want = it == expected.end() ? rest : it->second;
      if (u(i, j) != want) {
        return u.provenance.spec + " u(" + u.labels[i] + "," + u.labels[j] + ")=" + std::to_string(u(i, j)) +
               ", expected " + std::to_string(want);
      }
    }
  return {};
}

Outcome loop4_exact() {
  for (double undrawn : {6.0, 100.0}) {
    const auto net = fixtures::loop4(undrawn);
    for (const auto& m : {mismatch(reciprocal(net), {{{"c", "d"}, 2}, {{"a", "b"}, 3}}, 5),
                          mismatch(nonreciprocal(net), {}, 1),
                          mismatch(graft_r_nr(net, 4), {{{"c", "d"}, 1}, {{"a", "b"}, 1}}, 5)})
      if (!m.empty()) return failed(m);
  }
  return {};
}

Outcome ladder8_sweep() {
  const double expected[] = {4, 3, 2, 1, 1, 1, 1};
  for (double undrawn : {5.0, 100.0}) {
    const auto net = fixtures::ladder8(undrawn);
    for (std::size_t t = 2; t <= 8; ++t) {
      const double got = pair_value(semi_reciprocal(net, t), "x", "x'");
      if (got != expected[t - 2]) {
        return failed("t=" + std::to_string(t) + " gives " + std::to_string(got));
      }
    }
  }
  return {};
}

Outcome counterexample() {
  const auto g = graft_r_r_invalid(fixtures::loop4(), 4);
  if (g.report.valid()) return failed("matrix passed validation");
  for (const auto& t : g.report.triples) {
    if (g.labels[t.x] == "a" && g.labels[t.via] == "c" && g.labels[t.y] == "b") {
      if (g.matrix(t.x, t.y) == 3 && g.matrix(t.x, t.via) == 1 && g.matrix(t.via, t.y) == 1) return {};
      return failed("triple (a,c,b) has unexpected values");
    }
  }
  return failed("triple (a,c,b) not reported");
}

Outcome sandwich() {
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<std::size_t> size(2, 12);
  std::size_t checks = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto net = fixtures::random_network(rng, size(rng));
    for (const auto& spec : props::admissible_specs(rng, net.size())) {
      const auto v = props::sandwich_violation(net, spec);
      if (!v.empty()) return failed("network " + std::to_string(trial) + ": " + v);
      ++checks;
    }
  }
  return {Outcome::pass, "200 networks, " + std::to_string(checks) + " method runs"};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(1002);
  std::uniform_int_distribution<std::size_t> size(1, 7);
  for (int trial = 0; trial < 100; ++trial) {
    const auto net = trial % 4 == 3 ? fixtures::random_tied_network(rng, size(rng), 3)
                                    : fixtures::random_network(rng, size(rng));
    if (reciprocal(net).dist != oracle::brute_reciprocal(net).dist) return failed("reciprocal, network " + std::to_string(trial));
    if (nonreciprocal(net).dist != oracle::brute_nonreciprocal(net).dist)
      return failed("nonreciprocal, network " + std::to_string(trial));
    for (std::size_t t = 2; t <= 7; ++t)
      if (semi_reciprocal(net, t).dist != oracle::brute_semi_reciprocal(net, t).dist)
        return failed("semi-reciprocal:" + std::to_string(t) + ", network " + std::to_string(trial));
  }
  return {Outcome::pass, "100 networks"};
}

Outcome axioms() {
  std::mt19937_64 rng(1003);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double alpha = 1.0 - unit(rng), beta = 1.0 - unit(rng);
    const Network net({"p", "q"}, DioidMatrix{{0, alpha}, {beta, 0}});
    for (const auto& spec : props::admissible_specs(rng, 2)) {
      const auto u = run_method(net, spec).output;
      const double want = std::max(alpha, beta);
      if (std::abs(u(0, 1) - want) > props::tolerance_for(spec) || u(1, 0) != u(0, 1))
        return failed("A1 fails for " + spec.to_string());
    }
  }
  std::uniform_int_distribution<std::size_t> size(2, 8);
  for (int trial = 0; trial < 50; ++trial) {
    const auto net = fixtures::random_network(rng, size(rng));
    const auto scaled = props::random_scaling(rng, net);
    const auto merged = props::random_merge(rng, net, trial % 2 == 0);
    for (const auto& spec : props::admissible_specs(rng, net.size())) {
      if (!props::dominated(net, scaled, spec)) return failed("A2 (scaling) fails for " + spec.to_string());
      if (!props::dominated(net, merged, spec)) return failed("A2 (merging) fails for " + spec.to_string());
    }
  }
  return {Outcome::pass, "50 two-node networks, 50 scaling and 50 merging maps"};
}

Outcome validity() {
  std::mt19937_64 rng(1004);
  std::uniform_int_distribution<std::size_t> size(1, 12);
  std::size_t runs = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto net = trial % 3 == 0 ? fixtures::random_sparse_network(rng, size(rng), 0.5)
                                    : fixtures::random_network(rng, size(rng));
    for (const auto& spec : props::admissible_specs(rng, net.size())) {
      const auto r = run_method(net, spec);
      if (!r.is_ultrametric()) return failed(spec.to_string() + ": " + r.report.to_string(r.output.labels, r.output.dist));
      if (spec.exact() && dioid_product(r.output.dist, r.output.dist) != r.output.dist)
        return failed(spec.to_string() + ": u*u != u");
      ++runs;
    }
  }
  return {Outcome::pass, std::to_string(runs) + " outputs"};
}

Outcome identities() {
  std::mt19937_64 rng(1005);
  std::uniform_int_distribution<std::size_t> size(2, 10);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = size(rng);
    const auto net = trial % 2 ? fixtures::random_tied_network(rng, n) : fixtures::random_network(rng, n);
    const auto r = reciprocal(net).dist;
    const auto nr = nonreciprocal(net).dist;
    if (semi_reciprocal(net, 2).dist != r) return failed("semi-reciprocal:2 != reciprocal");
    for (std::size_t t = n; t <= n + 2; ++t)
      if (semi_reciprocal(net, t).dist != nr) return failed("semi-reciprocal:t>=n != nonreciprocal");
    if (intermediate(net, 1, 1).dist != r) return failed("intermediate:1,1 != reciprocal");
    if (intermediate(net, n - 1, n - 1).dist != nr) return failed("intermediate:n-1,n-1 != nonreciprocal");

    const auto sym = fixtures::random_symmetric_network(rng, n);
    const auto sl = single_linkage(sym).dist;
    for (const auto& spec : props::admissible_specs(rng, n)) {
      const auto u = run_method(sym, spec).output.dist;
      const bool same = spec.exact() ? u == sl
                                     : entrywise_leq(u, sl, kConvexTolerance) && entrywise_leq(sl, u, kConvexTolerance);
      if (!same) return failed(spec.to_string() + " differs from single linkage on a symmetric network");
    }
  }
  return {Outcome::pass, "100 asymmetric and 100 symmetric networks"};
}

Outcome stabilization() {
  std::mt19937_64 rng(1006);
  std::uniform_int_distribution<std::size_t> size(1, 16);
  for (int trial = 0; trial < 200; ++trial) {
    const auto net = trial % 3 == 0 ? fixtures::random_sparse_network(rng, size(rng), 0.6)
                     : trial % 3 == 1 ? fixtures::random_tied_network(rng, size(rng))
                                      : fixtures::random_network(rng, size(rng));
    const auto& a = net.dissimilarities();
    const std::size_t n = a.size();
    // Plain repeated multiplication, independent of the squaring shortcut.
    DioidMatrix p = a;
    for (std::size_t k = 1; k + 1 < n; ++k) p = dioid_product(p, a);
    if (dioid_product(p, a) != p) return failed("A^(n-1) != A^n for n=" + std::to_string(n));
    if (n >= 2 && dioid_power(a, n - 1) != p) return failed("repeated squaring disagrees with plain powers");
  }
  for (const auto& net : {fixtures::loop4(), fixtures::ladder8()}) {
    const auto& a = net.dissimilarities();
    if (dioid_product(quasi_inverse(a), a) != quasi_inverse(a)) return failed("fixture does not stabilize");
  }
  return {Outcome::pass, "200 random networks and both fixtures"};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("missing " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome round_trip() {
  std::mt19937_64 rng(1007);
  std::uniform_int_distribution<std::size_t> size(1, 12);
  for (int trial = 0; trial < 100; ++trial) {
    const auto net = trial % 3 == 0 ? fixtures::random_sparse_network(rng, size(rng), 0.6)
                     : trial % 3 == 1 ? fixtures::random_tied_network(rng, size(rng))
                                      : fixtures::random_network(rng, size(rng));
    for (const auto& spec : props::admissible_specs(rng, net.size())) {
      const auto r = run_method(net, spec);
      if (from_dendrogram(to_dendrogram(r.output, r.report.tolerance)).dist != r.output.dist)
        return failed(spec.to_string() + " does not round-trip");
    }
  }
  const std::string dir = std::string(DIOCLUST_TEST_DIR) + "/golden/";
  const auto r3 = reciprocal(fixtures::loop4());
  const auto d3 = to_dendrogram(r3);
  if (to_newick(d3) != read_file(dir + "loop4_reciprocal.nwk")) return failed("loop4_reciprocal.nwk differs");
  if (to_json(d3, r3) != read_file(dir + "loop4_reciprocal.json")) return failed("loop4_reciprocal.json differs");
  if (to_newick(to_dendrogram(graft_r_nr(fixtures::loop4(), 4))) != read_file(dir + "loop4_graft_rnr.nwk"))
    return failed("loop4_graft_rnr.nwk differs");
  const auto s5 = semi_reciprocal(fixtures::ladder8(), 3);
  const auto d5 = to_dendrogram(s5);
  if (to_newick(d5) != read_file(dir + "ladder8_semi_reciprocal_3.nwk")) return failed("ladder8_semi_reciprocal_3.nwk differs");
  if (to_json(d5, s5) != read_file(dir + "ladder8_semi_reciprocal_3.json"))
    return failed("ladder8_semi_reciprocal_3.json differs");
  return {Outcome::pass, "100 random networks, 5 golden files"};
}

Outcome performance() {
  std::mt19937_64 rng(1008);
  const auto net = fixtures::random_network(rng, 300);
  const auto u = reciprocal(net);
  if (!validate_ultrametric(u.dist).valid()) return failed("output is not an ultrametric");
  return {Outcome::pass, "n=300"};
}

// True when some merge event sits within tol of `resolution`.
bool has_event(const Dendrogram& d, double resolution, double tol) {
  for (const auto& e : d.merges)
    if (std::abs(e.resolution - resolution) <= tol) return true;
  return false;
}

std::vector<std::string> event_members(const Dendrogram& d, const MergeEvent& e) {
  std::vector<std::string> names;
  for (const auto& block : e.blocks)
    for (std::size_t leaf : block) names.push_back(d.leaves[leaf]);
  std::sort(names.begin(), names.end());
  return names;
}

Outcome sector_data() {
  const char* path = std::getenv("DIOCLUST_BEA_USES");
  if (!path || !*path) return {Outcome::skip, "set DIOCLUST_BEA_USES to a uses-table CSV to run"};
  std::ifstream in(path);
  if (!in) return failed(std::string("cannot open ") + path);
  const char* excl = std::getenv("DIOCLUST_BEA_EXCLUDE_DIAGONAL");
  const auto net = from_uses_table(load_uses_table(in), UsesOptions{excl && std::string(excl) == "1"});
  constexpr double tol = 5e-4;

  const auto dr = to_dendrogram(reciprocal(net));
  if (dr.merges.empty()) return failed("reciprocal produced no merges");
  const auto& first = dr.merges.front();
  if (std::abs(first.resolution - 0.887) > tol || event_members(dr, first) != std::vector<std::string>{"AS", "MP"})
    return failed("reciprocal first merge is " + merge_summary(Dendrogram{dr.leaves, {first}}));
  if (!has_event(dr, 0.959, tol) || !has_event(dr, 0.969, tol)) return failed("reciprocal lacks events at 0.959/0.969");

  const auto dn = to_dendrogram(nonreciprocal(net));
  if (dn.merges.empty()) return failed("nonreciprocal produced no merges");
  const auto& nfirst = dn.merges.front();
  if (std::abs(nfirst.resolution - 0.885) > tol ||
      event_members(dn, nfirst) != std::vector<std::string>{"CO", "OG", "PC"})
    return failed("nonreciprocal first cluster is " + merge_summary(Dendrogram{dn.leaves, {nfirst}}));

  const auto ds = to_dendrogram(semi_reciprocal(net, 3));
  if (!has_event(ds, 0.909, tol) || !has_event(ds, 0.917, tol)) return failed("semi-reciprocal:3 lacks events at 0.909/0.917");
  return {};
}

}  // namespace

int main() {
  criterion("AC1", "four-node loop: reciprocal, nonreciprocal, graft-rnr:4 exact", 1.0, loop4_exact);
  criterion("AC2", "eight-node network: semi-reciprocal u(x,x') = 4,3,2,1", 1.0, ladder8_sweep);
  criterion("AC3", "graft-rr-invalid:4 violates the strong triangle inequality at (a,c,b)", 1.0, counterexample);
  criterion("AC4", "nonreciprocal <= u <= reciprocal for every method", 30.0, sandwich);
  criterion("AC5", "dioid methods match brute-force chain enumeration", 60.0, oracle_equivalence);
  criterion("AC6", "value and transformation axioms", 0.0, axioms);
  criterion("AC7", "outputs are valid idempotent ultrametrics", 0.0, validity);
  criterion("AC8", "identities between methods and with single linkage", 0.0, identities);
  criterion("AC9", "dioid powers stabilize at n-1", 0.0, stabilization);
  criterion("AC10", "ultrametric/dendrogram round trip and golden exports", 0.0, round_trip);
  criterion("AC11", "reciprocal clustering of 300 nodes", 10.0, performance);
  criterion("AC12", "sector uses table merge resolutions", 0.0, sector_data);
  return failures == 0 ? 0 : 1;
}
