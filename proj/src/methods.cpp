#include "dioclust/methods.hpp"

#include <cmath>
#include <numeric>

#include "dioclust/errors.hpp"
#include "dioclust/text.hpp"

namespace dioclust {

std::string_view kind_name(MethodKind kind) {
  switch (kind) {
    case MethodKind::reciprocal: return "reciprocal";
    case MethodKind::nonreciprocal: return "nonreciprocal";
    case MethodKind::semi_reciprocal: return "semi-reciprocal";
    case MethodKind::intermediate: return "intermediate";
    case MethodKind::graft_r_nr: return "graft-rnr";
    case MethodKind::graft_r_rmax: return "graft-rrmax";
    case MethodKind::graft_r_r_invalid: return "graft-rr-invalid";
    case MethodKind::convex: return "convex";
    case MethodKind::single_linkage: return "single-linkage";
  }
  return "unknown";
}

MethodSpec MethodSpec::semi_reciprocal(std::size_t t) {
  MethodSpec s = of(MethodKind::semi_reciprocal);
  s.t = t;
  return s;
}

MethodSpec MethodSpec::intermediate(std::size_t t_fwd, std::size_t t_bwd) {
  MethodSpec s = of(MethodKind::intermediate);
  s.t_fwd = t_fwd;
  s.t_bwd = t_bwd;
  return s;
}

MethodSpec MethodSpec::graft_r_nr(double beta) {
  MethodSpec s = of(MethodKind::graft_r_nr);
  s.beta = beta;
  return s;
}

MethodSpec MethodSpec::graft_r_rmax(double beta) {
  MethodSpec s = of(MethodKind::graft_r_rmax);
  s.beta = beta;
  return s;
}

MethodSpec MethodSpec::graft_r_r_invalid(double beta) {
  MethodSpec s = of(MethodKind::graft_r_r_invalid);
  s.beta = beta;
  return s;
}

MethodSpec MethodSpec::convex(std::vector<double> weights, std::vector<MethodSpec> constituents) {
  MethodSpec s = of(MethodKind::convex);
  s.weights = std::move(weights);
  s.constituents = std::move(constituents);
  return s;
}

namespace {

void check_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw ArgumentError("grafting threshold beta must be a positive real, got " + format_number(beta));
  }
}

void check_semi_reciprocal_t(std::size_t t) {
  if (t < 2) throw ArgumentError("semi-reciprocal requires t >= 2, got " + std::to_string(t));
}

void check_intermediate_t(std::size_t t_fwd, std::size_t t_bwd) {
  if (t_fwd < 1 || t_bwd < 1) {
    throw ArgumentError("intermediate requires t, t' >= 1, got " + std::to_string(t_fwd) + "," +
                        std::to_string(t_bwd));
  }
}

}  // namespace

void MethodSpec::validate() const {
  switch (kind) {
    case MethodKind::reciprocal:
    case MethodKind::nonreciprocal:
    case MethodKind::single_linkage:
      return;
    case MethodKind::semi_reciprocal:
      check_semi_reciprocal_t(t);
      return;
    case MethodKind::intermediate:
      check_intermediate_t(t_fwd, t_bwd);
      return;
    case MethodKind::graft_r_nr:
    case MethodKind::graft_r_rmax:
    case MethodKind::graft_r_r_invalid:
      check_beta(beta);
      return;
    case MethodKind::convex: {
      if (constituents.size() < 2) throw ArgumentError("convex combination needs at least two constituents");
      if (weights.size() != constituents.size()) {
        throw ArgumentError("convex combination: " + std::to_string(weights.size()) + " weights for " +
                            std::to_string(constituents.size()) + " constituents");
      }
      for (double w : weights) {
        if (!(w >= 0.0 && w <= 1.0)) throw ArgumentError("convex weight " + format_number(w) + " is outside [0,1]");
      }
      const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
      if (!(std::abs(sum - 1.0) <= kWeightSumTolerance)) {
        throw ArgumentError("convex weights sum to " + format_number(sum) + ", not 1");
      }
      for (const auto& c : constituents) {
        if (c.kind == MethodKind::graft_r_r_invalid) {
          throw ArgumentError("convex combination: graft-rr-invalid is not an admissible constituent");
        }
        c.validate();
      }
      return;
    }
  }
  throw ArgumentError("unknown method kind");
}

bool MethodSpec::exact() const {
  return kind != MethodKind::convex;
}

std::string MethodSpec::to_string() const {
  std::string s(kind_name(kind));
  switch (kind) {
    case MethodKind::reciprocal:
    case MethodKind::nonreciprocal:
    case MethodKind::single_linkage:
      return s;
    case MethodKind::semi_reciprocal:
      return s + ":" + std::to_string(t);
    case MethodKind::intermediate:
      return s + ":" + std::to_string(t_fwd) + "," + std::to_string(t_bwd);
    case MethodKind::graft_r_nr:
    case MethodKind::graft_r_rmax:
    case MethodKind::graft_r_r_invalid:
      return s + ":" + format_number(beta);
    case MethodKind::convex:
      s += ":";
      for (std::size_t k = 0; k < constituents.size(); ++k) {
        if (k) s += "+";
        s += format_number(k < weights.size() ? weights[k] : 0.0) + "*";
        const bool nested = constituents[k].kind == MethodKind::convex;
        s += nested ? "(" + constituents[k].to_string() + ")" : constituents[k].to_string();
      }
      return s;
  }
  return s;
}

namespace {

Ultrametric make_ultrametric(const Network& net, DioidMatrix dist, const MethodSpec& spec) {
  return Ultrametric{net.labels(), std::move(dist),
                     Provenance{std::string(kind_name(spec.kind)), spec.to_string(), net.size()}};
}

// Exponents past n-1 give the same dioid power; keep them small.
std::size_t clamp_power(std::size_t k, std::size_t n) {
  return std::min(k, std::max<std::size_t>(n, 2) - 1);
}

DioidMatrix reciprocal_matrix(const DioidMatrix& a) { return quasi_inverse(symmetrize_max(a)); }

DioidMatrix nonreciprocal_matrix(const DioidMatrix& a) {
  const DioidMatrix costs = quasi_inverse(a);
  return elementwise_max(costs, costs.transposed());
}

DioidMatrix intermediate_matrix(const DioidMatrix& a, std::size_t t_fwd, std::size_t t_bwd) {
  const std::size_t n = a.size();
  const DioidMatrix fwd = dioid_power(a, clamp_power(t_fwd, n));
  const DioidMatrix bwd = t_bwd == t_fwd ? fwd.transposed() : dioid_power(a, clamp_power(t_bwd, n)).transposed();
  return quasi_inverse(elementwise_max(fwd, bwd));
}

}  // namespace

Ultrametric reciprocal(const Network& net) {
  require_valid(net);
  return make_ultrametric(net, reciprocal_matrix(net.dissimilarities()), MethodSpec::reciprocal());
}

Ultrametric nonreciprocal(const Network& net) {
  require_valid(net);
  return make_ultrametric(net, nonreciprocal_matrix(net.dissimilarities()), MethodSpec::nonreciprocal());
}

Ultrametric semi_reciprocal(const Network& net, std::size_t t) {
  check_semi_reciprocal_t(t);
  require_valid(net);
  return make_ultrametric(net, intermediate_matrix(net.dissimilarities(), t - 1, t - 1),
                          MethodSpec::semi_reciprocal(t));
}

Ultrametric intermediate(const Network& net, std::size_t t_fwd, std::size_t t_bwd) {
  check_intermediate_t(t_fwd, t_bwd);
  require_valid(net);
  return make_ultrametric(net, intermediate_matrix(net.dissimilarities(), t_fwd, t_bwd),
                          MethodSpec::intermediate(t_fwd, t_bwd));
}

namespace {

// Entrywise: pick `low` where the reciprocal value is <= beta, `high` otherwise.
template <typename Low, typename High>
DioidMatrix graft(const DioidMatrix& r, const DioidMatrix& nr, double beta, Low low, High high) {
  const std::size_t n = r.size();
  std::vector<double> out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out[i * n + j] = r(i, j) <= beta ? low(r(i, j), nr(i, j)) : high(r(i, j), nr(i, j));
  return DioidMatrix(n, std::move(out));
}

}  // namespace

Ultrametric graft_r_nr(const Network& net, double beta) {
  check_beta(beta);
  require_valid(net);
  const auto& a = net.dissimilarities();
  const DioidMatrix m = graft(
      reciprocal_matrix(a), nonreciprocal_matrix(a), beta, [](double, double nr) { return nr; },
      [](double r, double) { return r; });
  return make_ultrametric(net, m, MethodSpec::graft_r_nr(beta));
}

Ultrametric graft_r_rmax(const Network& net, double beta) {
  check_beta(beta);
  require_valid(net);
  const auto& a = net.dissimilarities();
  const DioidMatrix m = graft(
      reciprocal_matrix(a), nonreciprocal_matrix(a), beta, [](double r, double) { return r; },
      [beta](double, double nr) { return std::max(beta, nr); });
  return make_ultrametric(net, m, MethodSpec::graft_r_rmax(beta));
}

GraftCounterexample graft_r_r_invalid(const Network& net, double beta) {
  check_beta(beta);
  require_valid(net);
  const auto& a = net.dissimilarities();
  DioidMatrix m = graft(
      reciprocal_matrix(a), nonreciprocal_matrix(a), beta, [](double r, double) { return r; },
      [](double, double nr) { return nr; });
  auto report = validate_ultrametric(m, 0.0);
  return {net.labels(), std::move(m), std::move(report)};
}

Ultrametric convex_combination(const Network& net, const MethodSpec& spec) {
  if (spec.kind != MethodKind::convex) throw ArgumentError("convex_combination: spec is not convex");
  spec.validate();
  require_valid(net);
  const std::size_t n = net.size();
  std::vector<double> sum(n * n, 0.0);
  for (std::size_t k = 0; k < spec.constituents.size(); ++k) {
    const double w = spec.weights[k];
    const MethodResult part = run_method(net, spec.constituents[k]);
    if (!part.is_ultrametric()) {
      throw ConsistencyError("convex constituent " + spec.constituents[k].to_string() +
                             " did not produce an ultrametric");
    }
    if (w == 0.0) continue;  // a zero weight contributes 0 even against +inf
    const auto entries = part.output.dist.entries();
    for (std::size_t e = 0; e < sum.size(); ++e) sum[e] += w * entries[e];
  }
  // Single linkage of the combined symmetric matrix.
  return make_ultrametric(net, quasi_inverse(DioidMatrix(n, std::move(sum))), spec);
}

Ultrametric single_linkage(const Network& net) {
  require_valid(net);
  if (!net.dissimilarities().is_symmetric()) {
    throw ArgumentError(
        "single-linkage requires a symmetric network; use reciprocal, nonreciprocal or another "
        "asymmetric method");
  }
  return make_ultrametric(net, quasi_inverse(net.dissimilarities()), MethodSpec::single_linkage());
}

MethodResult run_method(const Network& net, const MethodSpec& spec) {
  spec.validate();
  auto finish = [&](Ultrametric u) {
    auto report = validate_ultrametric(u.dist, spec.exact() ? 0.0 : kConvexTolerance);
    return MethodResult{std::move(u), std::move(report)};
  };
  switch (spec.kind) {
    case MethodKind::reciprocal: return finish(reciprocal(net));
    case MethodKind::nonreciprocal: return finish(nonreciprocal(net));
    case MethodKind::semi_reciprocal: return finish(semi_reciprocal(net, spec.t));
    case MethodKind::intermediate: return finish(intermediate(net, spec.t_fwd, spec.t_bwd));
    case MethodKind::graft_r_nr: return finish(graft_r_nr(net, spec.beta));
    case MethodKind::graft_r_rmax: return finish(graft_r_rmax(net, spec.beta));
    case MethodKind::convex: return finish(convex_combination(net, spec));
    case MethodKind::single_linkage: return finish(single_linkage(net));
    case MethodKind::graft_r_r_invalid: {
      auto g = graft_r_r_invalid(net, spec.beta);
      Ultrametric u{std::move(g.labels), std::move(g.matrix),
                    Provenance{std::string(kind_name(spec.kind)), spec.to_string(), net.size()}};
      return MethodResult{std::move(u), std::move(g.report)};
    }
  }
  throw ArgumentError("unknown method kind");
}

}  // namespace dioclust
