#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "dioclust/network.hpp"
#include "dioclust/ultrametric.hpp"

namespace dioclust {

enum class MethodKind {
  reciprocal,
  nonreciprocal,
  semi_reciprocal,
  intermediate,
  graft_r_nr,
  graft_r_rmax,
  graft_r_r_invalid,
  convex,
  single_linkage,
};

std::string_view kind_name(MethodKind kind);

/// Which method to run and with what parameters. Only the fields of the
/// selected kind are meaningful; validate() checks them.
struct MethodSpec {
  MethodKind kind = MethodKind::reciprocal;
  std::size_t t = 0;      // semi_reciprocal: max nodes per secondary chain, >= 2
  std::size_t t_fwd = 0;  // intermediate: forward power, >= 1
  std::size_t t_bwd = 0;  // intermediate: backward power, >= 1
  double beta = 0.0;      // grafting threshold, > 0
  std::vector<double> weights;          // convex
  std::vector<MethodSpec> constituents;  // convex

  static MethodSpec of(MethodKind k) {
    MethodSpec s;
    s.kind = k;
    return s;
  }
  static MethodSpec reciprocal() { return of(MethodKind::reciprocal); }
  static MethodSpec nonreciprocal() { return of(MethodKind::nonreciprocal); }
  static MethodSpec single_linkage() { return of(MethodKind::single_linkage); }
  static MethodSpec semi_reciprocal(std::size_t t);
  static MethodSpec intermediate(std::size_t t_fwd, std::size_t t_bwd);
  static MethodSpec graft_r_nr(double beta);
  static MethodSpec graft_r_rmax(double beta);
  static MethodSpec graft_r_r_invalid(double beta);
  static MethodSpec convex(std::vector<double> weights, std::vector<MethodSpec> constituents);

  /// Throws ArgumentError on missing/out-of-range parameters.
  void validate() const;

  /// True when the method only uses min and max (no convex arithmetic
  /// anywhere in the tree), so its output is exact.
  bool exact() const;

  /// Canonical spec string accepted by parse_method_spec().
  std::string to_string() const;

  friend bool operator==(const MethodSpec&, const MethodSpec&) = default;
};

/// Tolerance used to validate outputs of `spec`: 0 for exact methods.
inline constexpr double kConvexTolerance = 1e-9;
/// Convex weights must sum to one within this.
inline constexpr double kWeightSumTolerance = 1e-12;

Ultrametric reciprocal(const Network& net);
Ultrametric nonreciprocal(const Network& net);
Ultrametric semi_reciprocal(const Network& net, std::size_t t);
Ultrametric intermediate(const Network& net, std::size_t t_fwd, std::size_t t_bwd);
Ultrametric graft_r_nr(const Network& net, double beta);
Ultrametric graft_r_rmax(const Network& net, double beta);
Ultrametric convex_combination(const Network& net, const MethodSpec& spec);
Ultrametric single_linkage(const Network& net);

/// The piecewise matrix that keeps reciprocal values up to beta and switches
/// to nonreciprocal ones above it. Not an ultrametric in general.
struct GraftCounterexample {
  std::vector<std::string> labels;
  DioidMatrix matrix;
  UltrametricReport report;
};

GraftCounterexample graft_r_r_invalid(const Network& net, double beta);

struct MethodResult {
  Ultrametric output;  // holds a non-ultrametric matrix iff !report.valid()
  UltrametricReport report;

  bool is_ultrametric() const noexcept { return report.valid(); }
};

/// Dispatches on spec.kind and validates the output.
MethodResult run_method(const Network& net, const MethodSpec& spec);

}  // namespace dioclust
