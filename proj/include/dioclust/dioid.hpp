#pragma once

// Square matrices over the (min, max) dioid on [0, +inf].
//
// "Addition" is min with identity +inf, "multiplication" is max with identity
// 0. Entry (i, j) of the k-th dioid power of a dissimilarity matrix is the
// minimax cost of a chain from i to j with at most k hops.

#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <vector>

namespace dioclust {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

class DioidMatrix {
 public:
  DioidMatrix() = default;

  /// n x n matrix with every entry set to `fill`.
  explicit DioidMatrix(std::size_t n, double fill = kInfinity);

  /// Row-major entries; size must be n*n, every entry >= 0 (inf allowed).
  DioidMatrix(std::size_t n, std::vector<double> entries);

  DioidMatrix(std::initializer_list<std::initializer_list<double>> rows);

  /// Zeros on the diagonal, +inf elsewhere.
  static DioidMatrix identity(std::size_t n);

  std::size_t size() const noexcept { return n_; }

  double operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * n_ + j]; }

  /// Bounds- and sign-checked write.
  void set(std::size_t i, std::size_t j, double value);

  std::span<const double> row(std::size_t i) const noexcept {
    return {entries_.data() + i * n_, n_};
  }
  std::span<const double> entries() const noexcept { return entries_; }

  bool has_zero_diagonal() const noexcept;
  bool is_symmetric() const noexcept;
  DioidMatrix transposed() const;

  friend bool operator==(const DioidMatrix&, const DioidMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> entries_;
};

/// [A (x) B]_ij = min_k max(A_ik, B_kj).
DioidMatrix dioid_product(const DioidMatrix& a, const DioidMatrix& b);

/// k-th dioid power, k >= 1, by repeated squaring.
///
/// When `a` has a zero diagonal the powers are entrywise nonincreasing and
/// reach a fixpoint by k = n-1; the exponent is clamped there and squaring
/// stops as soon as A^{2m} == A^m.
DioidMatrix dioid_power(const DioidMatrix& a, std::size_t k);

/// A^{n-1}, the matrix of directed minimax chain costs. Requires a zero
/// diagonal. Throws ConsistencyError if A^{n-1} != A^n.
DioidMatrix quasi_inverse(const DioidMatrix& a);

/// max(A, A^T) entrywise.
DioidMatrix symmetrize_max(const DioidMatrix& a);

DioidMatrix elementwise_max(const DioidMatrix& a, const DioidMatrix& b);

/// a(i,j) <= b(i,j) + tolerance for every entry.
bool entrywise_leq(const DioidMatrix& a, const DioidMatrix& b, double tolerance = 0.0);

}  // namespace dioclust
