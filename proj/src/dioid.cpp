#include "dioclust/dioid.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "dioclust/errors.hpp"

namespace dioclust {

namespace {

void check_entry(double v) {
  if (std::isnan(v) || v < 0.0) {
    throw ArgumentError("dioid matrix entries must be >= 0, got " + std::to_string(v));
  }
}

void check_same_size(const DioidMatrix& a, const DioidMatrix& b, const char* op) {
  if (a.size() != b.size()) {
    throw ArgumentError(std::string(op) + ": dimension mismatch (" + std::to_string(a.size()) +
                        " vs " + std::to_string(b.size()) + ")");
  }
}

}  // namespace

DioidMatrix::DioidMatrix(std::size_t n, double fill) : n_(n), entries_(n * n, fill) {
  check_entry(fill);
}

DioidMatrix::DioidMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), entries_(std::move(entries)) {
  if (entries_.size() != n * n) {
    throw ArgumentError("dioid matrix: expected " + std::to_string(n * n) + " entries, got " +
                        std::to_string(entries_.size()));
  }
  for (double v : entries_) check_entry(v);
}

DioidMatrix::DioidMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : n_(rows.size()) {
  entries_.reserve(n_ * n_);
  for (const auto& r : rows) {
    if (r.size() != n_) throw ArgumentError("dioid matrix: rows must form a square");
    for (double v : r) {
      check_entry(v);
      entries_.push_back(v);
    }
  }
}

DioidMatrix DioidMatrix::identity(std::size_t n) {
  DioidMatrix m(n, kInfinity);
  for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = 0.0;
  return m;
}

void DioidMatrix::set(std::size_t i, std::size_t j, double value) {
  if (i >= n_ || j >= n_) throw ArgumentError("dioid matrix: index out of range");
  check_entry(value);
  entries_[i * n_ + j] = value;
}

bool DioidMatrix::has_zero_diagonal() const noexcept {
  for (std::size_t i = 0; i < n_; ++i)
    if (entries_[i * n_ + i] != 0.0) return false;
  return true;
}

bool DioidMatrix::is_symmetric() const noexcept {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (entries_[i * n_ + j] != entries_[j * n_ + i]) return false;
  return true;
}

DioidMatrix DioidMatrix::transposed() const {
  DioidMatrix t(n_, kInfinity);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t.entries_[j * n_ + i] = entries_[i * n_ + j];
  return t;
}

DioidMatrix dioid_product(const DioidMatrix& a, const DioidMatrix& b) {
  check_same_size(a, b, "dioid_product");
  const std::size_t n = a.size();
  std::vector<double> out(n * n, kInfinity);
  const auto bd = b.entries();
  for (std::size_t i = 0; i < n; ++i) {
    double* out_row = out.data() + i * n;
    const auto a_row = a.row(i);
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a_row[k];
      if (aik == kInfinity) continue;
      const double* b_row = bd.data() + k * n;
      for (std::size_t j = 0; j < n; ++j) {
        const double v = aik > b_row[j] ? aik : b_row[j];
        if (v < out_row[j]) out_row[j] = v;
      }
    }
  }
  return DioidMatrix(n, std::move(out));
}

DioidMatrix dioid_power(const DioidMatrix& a, std::size_t k) {
  if (k == 0) throw ArgumentError("dioid_power: exponent must be at least 1");
  const bool monotone = a.has_zero_diagonal();
  if (monotone) k = std::min<std::size_t>(k, std::max<std::size_t>(a.size(), 2) - 1);

  std::optional<DioidMatrix> result;
  DioidMatrix base = a;
  for (;;) {
    if (k & 1U) result = result ? dioid_product(*result, base) : base;
    k >>= 1U;
    if (k == 0) break;
    DioidMatrix squared = dioid_product(base, base);
    // Zero diagonal: base = A^m with A^{2m} == A^m is the fixpoint of every
    // higher power, and at least one more factor of base remains.
    if (monotone && squared == base) return base;
    base = std::move(squared);
  }
  return *std::move(result);
}

DioidMatrix quasi_inverse(const DioidMatrix& a) {
  if (!a.has_zero_diagonal()) throw ArgumentError("quasi_inverse: matrix diagonal must be zero");
  if (a.size() <= 1) return a;
  DioidMatrix closure = dioid_power(a, a.size() - 1);
  if (dioid_product(closure, a) != closure) {
    throw ConsistencyError("quasi_inverse: A^(n-1) != A^n; dioid powers failed to stabilize");
  }
  return closure;
}

DioidMatrix symmetrize_max(const DioidMatrix& a) {
  const std::size_t n = a.size();
  std::vector<double> out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = std::max(a(i, j), a(j, i));
  return DioidMatrix(n, std::move(out));
}

DioidMatrix elementwise_max(const DioidMatrix& a, const DioidMatrix& b) {
  check_same_size(a, b, "elementwise_max");
  const auto ad = a.entries();
  const auto bd = b.entries();
  std::vector<double> out(ad.size());
  std::transform(ad.begin(), ad.end(), bd.begin(), out.begin(),
                 [](double x, double y) { return std::max(x, y); });
  return DioidMatrix(a.size(), std::move(out));
}

bool entrywise_leq(const DioidMatrix& a, const DioidMatrix& b, double tolerance) {
  check_same_size(a, b, "entrywise_leq");
  const auto ad = a.entries();
  const auto bd = b.entries();
  for (std::size_t i = 0; i < ad.size(); ++i)
    if (!(ad[i] <= bd[i] + tolerance)) return false;
  return true;
}

}  // namespace dioclust
