#include "dioclust/ultrametric.hpp"

#include <cmath>
#include <sstream>

#include "dioclust/errors.hpp"
#include "dioclust/text.hpp"
#include "ordering.hpp"

namespace dioclust {

UltrametricReport validate_ultrametric(const DioidMatrix& m, double tolerance) {
  if (!(tolerance >= 0.0)) throw ArgumentError("validate_ultrametric: tolerance must be >= 0");
  UltrametricReport report;
  report.tolerance = tolerance;
  const std::size_t n = m.size();

  for (std::size_t i = 0; i < n; ++i) {
    if (!(std::abs(m(i, i)) <= tolerance)) report.nonzero_diagonal.push_back(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double a = m(i, j);
      const double b = m(j, i);
      if (a != b && !(std::abs(a - b) <= tolerance)) report.asymmetric_pairs.emplace_back(i, j);
      if (!(a > 0.0) || !(b > 0.0)) report.nonpositive_pairs.emplace_back(i, j);
    }
  }

  // Strong triangle inequality, one triple at a time.
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      const double direct = m(x, y);
      for (std::size_t via = 0; via < n; ++via) {
        if (via == x || via == y) continue;
        const double bound = std::max(m(x, via), m(via, y));
        if (direct > bound + tolerance) {
          if (report.triples.size() < UltrametricReport::kMaxReported) report.triples.push_back({x, via, y});
          ++report.triple_count;
        }
      }
    }
  }

  // Idempotency m (x) m == m, checked on its own.
  const DioidMatrix squared = dioid_product(m, m);
  for (std::size_t i = 0; i < n && report.idempotent; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double a = squared(i, j);
      const double b = m(i, j);
      if (a != b && !(std::abs(a - b) <= tolerance)) {
        report.idempotent = false;
        break;
      }
    }
  }
  return report;
}

std::string UltrametricReport::to_string(const std::vector<std::string>& labels,
                                         const DioidMatrix& m) const {
  auto name = [&](std::size_t i) { return i < labels.size() ? labels[i] : std::to_string(i); };
  auto entry = [&](std::size_t i, std::size_t j) {
    return "u(" + name(i) + "," + name(j) + ")=" + format_number(m(i, j));
  };
  std::ostringstream out;
  out << "ultrametric check (tolerance " << format_number(tolerance) << "): "
      << (valid() ? "valid" : "INVALID") << '\n';
  out << "  symmetry: ";
  if (asymmetric_pairs.empty()) {
    out << "ok\n";
  } else {
    const auto [i, j] = asymmetric_pairs.front();
    out << asymmetric_pairs.size() << " asymmetric pair(s), first " << entry(i, j) << " vs "
        << entry(j, i) << '\n';
  }
  out << "  identity: ";
  if (nonzero_diagonal.empty() && nonpositive_pairs.empty()) {
    out << "ok\n";
  } else {
    if (!nonzero_diagonal.empty()) {
      out << nonzero_diagonal.size() << " nonzero diagonal entr" << (nonzero_diagonal.size() == 1 ? "y" : "ies")
          << ", first " << entry(nonzero_diagonal.front(), nonzero_diagonal.front()) << "; ";
    }
    if (!nonpositive_pairs.empty()) {
      const auto [i, j] = nonpositive_pairs.front();
      out << nonpositive_pairs.size() << " distinct pair(s) at zero, first " << entry(i, j);
    }
    out << '\n';
  }
  out << "  strong triangle inequality: ";
  if (triple_count == 0) {
    out << "ok\n";
  } else {
    out << triple_count << " violated triple(s)";
    if (triple_count > triples.size()) out << ", first " << triples.size() << " shown";
    out << '\n';
    for (const auto& t : triples) {
      out << "    (" << name(t.x) << "," << name(t.via) << "," << name(t.y) << "): " << entry(t.x, t.y)
          << " > max(" << entry(t.x, t.via) << ", " << entry(t.via, t.y) << ")\n";
    }
  }
  out << "  idempotency (u*u == u): " << (idempotent ? "ok" : "violated") << '\n';
  return out.str();
}

Partition cut_at_resolution(const Ultrametric& u, double delta) {
  if (!(delta >= 0.0)) throw ArgumentError("cut_at_resolution: resolution must be >= 0");
  const std::size_t n = u.size();
  detail::DisjointSets sets(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (u(i, j) <= delta) sets.unite(i, j);
  Partition p{delta, sets.groups()};
  detail::sort_groups(p.blocks, u.labels);
  return p;
}

}  // namespace dioclust
