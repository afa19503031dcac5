#include "dioclust/network.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "dioclust/errors.hpp"
#include "dioclust/text.hpp"

namespace dioclust {

Network::Network(std::vector<std::string> labels, DioidMatrix dissimilarities)
    : labels_(std::move(labels)), dissim_(std::move(dissimilarities)) {
  if (labels_.size() != dissim_.size()) {
    throw ArgumentError("network: " + std::to_string(labels_.size()) + " labels for a " +
                        std::to_string(dissim_.size()) + "x" + std::to_string(dissim_.size()) +
                        " matrix");
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& l : labels_) {
    if (l.empty()) throw ArgumentError("network: empty node label");
    if (!seen.insert(l).second) throw ArgumentError("network: duplicate node label '" + l + "'");
  }
}

std::optional<std::size_t> Network::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

namespace {

struct DenseTable {
  std::vector<std::string> labels;
  std::vector<std::string> cells;  // row-major, trimmed raw text
  std::vector<std::size_t> lines;  // source line of each row
};

std::vector<std::pair<std::size_t, std::string>> read_lines(std::istream& in) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    lines.emplace_back(number, std::move(line));
  }
  return lines;
}

DenseTable read_dense_table(std::istream& in) {
  const auto lines = read_lines(in);
  if (lines.empty()) throw ParseError("dense CSV: input is empty");

  DenseTable table;
  const auto header = split(lines[0].second, ',');
  for (std::size_t c = 1; c < header.size(); ++c) {
    const auto label = trim(header[c]);
    if (label.empty()) {
      throw ParseError("dense CSV line " + std::to_string(lines[0].first) + ": empty label in column " +
                       std::to_string(c + 1));
    }
    if (label.find('"') != std::string_view::npos) {
      throw ParseError("dense CSV: quoted fields are not supported (label " + std::string(label) + ")");
    }
    table.labels.emplace_back(label);
  }
  const std::size_t n = table.labels.size();
  if (n == 0) throw ParseError("dense CSV: header row has no node labels");
  std::unordered_set<std::string_view> seen;
  for (const auto& l : table.labels)
    if (!seen.insert(l).second) throw ParseError("dense CSV: duplicate label '" + l + "'");

  if (lines.size() - 1 != n) {
    throw ParseError("dense CSV: header names " + std::to_string(n) + " nodes but found " +
                     std::to_string(lines.size() - 1) + " data rows");
  }
  table.cells.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto& [number, text] = lines[r + 1];
    const auto fields = split(text, ',');
    if (fields.size() != n + 1) {
      throw ParseError("dense CSV line " + std::to_string(number) + ": expected " +
                       std::to_string(n + 1) + " fields, found " + std::to_string(fields.size()));
    }
    if (trim(fields[0]) != table.labels[r]) {
      throw ParseError("dense CSV line " + std::to_string(number) + ": row label '" +
                       std::string(trim(fields[0])) + "' does not match column label '" +
                       table.labels[r] + "'");
    }
    for (std::size_t c = 1; c <= n; ++c) table.cells.emplace_back(trim(fields[c]));
    table.lines.push_back(number);
  }
  return table;
}

std::string cell_name(const DenseTable& t, std::size_t r, std::size_t c) {
  return "cell (row '" + t.labels[r] + "', column '" + t.labels[c] + "') on line " +
         std::to_string(t.lines[r]);
}

Network load_dense(std::istream& in) {
  const DenseTable t = read_dense_table(in);
  const std::size_t n = t.labels.size();
  std::vector<double> values(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const std::string& raw = t.cells[r * n + c];
      double v = 0.0;
      if (raw.empty()) {
        v = r == c ? 0.0 : kInfinity;
      } else {
        const auto parsed = parse_number(raw);
        if (!parsed) throw ParseError(cell_name(t, r, c) + ": cannot parse '" + raw + "'");
        v = *parsed;
      }
      if (v < 0.0) throw ParseError(cell_name(t, r, c) + ": negative entry " + raw);
      if (r == c && v != 0.0) throw ParseError(cell_name(t, r, c) + ": nonzero diagonal entry " + raw);
      values[r * n + c] = v;
    }
  }
  return Network(t.labels, DioidMatrix(n, std::move(values)));
}

Network load_edge_list(std::istream& in) {
  std::vector<std::string> labels;
  std::map<std::string, std::size_t, std::less<>> index;
  struct Edge {
    std::size_t src, dst;
    double weight;
  };
  std::vector<Edge> edges;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> seen_at;

  auto node = [&](std::string_view name) {
    auto it = index.find(name);
    if (it != index.end()) return it->second;
    labels.emplace_back(name);
    index.emplace(std::string(name), labels.size() - 1);
    return labels.size() - 1;
  };

  for (const auto& [number, text] : read_lines(in)) {
    if (trim(text).front() == '#') continue;
    const std::string where = "edge list line " + std::to_string(number);
    const auto fields = split(text, '\t');
    if (fields.size() == 1) {
      node(trim(fields[0]));
      continue;
    }
    if (fields.size() != 3) {
      throw ParseError(where + ": expected 'src<TAB>dst<TAB>weight', found " +
                       std::to_string(fields.size()) + " fields");
    }
    const auto src_name = trim(fields[0]);
    const auto dst_name = trim(fields[1]);
    if (src_name.empty() || dst_name.empty()) throw ParseError(where + ": empty node label");
    const auto weight = parse_number(fields[2]);
    if (!weight) throw ParseError(where + ": cannot parse weight '" + std::string(trim(fields[2])) + "'");
    const std::string edge_name =
        "edge " + std::string(src_name) + " -> " + std::string(dst_name) + " (" + where + ")";
    if (*weight < 0.0) throw ParseError(edge_name + ": negative weight");
    const std::size_t s = node(src_name);
    const std::size_t d = node(dst_name);
    if (s == d && *weight != 0.0) throw ParseError(edge_name + ": nonzero self-dissimilarity");
    if (auto [it, inserted] = seen_at.emplace(std::pair{s, d}, number); !inserted) {
      throw ParseError(edge_name + ": duplicate of line " + std::to_string(it->second));
    }
    edges.push_back({s, d, *weight});
  }
  if (labels.empty()) throw ParseError("edge list: no nodes");

  DioidMatrix m = DioidMatrix::identity(labels.size());
  for (const auto& e : edges) m.set(e.src, e.dst, e.weight);
  return Network(std::move(labels), std::move(m));
}

void check_csv_label(const std::string& label) {
  if (label.find_first_of(",\"\r\n") != std::string::npos || trim(label) != label) {
    throw ArgumentError("label '" + label + "' cannot be written to CSV");
  }
}

}  // namespace

Network load_network(std::istream& in, NetworkFormat format) {
  switch (format) {
    case NetworkFormat::dense_csv:
      return load_dense(in);
    case NetworkFormat::edge_list:
      return load_edge_list(in);
  }
  throw ArgumentError("load_network: unknown format");
}

Network load_network_file(const std::filesystem::path& path, NetworkFormat format) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return load_network(in, format);
}

void save_network(std::ostream& out, const Network& net) {
  for (const auto& l : net.labels()) {
    check_csv_label(l);
    out << ',' << l;
  }
  out << '\n';
  for (std::size_t i = 0; i < net.size(); ++i) {
    out << net.label(i);
    for (std::size_t j = 0; j < net.size(); ++j) out << ',' << format_number(net(i, j));
    out << '\n';
  }
}

UsesTable load_uses_table(std::istream& in) {
  const DenseTable t = read_dense_table(in);
  const std::size_t n = t.labels.size();
  UsesTable table{t.labels, std::vector<double>(n * n, 0.0)};
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const std::string& raw = t.cells[r * n + c];
      if (raw.empty()) continue;
      const auto v = parse_number(raw);
      if (!v) throw ParseError(cell_name(t, r, c) + ": cannot parse '" + raw + "'");
      if (!std::isfinite(*v)) throw ParseError(cell_name(t, r, c) + ": flows must be finite");
      if (*v < 0.0) throw ParseError(cell_name(t, r, c) + ": negative flow " + raw);
      table.flow[r * n + c] = *v;
    }
  }
  return table;
}

Network from_uses_table(const UsesTable& table, UsesOptions options) {
  const std::size_t n = table.size();
  if (table.flow.size() != n * n) throw ArgumentError("uses table: flow matrix is not square");
  for (double v : table.flow) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ArgumentError("uses table: flows must be finite and >= 0");
  }
  std::vector<double> a(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (options.exclude_diagonal && k == j) continue;
      total += table(k, j);
    }
    if (!(total > 0.0)) {
      throw ValidationError("uses table: sector '" + table.labels[j] +
                            "' has zero total input; dissimilarities into it are undefined");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == j) continue;
      a[i * n + j] = std::max(0.0, 1.0 - table(i, j) / total);
    }
  }
  return Network(table.labels, DioidMatrix(n, std::move(a)));
}

namespace {

// Nodes reachable from `start` over finite edges (forward or reversed).
std::vector<bool> reachable(const DioidMatrix& a, std::size_t start, bool reversed) {
  const std::size_t n = a.size();
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t v = 0; v < n; ++v) {
      const double w = reversed ? a(v, u) : a(u, v);
      if (!seen[v] && w != kInfinity) {
        seen[v] = true;
        stack.push_back(v);
      }
    }
  }
  return seen;
}

}  // namespace

NetworkReport validate_network(const Network& net) {
  NetworkReport report;
  const auto& a = net.dissimilarities();
  const std::size_t n = net.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = a(i, j);
      auto where = [&] { return "A(" + net.label(i) + ", " + net.label(j) + ")"; };
      if (v < 0.0) {
        report.violations.push_back(where() + " = " + format_number(v) + " is negative");
      } else if (i == j && v != 0.0) {
        report.violations.push_back(where() + " = " + format_number(v) + ": diagonal must be 0");
      } else if (i != j && v == 0.0) {
        report.violations.push_back(where() + " = 0: distinct nodes need a positive dissimilarity");
      }
    }
  }
  if (n > 1) {
    const auto fwd = reachable(a, 0, false);
    const auto bwd = reachable(a, 0, true);
    for (std::size_t i = 0; i < n; ++i)
      if (!fwd[i] || !bwd[i]) report.minimax_connected = false;
  }
  return report;
}

std::string NetworkReport::to_string() const {
  std::ostringstream out;
  if (violations.empty()) {
    out << "network: valid\n";
  } else {
    out << "network: " << violations.size() << " violation(s)\n";
    for (const auto& v : violations) out << "  " << v << '\n';
  }
  out << "minimax connectivity: "
      << (minimax_connected ? "all directed minimax costs finite\n"
                            : "not minimax-connected; dendrograms will be forests\n");
  return out.str();
}

void require_valid(const Network& net) {
  const auto report = validate_network(net);
  if (!report.valid()) {
    std::string msg = "invalid network:";
    for (const auto& v : report.violations) msg += "\n  " + v;
    throw ValidationError(msg);
  }
}

}  // namespace dioclust
