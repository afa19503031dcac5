// dioclust: hierarchical clustering of asymmetric networks from the command line.
// Talks to the library through the C interface only.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dioclust/dioclust.h"

namespace {

enum Exit { kOk = 0, kUsage = 1, kValidation = 2, kIo = 3 };

int exit_code(dc_status s) {
  switch (s) {
    case DC_OK: return kOk;
    case DC_ERR_USAGE: return kUsage;
    case DC_ERR_IO: return kIo;
    default: return kValidation;
  }
}

struct Failure {
  int code;
};

void check(dc_status s, const char* context) {
  if (s == DC_OK) return;
  std::cerr << "dioclust: " << context << ": " << dc_last_error() << '\n';
  throw Failure{exit_code(s)};
}

struct NetworkFree {
  void operator()(dc_network* n) const { dc_network_free(n); }
};
struct ResultFree {
  void operator()(dc_result* r) const { dc_result_free(r); }
};
using NetworkPtr = std::unique_ptr<dc_network, NetworkFree>;
using ResultPtr = std::unique_ptr<dc_result, ResultFree>;

std::string take(char* s) {
  std::string out = s ? s : "";
  dc_string_free(s);
  return out;
}

std::string number(double v) {
  if (std::isinf(v)) return "inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

struct Options {
  std::string input;
  std::string format = "dense-csv";
  std::vector<std::string> methods;
  std::string emit;
  std::string output;
  std::optional<double> delta;
  bool uses_exclude_diagonal = false;
  std::optional<double> tolerance;
};

NetworkPtr load(const Options& o) {
  static const std::map<std::string, dc_input_format> formats{
      {"dense-csv", DC_FORMAT_DENSE_CSV}, {"edge-list", DC_FORMAT_EDGE_LIST}, {"uses", DC_FORMAT_USES}};
  dc_network* raw = nullptr;
  check(dc_network_load_file(o.input.c_str(), formats.at(o.format), o.uses_exclude_diagonal ? 1 : 0, &raw),
        "loading network");
  return NetworkPtr(raw);
}

// Prints the network report to stderr and fails with exit 2 when invalid.
void require_valid_network(const dc_network* net) {
  int valid = 0, connected = 0;
  char* report = nullptr;
  check(dc_network_validate(net, &valid, &connected, &report), "validating network");
  const std::string text = take(report);
  if (!valid) {
    std::cerr << text;
    throw Failure{kValidation};
  }
  if (!connected) std::cerr << "warning: network is not strongly connected; outputs will be forests\n";
}

ResultPtr cluster(const dc_network* net, const std::string& spec, const Options& o) {
  dc_result* raw = nullptr;
  check(dc_cluster(net, spec.c_str(), &raw), ("running " + spec).c_str());
  ResultPtr r(raw);
  if (o.tolerance) check(dc_result_set_tolerance(r.get(), *o.tolerance), "setting tolerance");
  return r;
}

void write_artifact(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout << data;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << data;
  out.close();
  if (!out) {
    std::cerr << "dioclust: cannot write '" << path << "'\n";
    throw Failure{kIo};
  }
}

int cmd_cluster(const Options& o) {
  NetworkPtr net = load(o);
  require_valid_network(net.get());
  ResultPtr r = cluster(net.get(), o.methods.front(), o);
  const bool to_stdout = !o.emit.empty() && (o.output.empty() || o.output == "-");
  std::ostream& info = to_stdout ? std::cerr : std::cout;

  if (!dc_result_is_ultrametric(r.get())) {
    std::cerr << "dioclust: " << dc_result_method(r.get()) << " did not produce an ultrametric\n"
              << take([&] {
                   char* s = nullptr;
                   dc_result_report(r.get(), &s);
                   return s;
                 }());
    if (o.emit == "csv") {
      char* s = nullptr;
      check(dc_result_export(r.get(), DC_EMIT_CSV, NAN, &s), "exporting");
      write_artifact(o.output, take(s));
    } else if (!o.emit.empty()) {
      std::cerr << "dioclust: refusing to emit " << o.emit << " for a non-ultrametric\n";
    }
    return kValidation;
  }

  if (dc_result_is_forest(r.get())) {
    std::cerr << "warning: some nodes never merge; the dendrogram is a forest\n";
  }
  char* summary = nullptr;
  check(dc_result_summary(r.get(), &summary), "summarizing");
  info << "method: " << dc_result_method(r.get()) << '\n' << take(summary);

  if (!o.emit.empty()) {
    static const std::map<std::string, dc_emit_format> emits{
        {"csv", DC_EMIT_CSV}, {"json", DC_EMIT_JSON}, {"newick", DC_EMIT_NEWICK}, {"dot", DC_EMIT_DOT}};
    if (o.emit == "dot" && !o.delta) {
      std::cerr << "dioclust: --emit dot needs --delta\n";
      return kUsage;
    }
    char* s = nullptr;
    check(dc_result_export(r.get(), emits.at(o.emit), o.delta.value_or(NAN), &s), "exporting");
    write_artifact(o.output, take(s));
  }
  return kOk;
}

int cmd_validate(const Options& o) {
  NetworkPtr net = load(o);
  int valid = 0, connected = 0;
  char* report = nullptr;
  check(dc_network_validate(net.get(), &valid, &connected, &report), "validating network");
  std::cout << take(report);
  int code = valid ? kOk : kValidation;

  ResultPtr r;
  if (o.methods.empty()) {
    // The matrix itself is the candidate ultrametric.
    dc_result* raw = nullptr;
    check(dc_result_from_network(net.get(), &raw), "reading matrix");
    r.reset(raw);
    if (o.tolerance) check(dc_result_set_tolerance(r.get(), *o.tolerance), "setting tolerance");
    std::cout << "input matrix as ultrametric:\n";
  } else {
    if (!valid) return code;
    r = cluster(net.get(), o.methods.front(), o);
    std::cout << "output of " << dc_result_method(r.get()) << ":\n";
  }
  char* text = nullptr;
  check(dc_result_report(r.get(), &text), "reporting");
  std::cout << take(text);
  if (!dc_result_is_ultrametric(r.get())) code = kValidation;
  return code;
}

int cmd_cut(const Options& o) {
  NetworkPtr net = load(o);
  require_valid_network(net.get());
  ResultPtr r = cluster(net.get(), o.methods.front(), o);
  char* s = nullptr;
  check(dc_result_cut(r.get(), *o.delta, o.emit == "json" ? 1 : 0, &s), "cutting");
  write_artifact(o.output, take(s));
  return kOk;
}

int cmd_compare(const Options& o) {
  NetworkPtr net = load(o);
  require_valid_network(net.get());
  const std::size_t n = dc_network_size(net.get());

  std::vector<ResultPtr> results;
  for (const auto& spec : o.methods) results.push_back(cluster(net.get(), spec, o));
  ResultPtr upper = cluster(net.get(), "reciprocal", o);
  ResultPtr lower = cluster(net.get(), "nonreciprocal", o);

  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"pair"};
  for (const auto& r : results) header.push_back(dc_result_method(r.get()));
  rows.push_back(header);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      std::vector<std::string> row{std::string("(") + dc_network_label(net.get(), i) + "," +
                                   dc_network_label(net.get(), j) + ")"};
      for (const auto& r : results) row.push_back(number(dc_result_value(r.get(), i, j)));
      rows.push_back(std::move(row));
    }
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += row[c];
      if (c + 1 < row.size()) line += std::string(width[c] - row[c].size() + 2, ' ');
    }
    std::cout << line << '\n';
  }

  int code = kOk;
  for (const auto& r : results) {
    const std::string name = dc_result_method(r.get());
    if (!dc_result_is_ultrametric(r.get())) {
      std::cout << name << ": not an ultrametric\n";
      code = kValidation;
      continue;
    }
    const double tol = dc_result_tolerance(r.get());
    std::size_t violations = 0;
    std::string first;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double u = dc_result_value(r.get(), i, j);
        const double lo = dc_result_value(lower.get(), i, j);
        const double hi = dc_result_value(upper.get(), i, j);
        if (u < lo - tol || u > hi + tol) {
          if (violations++ == 0) {
            first = std::string(dc_network_label(net.get(), i)) + "," + dc_network_label(net.get(), j) + ": " +
                    number(lo) + " <= " + number(u) + " <= " + number(hi) + " fails";
          }
        }
      }
    }
    if (violations == 0) {
      std::cout << name << ": sandwich OK\n";
    } else {
      std::cout << name << ": sandwich VIOLATED at " << violations << " entries, first (" << first << ")\n";
      code = kValidation;
    }
  }
  return code;
}

int cmd_oracle(const Options& o) {
  NetworkPtr net = load(o);
  require_valid_network(net.get());
  dc_result* raw = nullptr;
  check(dc_oracle(net.get(), o.methods.front().c_str(), &raw), "running oracle");
  ResultPtr r(raw);
  char* s = nullptr;
  const bool json = o.emit == "json";
  check(dc_result_export(r.get(), json ? DC_EMIT_JSON : DC_EMIT_CSV, NAN, &s), "exporting");
  write_artifact(o.output, take(s));
  return kOk;
}

void add_input(CLI::App* app, Options& o) {
  app->add_option("-i,--input", o.input, "Network file")->required();
  app->add_option("-f,--format", o.format, "Input format")
      ->check(CLI::IsMember({"dense-csv", "edge-list", "uses"}))
      ->capture_default_str();
  app->add_flag("--uses-exclude-diagonal", o.uses_exclude_diagonal,
                "With --format uses: leave a sector's own use out of its column total");
  app->add_option("--tolerance", o.tolerance, "Override the ultrametric validation tolerance")
      ->check(CLI::NonNegativeNumber);
}

std::string method_help() { return std::string("Method spec: ") + dc_method_grammar(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dioclust: hierarchical clustering of asymmetric networks"};
  app.footer(std::string("\nMethod specs:\n  ") + dc_method_grammar() +
             "\n\nExit codes: 0 success, 1 usage/parse error, 2 validation failure, 3 I/O error.");
  app.set_version_flag("--version", dc_version());
  app.require_subcommand(1);

  Options o;

  auto* cluster_cmd = app.add_subcommand("cluster", "Run a method and print or write its dendrogram");
  add_input(cluster_cmd, o);
  cluster_cmd->add_option("-m,--method", o.methods, method_help())->required()->expected(1);
  cluster_cmd->add_option("-e,--emit", o.emit, "Artifact format")
      ->check(CLI::IsMember({"csv", "json", "newick", "dot"}));
  cluster_cmd->add_option("-o,--output", o.output, "Artifact path (default: standard output)");
  cluster_cmd->add_option("-d,--delta", o.delta, "Resolution for --emit dot")->check(CLI::NonNegativeNumber);

  auto* validate_cmd = app.add_subcommand(
      "validate", "Check a network; with --method also check the method output, without it check the matrix "
                  "itself as an ultrametric");
  add_input(validate_cmd, o);
  validate_cmd->add_option("-m,--method", o.methods, method_help())->expected(1);

  auto* cut_cmd = app.add_subcommand("cut", "Partition at resolution --delta");
  add_input(cut_cmd, o);
  cut_cmd->add_option("-m,--method", o.methods, method_help())->required()->expected(1);
  cut_cmd->add_option("-d,--delta", o.delta, "Resolution")->required()->check(CLI::NonNegativeNumber);
  cut_cmd->add_option("-e,--emit", o.emit, "Partition format (default: one block per line)")
      ->check(CLI::IsMember({"text", "json"}));
  cut_cmd->add_option("-o,--output", o.output, "Output path (default: standard output)");

  auto* compare_cmd = app.add_subcommand(
      "compare", "Tabulate several methods and check nonreciprocal <= u <= reciprocal for each");
  add_input(compare_cmd, o);
  compare_cmd->add_option("-m,--method", o.methods, method_help() + " (repeatable)")->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force reference ultrametric (at most 8 nodes)");
  oracle_cmd->group("");
  add_input(oracle_cmd, o);
  oracle_cmd->add_option("-m,--method", o.methods, method_help())->required()->expected(1);
  oracle_cmd->add_option("-e,--emit", o.emit, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  oracle_cmd->add_option("-o,--output", o.output, "Output path (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    for (const auto& spec : o.methods) check(dc_method_check(spec.c_str(), nullptr), "method spec");
    if (cluster_cmd->parsed()) return cmd_cluster(o);
    if (validate_cmd->parsed()) return cmd_validate(o);
    if (cut_cmd->parsed()) return cmd_cut(o);
    if (compare_cmd->parsed()) return cmd_compare(o);
    if (oracle_cmd->parsed()) return cmd_oracle(o);
  } catch (const Failure& f) {
    return f.code;
  }
  return kUsage;
}
