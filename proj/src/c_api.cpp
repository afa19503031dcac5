#include "dioclust/dioclust.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "dioclust/dendrogram.hpp"
#include "dioclust/errors.hpp"
#include "dioclust/method_spec.hpp"
#include "dioclust/methods.hpp"
#include "dioclust/network.hpp"
#include "dioclust/oracle.hpp"

using namespace dioclust;

struct dc_network {
  std::shared_ptr<const Network> net;
};

struct dc_result {
  std::shared_ptr<const Network> net;
  Ultrametric output;
  UltrametricReport report;
  std::optional<Dendrogram> dendrogram;  // built lazily, valid outputs only
};

namespace {

thread_local std::string last_error;

dc_status fail(dc_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <typename F>
dc_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const ParseError& e) {
    return fail(DC_ERR_USAGE, e.what());
  } catch (const ArgumentError& e) {
    return fail(DC_ERR_USAGE, e.what());
  } catch (const ValidationError& e) {
    return fail(DC_ERR_VALIDATION, e.what());
  } catch (const IoError& e) {
    return fail(DC_ERR_IO, e.what());
  } catch (const ConsistencyError& e) {
    return fail(DC_ERR_INTERNAL, std::string("internal consistency failure: ") + e.what());
  } catch (const std::bad_alloc&) {
    return fail(DC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(DC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(DC_ERR_INTERNAL, "unknown error");
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put(char** out, const std::string& s) {
  if (out) *out = copy_string(s);
}

Network load(std::istream& in, dc_input_format format, int exclude_diagonal) {
  switch (format) {
    case DC_FORMAT_DENSE_CSV: return load_network(in, NetworkFormat::dense_csv);
    case DC_FORMAT_EDGE_LIST: return load_network(in, NetworkFormat::edge_list);
    case DC_FORMAT_USES:
      return from_uses_table(load_uses_table(in), UsesOptions{exclude_diagonal != 0});
  }
  throw ArgumentError("unknown input format");
}

dc_status make_result(const dc_network* net, Ultrametric u, UltrametricReport report, dc_result** out) {
  *out = new dc_result{net->net, std::move(u), std::move(report), std::nullopt};
  return DC_OK;
}

const Dendrogram& dendrogram_of(const dc_result* r) {
  auto* mut = const_cast<dc_result*>(r);
  if (!mut->dendrogram) mut->dendrogram = to_dendrogram(r->output, r->report.tolerance);
  return *mut->dendrogram;
}

#define DC_REQUIRE(cond, what) \
  if (!(cond)) return fail(DC_ERR_USAGE, what)

}  // namespace

extern "C" {

const char* dc_version(void) { return "1.0.0"; }

const char* dc_last_error(void) { return last_error.c_str(); }

void dc_string_free(char* s) { std::free(s); }

const char* dc_method_grammar(void) {
  static const std::string grammar(kMethodGrammar);
  return grammar.c_str();
}

dc_status dc_method_check(const char* spec, char** canonical) {
  DC_REQUIRE(spec, "method spec is null");
  return guarded([&] {
    put(canonical, parse_method_spec(spec).to_string());
    return DC_OK;
  });
}

dc_status dc_network_load_file(const char* path, dc_input_format format, int uses_exclude_diagonal,
                               dc_network** out) {
  DC_REQUIRE(path && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(std::string("cannot open '") + path + "'");
    auto net = std::make_shared<const Network>(load(in, format, uses_exclude_diagonal));
    *out = new dc_network{std::move(net)};
    return DC_OK;
  });
}

dc_status dc_network_load_buffer(const char* data, size_t size, dc_input_format format,
                                 int uses_exclude_diagonal, dc_network** out) {
  DC_REQUIRE((data || size == 0) && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    std::istringstream in(std::string(data ? data : "", size));
    auto net = std::make_shared<const Network>(load(in, format, uses_exclude_diagonal));
    *out = new dc_network{std::move(net)};
    return DC_OK;
  });
}

void dc_network_free(dc_network* net) { delete net; }

size_t dc_network_size(const dc_network* net) { return net ? net->net->size() : 0; }

const char* dc_network_label(const dc_network* net, size_t i) {
  if (!net || i >= net->net->size()) return nullptr;
  return net->net->labels()[i].c_str();
}

double dc_network_dissimilarity(const dc_network* net, size_t i, size_t j) {
  if (!net || i >= net->net->size() || j >= net->net->size()) return std::numeric_limits<double>::quiet_NaN();
  return (*net->net)(i, j);
}

dc_status dc_network_validate(const dc_network* net, int* valid, int* minimax_connected, char** report) {
  DC_REQUIRE(net, "null network");
  return guarded([&] {
    const auto r = validate_network(*net->net);
    if (valid) *valid = r.valid() ? 1 : 0;
    if (minimax_connected) *minimax_connected = r.minimax_connected ? 1 : 0;
    put(report, r.to_string());
    return DC_OK;
  });
}

dc_status dc_network_export_csv(const dc_network* net, char** out) {
  DC_REQUIRE(net && out, "null argument");
  return guarded([&] {
    std::ostringstream s;
    save_network(s, *net->net);
    put(out, s.str());
    return DC_OK;
  });
}

dc_status dc_cluster(const dc_network* net, const char* spec, dc_result** out) {
  DC_REQUIRE(net && spec && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    const MethodSpec parsed = parse_method_spec(spec);
    MethodResult r = run_method(*net->net, parsed);
    return make_result(net, std::move(r.output), std::move(r.report), out);
  });
}

dc_status dc_oracle(const dc_network* net, const char* spec, dc_result** out) {
  DC_REQUIRE(net && spec && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    const MethodSpec parsed = parse_method_spec(spec);
    require_valid(*net->net);
    Ultrametric u = [&] {
      switch (parsed.kind) {
        case MethodKind::reciprocal: return oracle::brute_reciprocal(*net->net);
        case MethodKind::nonreciprocal: return oracle::brute_nonreciprocal(*net->net);
        case MethodKind::semi_reciprocal: return oracle::brute_semi_reciprocal(*net->net, parsed.t);
        case MethodKind::single_linkage: return oracle::brute_single_linkage(*net->net);
        default:
          throw ArgumentError("no brute-force reference for '" + parsed.to_string() +
                              "'; use reciprocal, nonreciprocal, single-linkage or semi-reciprocal:<t>");
      }
    }();
    auto report = validate_ultrametric(u.dist, 0.0);
    return make_result(net, std::move(u), std::move(report), out);
  });
}

dc_status dc_result_from_network(const dc_network* net, dc_result** out) {
  DC_REQUIRE(net && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    Ultrametric u{net->net->labels(), net->net->dissimilarities(), Provenance{"input", "input", net->net->size()}};
    auto report = validate_ultrametric(u.dist, 0.0);
    return make_result(net, std::move(u), std::move(report), out);
  });
}

void dc_result_free(dc_result* result) { delete result; }

size_t dc_result_size(const dc_result* result) { return result ? result->output.size() : 0; }

const char* dc_result_label(const dc_result* result, size_t i) {
  if (!result || i >= result->output.size()) return nullptr;
  return result->output.labels[i].c_str();
}

double dc_result_value(const dc_result* result, size_t i, size_t j) {
  if (!result || i >= result->output.size() || j >= result->output.size())
    return std::numeric_limits<double>::quiet_NaN();
  return result->output(i, j);
}

const char* dc_result_method(const dc_result* result) {
  return result ? result->output.provenance.spec.c_str() : nullptr;
}

double dc_result_tolerance(const dc_result* result) {
  return result ? result->report.tolerance : std::numeric_limits<double>::quiet_NaN();
}

dc_status dc_result_set_tolerance(dc_result* result, double tolerance) {
  DC_REQUIRE(result, "null result");
  DC_REQUIRE(tolerance >= 0.0 && std::isfinite(tolerance), "tolerance must be a finite value >= 0");
  return guarded([&] {
    result->report = validate_ultrametric(result->output.dist, tolerance);
    result->dendrogram.reset();
    return DC_OK;
  });
}

int dc_result_is_ultrametric(const dc_result* result) { return result && result->report.valid() ? 1 : 0; }

int dc_result_is_forest(const dc_result* result) {
  if (!result) return 0;
  for (double v : result->output.dist.entries())
    if (v == std::numeric_limits<double>::infinity()) return 1;
  return 0;
}

dc_status dc_result_report(const dc_result* result, char** out) {
  DC_REQUIRE(result && out, "null argument");
  return guarded([&] {
    put(out, result->report.to_string(result->output.labels, result->output.dist));
    return DC_OK;
  });
}

dc_status dc_result_summary(const dc_result* result, char** out) {
  DC_REQUIRE(result && out, "null argument");
  return guarded([&] {
    put(out, merge_summary(dendrogram_of(result)));
    return DC_OK;
  });
}

dc_status dc_result_export(const dc_result* result, dc_emit_format format, double delta, char** out) {
  DC_REQUIRE(result && out, "null argument");
  return guarded([&] {
    switch (format) {
      case DC_EMIT_CSV:
        put(out, to_csv(result->output.labels, result->output.dist));
        return DC_OK;
      case DC_EMIT_JSON:
        put(out, to_json(dendrogram_of(result), result->output));
        return DC_OK;
      case DC_EMIT_NEWICK:
        put(out, to_newick(dendrogram_of(result)));
        return DC_OK;
      case DC_EMIT_DOT:
        if (!(delta >= 0.0)) throw ArgumentError("DOT export needs a resolution delta >= 0");
        dendrogram_of(result);  // refuses non-ultrametrics
        put(out, to_dot(*result->net, result->output, delta));
        return DC_OK;
    }
    throw ArgumentError("unknown emit format");
  });
}

dc_status dc_result_cut(const dc_result* result, double delta, int as_json, char** out) {
  DC_REQUIRE(result && out, "null argument");
  return guarded([&] {
    dendrogram_of(result);  // refuses non-ultrametrics
    const Partition p = cut_at_resolution(result->output, delta);
    put(out, as_json ? partition_to_json(p, result->output.labels)
                     : partition_to_text(p, result->output.labels));
    return DC_OK;
  });
}

}  // extern "C"
