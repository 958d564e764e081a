#ifndef RICHARDSON_IO_HPP
#define RICHARDSON_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "richardson/coupling.hpp"
#include "richardson/engine.hpp"
#include "richardson/experiments.hpp"

namespace richardson {

inline constexpr const char* kArtifactVersion = "1.0.0";

/// Parses "(0,0);(2,1)". An empty or blank string is the empty set.
/// Throws std::invalid_argument on malformed input, wrong dimension or duplicates.
SiteSet parse_site_set(const std::string& text, int dim);
std::string format_site_set(const SiteSet& set);

/// Comma-separated list of integers, e.g. "10,20,30".
std::vector<std::int64_t> parse_int_list(const std::string& text);

/// "lo:hi:step".
std::vector<double> parse_lambda_grid(const std::string& text);

/// Reads {"pairs": [{"name": ..., "init1": ..., "init2": ...}]}; init sets are
/// either strings in parse_site_set syntax or arrays of coordinate arrays.
std::vector<NamedPair> parse_pairs(const nlohmann::json& doc, int dim);

nlohmann::json site_to_json(const Site& x);
nlohmann::json time_to_json(Time t);  // number, or "never"

/// Inputs of a `simulate` invocation; they fully determine its output.
struct SimulateRequest {
  int dim = 2;
  double lambda1 = 1.0;
  double lambda2 = 1.0;
  SiteSet init1;
  SiteSet init2;
  std::optional<std::int64_t> radius;
  std::optional<std::uint64_t> max_events;
  std::uint64_t seed = 0;
};

struct SimulateResult {
  SimulateRequest request;
  RateReduction reduction;
  Trace trace;  // internal labels
};

SimulateResult run_simulate(const SimulateRequest& req);

/// Trace file document. Event types use the caller's labels.
nlohmann::json trace_document(const SimulateResult& result);

/// Rebuilds the request recorded in a trace document's header.
SimulateRequest request_from_header(const nlohmann::json& doc);

/// Text grid of the final state over its bounding window: '.', '1', '2'.
/// In d > 2 one grid per slice of the trailing coordinates, each preceded by
/// a "# x3=..." line.
std::string snapshot_text(const SimulateResult& result);

nlohmann::json inclusion_report_json(const InclusionReport& report);
nlohmann::json path_report_json(const PathTransferReport& report);

}  // namespace richardson

#endif  // RICHARDSON_IO_HPP
