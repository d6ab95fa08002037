#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lossrisk/measures.hpp"
#include "lossrisk/quantile.hpp"
#include "lossrisk/roblab.hpp"

namespace lossrisk::io {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;
inline constexpr int kSignificantDigits = 10;

// One finite decimal per line; lines starting with '#' and blank lines are
// skipped. Errors name the source and line number.
std::vector<double> parse_pnl(std::istream& in, const std::string& source);
std::vector<double> read_pnl_file(const std::string& path);

Json read_json_file(const std::string& path);

struct CatalogEntry {
  std::string name;
  RiskMeasureSpec spec;
};

// Throws InvalidInput naming the offending field and its location.
RiskMeasureSpec spec_from_json(const Json& j, const std::string& where = "spec");
Json spec_to_json(const RiskMeasureSpec& spec);

// A JSON array of specs, or an object with a "measures" array. Names default
// to the variant tag; repeats get "#2", "#3", ... suffixes.
std::vector<CatalogEntry> catalog_from_json(const Json& j);

// {"segments": [[lo, hi, w], ...], "atoms": [[x, w], ...]} or {"pool": [x, ...]}.
QuantileFn base_from_json(const Json& j, const std::string& where = "base");

struct ConsistencyRequest {
  std::vector<std::size_t> n_list;
  std::size_t replications;
};

struct RoblabConfig {
  ExperimentConfig experiment;
  std::optional<ConsistencyRequest> consistency;
  Json echo;  // the parsed config, with any seed override applied
};

RoblabConfig roblab_config_from_json(const Json& j, std::optional<std::uint64_t> seed_override);

// x rounded to ten significant digits; non-finite values become null.
Json number(double x);
double round_significant(double x, int digits = kSignificantDigits);
std::string format_number(double x);

// Keys sorted lexicographically, two-space indent, trailing newline.
std::string dump(const Json& j);

}  // namespace lossrisk::io
