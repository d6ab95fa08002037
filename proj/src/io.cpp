#include "lossrisk/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "lossrisk/error.hpp"

namespace lossrisk::io {
namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  fail(ErrorCode::InvalidInput, where + ": " + what);
}

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) schema_error(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(where, std::string("missing field '") + key + "'");
  return *it;
}

double as_double(const Json& j, const std::string& where) {
  if (!j.is_number()) schema_error(where, "expected a number");
  return j.get<double>();
}

double number_field(const Json& obj, const char* key, const std::string& where) {
  return as_double(field(obj, key, where), where + "." + key);
}

std::uint64_t as_u64(const Json& j, const std::string& where) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(j.get<std::int64_t>());
  }
  schema_error(where, "expected a nonnegative integer");
}

std::vector<double> number_array(const Json& j, const std::string& where) {
  if (!j.is_array()) schema_error(where, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(as_double(j[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<double> tuple(const Json& j, std::size_t arity, const std::string& where) {
  std::vector<double> v = number_array(j, where);
  if (v.size() != arity) {
    schema_error(where, "expected " + std::to_string(arity) + " numbers");
  }
  return v;
}

std::string string_field(const Json& obj, const char* key, const std::string& where) {
  const Json& v = field(obj, key, where);
  if (!v.is_string()) schema_error(where + "." + key, "expected a string");
  return v.get<std::string>();
}

template <class F>
auto located(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidInput &&
        std::string_view(e.what()).find(where) != std::string_view::npos) {
      throw;
    }
    throw Error(e.code(), where + ": " + e.what());
  }
}

MeasureOn01 measure_from_json(const Json& j, const std::string& where) {
  std::vector<Atom> atoms;
  std::vector<DensitySegment> segments;
  if (auto it = j.find("atoms"); it != j.end()) {
    if (!it->is_array()) schema_error(where + ".atoms", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      auto v = tuple((*it)[i], 2, where + ".atoms[" + std::to_string(i) + "]");
      atoms.push_back(Atom{v[0], v[1]});
    }
  }
  if (auto it = j.find("segments"); it != j.end()) {
    if (!it->is_array()) schema_error(where + ".segments", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      auto v = tuple((*it)[i], 3, where + ".segments[" + std::to_string(i) + "]");
      segments.push_back(DensitySegment{v[0], v[1], v[2]});
    }
  }
  return located(where, [&] { return MeasureOn01(std::move(atoms), std::move(segments)); });
}

Json measure_to_json(const MeasureOn01& m) {
  Json atoms = Json::array();
  for (const Atom& a : m.atoms()) atoms.push_back({a.z, a.mass});
  Json segs = Json::array();
  for (const DensitySegment& s : m.segments()) segs.push_back({s.a, s.b, s.height});
  return Json{{"atoms", atoms}, {"segments", segs}};
}

}  // namespace

std::vector<double> parse_pnl(std::istream& in, const std::string& source) {
  std::vector<double> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(first, last - first + 1);
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size() || errno == ERANGE || !std::isfinite(v)) {
      fail(ErrorCode::InvalidInput, source + ":" + std::to_string(lineno) +
                                        ": not a finite decimal: '" + token + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) fail(ErrorCode::InvalidInput, source + ": no values");
  return out;
}

std::vector<double> read_pnl_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidInput, "cannot open '" + path + "'");
  return parse_pnl(in, path);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidInput, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::InvalidInput, path + ": " + e.what());
  }
}

RiskMeasureSpec spec_from_json(const Json& j, const std::string& where) {
  const std::string variant = string_field(j, "variant", where);
  return located(where, [&]() -> RiskMeasureSpec {
    if (variant == "var_loss") return RiskMeasureSpec::var_loss(number_field(j, "alpha", where));
    if (variant == "etl") return RiskMeasureSpec::etl(number_field(j, "beta", where));
    if (variant == "put_premium") return RiskMeasureSpec::put_premium();
    if (variant == "span") return RiskMeasureSpec::span_scenarios();
    if (variant == "spectral") {
      return RiskMeasureSpec::spectral(
          SpectralDensity(number_array(field(j, "breakpoints", where), where + ".breakpoints"),
                          number_array(field(j, "heights", where), where + ".heights")));
    }
    if (variant == "loss_ce") {
      const std::string u = string_field(j, "utility", where);
      if (u == "power") return RiskMeasureSpec::loss_ce(LossUtility::power(number_field(j, "p", where)));
      if (u == "exponential") {
        return RiskMeasureSpec::loss_ce(LossUtility::exponential(number_field(j, "beta", where)));
      }
      schema_error(where + ".utility", "unknown utility '" + u + "'");
    }
    if (variant == "general_fenchel") {
      const Json& entries = field(j, "entries", where);
      if (!entries.is_array()) schema_error(where + ".entries", "expected an array");
      std::vector<PenaltyEntry> out;
      for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::string w = where + ".entries[" + std::to_string(i) + "]";
        out.push_back(PenaltyEntry{measure_from_json(entries[i], w),
                                   number_field(entries[i], "penalty", w)});
      }
      return RiskMeasureSpec::general_fenchel(PenaltyFamily(std::move(out)));
    }
    if (variant == "truncated" || variant == "alt_truncated") {
      RiskMeasureSpec inner = spec_from_json(field(j, "inner", where), where + ".inner");
      const double delta = number_field(j, "delta", where);
      return variant == "truncated" ? RiskMeasureSpec::truncated(std::move(inner), delta)
                                    : RiskMeasureSpec::alt_truncated(std::move(inner), delta);
    }
    schema_error(where + ".variant", "unknown variant '" + variant + "'");
  });
}

Json spec_to_json(const RiskMeasureSpec& spec) {
  struct Visitor {
    Json operator()(const spec::VaRLoss& s) const { return {{"variant", "var_loss"}, {"alpha", s.alpha}}; }
    Json operator()(const spec::Etl& s) const { return {{"variant", "etl"}, {"beta", s.beta}}; }
    Json operator()(const spec::Spectral& s) const {
      return {{"variant", "spectral"},
              {"breakpoints", s.phi.breakpoints()},
              {"heights", s.phi.heights()}};
    }
    Json operator()(const spec::LossCe& s) const {
      if (s.utility.kind() == LossUtility::Kind::Power) {
        return {{"variant", "loss_ce"}, {"utility", "power"}, {"p", s.utility.parameter()}};
      }
      return {{"variant", "loss_ce"}, {"utility", "exponential"}, {"beta", s.utility.parameter()}};
    }
    Json operator()(const spec::PutPremium&) const { return {{"variant", "put_premium"}}; }
    Json operator()(const spec::SpanScenarios&) const { return {{"variant", "span"}}; }
    Json operator()(const spec::GeneralFenchel& s) const {
      Json entries = Json::array();
      for (const auto& e : s.family.entries()) {
        Json m = measure_to_json(e.measure);
        m["penalty"] = e.penalty;
        entries.push_back(std::move(m));
      }
      return {{"variant", "general_fenchel"}, {"entries", entries}};
    }
    Json operator()(const spec::Truncated& s) const {
      return {{"variant", "truncated"}, {"delta", s.delta}, {"inner", spec_to_json(*s.inner)}};
    }
    Json operator()(const spec::AltTruncated& s) const {
      return {{"variant", "alt_truncated"}, {"delta", s.delta}, {"inner", spec_to_json(*s.inner)}};
    }
  };
  return std::visit(Visitor{}, spec.variant());
}

std::vector<CatalogEntry> catalog_from_json(const Json& j) {
  const Json* list = &j;
  if (j.is_object()) list = &field(j, "measures", "catalog");
  if (!list->is_array()) schema_error("catalog", "expected an array of measures");
  std::vector<CatalogEntry> out;
  std::map<std::string, int> seen;
  for (std::size_t i = 0; i < list->size(); ++i) {
    const std::string where = "catalog[" + std::to_string(i) + "]";
    RiskMeasureSpec spec = spec_from_json((*list)[i], where);
    std::string name = spec.tag();
    if (auto it = (*list)[i].find("name"); it != (*list)[i].end()) {
      if (!it->is_string()) schema_error(where + ".name", "expected a string");
      name = it->get<std::string>();
    }
    const int count = ++seen[name];
    if (count > 1) name += "#" + std::to_string(count);
    out.push_back(CatalogEntry{std::move(name), std::move(spec)});
  }
  return out;
}

QuantileFn base_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) schema_error(where, "expected an object");
  if (auto it = j.find("pool"); it != j.end()) {
    const auto values = number_array(*it, where + ".pool");
    return located(where, [&] { return QuantileFn::from_samples(values); });
  }
  MixtureBase mix;
  if (auto it = j.find("segments"); it != j.end()) {
    if (!it->is_array()) schema_error(where + ".segments", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      auto v = tuple((*it)[i], 3, where + ".segments[" + std::to_string(i) + "]");
      mix.segments.push_back(UniformComponent{v[0], v[1], v[2]});
    }
  }
  if (auto it = j.find("atoms"); it != j.end()) {
    if (!it->is_array()) schema_error(where + ".atoms", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      auto v = tuple((*it)[i], 2, where + ".atoms[" + std::to_string(i) + "]");
      mix.atoms.push_back(AtomComponent{v[0], v[1]});
    }
  }
  if (mix.segments.empty() && mix.atoms.empty()) {
    schema_error(where, "missing field 'segments' (or 'atoms' / 'pool')");
  }
  return located(where, [&] { return mix.quantile(); });
}

RoblabConfig roblab_config_from_json(const Json& j, std::optional<std::uint64_t> seed_override) {
  const std::string where = "config";
  if (!j.is_object()) schema_error(where, "expected an object");
  RiskMeasureSpec spec = spec_from_json(field(j, "spec", where), where + ".spec");
  QuantileFn base = base_from_json(field(j, "base", where), where + ".base");
  ExperimentConfig cfg{std::move(spec), std::move(base)};
  cfg.n = as_u64(field(j, "n", where), where + ".n");
  cfg.replications = as_u64(field(j, "replications", where), where + ".replications");
  if (cfg.n < 1) schema_error(where + ".n", "must be >= 1");
  if (cfg.replications < 1) schema_error(where + ".replications", "must be >= 1");
  cfg.seed = seed_override ? *seed_override : as_u64(field(j, "seed", where), where + ".seed");
  const Json& cont = field(j, "contamination", where);
  cfg.contamination.epsilons =
      number_array(field(cont, "epsilons", where + ".contamination"), where + ".contamination.epsilons");
  cfg.contamination.zs =
      number_array(field(cont, "zs", where + ".contamination"), where + ".contamination.zs");
  for (double e : cfg.contamination.epsilons) {
    if (!(e >= 0.0 && e < 1.0)) schema_error(where + ".contamination.epsilons", "weights must lie in [0,1)");
  }

  RoblabConfig out{std::move(cfg), std::nullopt, j};
  out.echo["seed"] = out.experiment.seed;
  if (auto it = j.find("consistency"); it != j.end()) {
    const std::string w = where + ".consistency";
    ConsistencyRequest req;
    const Json& ns = field(*it, "n_list", w);
    if (!ns.is_array() || ns.empty()) schema_error(w + ".n_list", "expected a nonempty array");
    for (std::size_t i = 0; i < ns.size(); ++i) {
      req.n_list.push_back(as_u64(ns[i], w + ".n_list[" + std::to_string(i) + "]"));
    }
    req.replications = as_u64(field(*it, "replications", w), w + ".replications");
    out.consistency = std::move(req);
  }
  return out;
}

double round_significant(double x, int digits) {
  if (!std::isfinite(x) || x == 0.0) return x == 0.0 ? 0.0 : x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return std::strtod(buf, nullptr);
}

Json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  const double r = round_significant(x);
  // Integral values print without a trailing ".0".
  if (r == std::trunc(r) && std::fabs(r) < 9007199254740992.0) return static_cast<std::int64_t>(r);
  return r;
}

std::string format_number(double x) {
  if (!std::isfinite(x)) return "NA";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", kSignificantDigits, x == 0.0 ? 0.0 : x);
  return buf;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace lossrisk::io
