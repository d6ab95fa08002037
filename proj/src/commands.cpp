#include "lossrisk/commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "lossrisk/axioms.hpp"
#include "lossrisk/error.hpp"
#include "lossrisk/evaluate.hpp"
#include "lossrisk/io.hpp"
#include "lossrisk/rng.hpp"
#include "lossrisk/roblab.hpp"
#include "lossrisk/sensitivity.hpp"

namespace lossrisk::cli {
namespace {

using io::Json;

const std::string& require(const std::optional<std::string>& path, const char* flag) {
  if (!path) fail(ErrorCode::InvalidInput, std::string("missing required flag ") + flag);
  return *path;
}

std::vector<io::CatalogEntry> load_catalog(const CliOptions& opt) {
  return io::catalog_from_json(io::read_json_file(require(opt.catalog, "--catalog")));
}

Json header(const std::string& command) {
  return Json{{"command", command}, {"schema_version", io::kSchemaVersion}};
}

std::string error_text(const Error& e) { return e.what(); }

// Only the certainty-equivalent formulas are offered as the analytic column.
bool cli_analytic(const RiskMeasureSpec& spec) {
  const auto& v = spec.variant();
  if (std::holds_alternative<spec::LossCe>(v)) return true;
  if (const auto* t = std::get_if<spec::Truncated>(&v)) {
    return std::holds_alternative<spec::LossCe>(t->inner->variant());
  }
  return false;
}

// Inputs for the axiom suite: small empirical samples with mixed signs, plus
// a few that are entirely gains or entirely losses.
std::vector<QuantileFn> random_inputs(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 gen(splitmix64(seed));
  std::vector<QuantileFn> out;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = 1 + static_cast<std::size_t>(uniform_open01(gen) * 8.0);
    double lo = -10.0, hi = 10.0;
    if (i % 10 == 8) lo = 0.0;
    if (i % 10 == 9) hi = 0.0;
    std::vector<double> xs(n);
    for (double& x : xs) x = lo + (hi - lo) * uniform_open01(gen);
    out.push_back(QuantileFn::from_samples(xs));
  }
  return out;
}

}  // namespace

std::vector<double> parse_z_grid(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (tok.empty() || *end != '\0' || !std::isfinite(v)) {
      fail(ErrorCode::InvalidInput, "--z-grid: not a number: '" + tok + "'");
    }
    parts.push_back(v);
  }
  if (parts.size() != 3) fail(ErrorCode::InvalidInput, "--z-grid expects \"a,b,step\"");
  const double a = parts[0], b = parts[1], step = parts[2];
  if (!(step > 0.0) || b < a) fail(ErrorCode::InvalidInput, "--z-grid needs a <= b and step > 0");
  const double span = (b - a) / step;
  if (span > 1e6) fail(ErrorCode::TooLarge, "--z-grid has too many points");
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  std::vector<double> zs;
  for (std::size_t i = 0; i < count; ++i) zs.push_back(a + static_cast<double>(i) * step);
  return zs;
}

void cmd_eval(const CliOptions& opt, std::ostream& out, std::ostream& err) {
  const auto catalog = load_catalog(opt);
  std::optional<QuantileFn> g;
  std::optional<Scenarios> scen;
  if (opt.input) g = QuantileFn::from_samples(io::read_pnl_file(*opt.input));
  if (opt.scenarios) scen = Scenarios{io::read_pnl_file(*opt.scenarios)};
  if (!catalog.empty() && !g && !scen) {
    fail(ErrorCode::InvalidInput, "eval needs --input or --scenarios");
  }

  Json results = Json::object();
  Json errors = Json::object();
  for (const auto& entry : catalog) {
    try {
      const bool span = std::holds_alternative<spec::SpanScenarios>(entry.spec.variant());
      double value;
      if (span) {
        if (!scen) fail(ErrorCode::InvalidInput, "span consumes the scenario file (--scenarios)");
        value = eval(entry.spec, *scen);
      } else {
        if (!g) fail(ErrorCode::InvalidInput, "measure consumes the P&L file (--input)");
        value = eval(entry.spec, *g);
      }
      results[entry.name] = io::number(value);
    } catch (const Error& e) {
      errors[entry.name] = error_text(e);
      err << "warning: " << entry.name << ": " << e.what() << "\n";
    }
  }
  Json report = header("eval");
  report["results"] = results;
  report["errors"] = errors;
  out << io::dump(report);
}

void cmd_sensitivity(const CliOptions& opt, std::ostream& out, std::ostream& err) {
  const auto catalog = load_catalog(opt);
  for (const auto& entry : catalog) {
    if (!cli_analytic(entry.spec) && !opt.numeric) {
      fail(ErrorCode::InvalidInput, "measure '" + entry.name +
                                        "' has no analytic sensitivity; pass --numeric");
    }
  }
  std::optional<QuantileFn> g;
  if (opt.input) {
    g = QuantileFn::from_samples(io::read_pnl_file(*opt.input));
  } else if (opt.config) {
    const Json cfg = io::read_json_file(*opt.config);
    const auto it = cfg.find("base");
    if (it == cfg.end()) fail(ErrorCode::InvalidInput, "config: missing field 'base'");
    g = io::base_from_json(*it, "config.base");
  } else {
    fail(ErrorCode::InvalidInput, "sensitivity needs --input or --config with a base");
  }
  const auto zs = parse_z_grid(opt.z_grid);

  out << "measure,z,S_analytic,S_numeric,abs_diff\n";
  for (const auto& entry : catalog) {
    for (double z : zs) {
      double analytic = NAN, numeric = NAN;
      if (cli_analytic(entry.spec)) {
        try {
          analytic = sensitivity_analytic(entry.spec, *g, z);
        } catch (const Error& e) {
          err << "warning: " << entry.name << " z=" << io::format_number(z)
              << ": analytic: " << e.what() << "\n";
        }
      }
      try {
        numeric = sensitivity_numeric(entry.spec, *g, z).estimate;
      } catch (const Error& e) {
        err << "warning: " << entry.name << " z=" << io::format_number(z)
            << ": numeric: " << e.what() << "\n";
      }
      const double diff = std::fabs(analytic - numeric);
      out << entry.name << ',' << io::format_number(z) << ',' << io::format_number(analytic)
          << ',' << io::format_number(numeric) << ',' << io::format_number(diff) << '\n';
    }
  }
}

void cmd_roblab(const CliOptions& opt, std::ostream& out, std::ostream&) {
  const Json raw = io::read_json_file(require(opt.config, "--config"));
  io::RoblabConfig cfg = io::roblab_config_from_json(raw, opt.seed);

  Json report = header("roblab");
  report["rng"] = std::string(kRngName);
  report["seed"] = cfg.experiment.seed;
  report["config"] = cfg.echo;

  const RobustnessReport rob = robustness_experiment(cfg.experiment);
  report["base_median"] = io::number(rob.base_median);
  Json points = Json::array();
  for (const auto& p : rob.points) {
    points.push_back(Json{{"z", io::number(p.z)},
                          {"epsilon", io::number(p.epsilon)},
                          {"d_p", io::number(p.d_p)},
                          {"median", io::number(p.median)},
                          {"q05", io::number(p.q05)},
                          {"q95", io::number(p.q95)}});
  }
  report["robustness"] = points;

  if (cfg.consistency) {
    const ConsistencyCurve curve =
        consistency_curve(cfg.experiment.spec, cfg.experiment.base, cfg.consistency->n_list,
                          cfg.consistency->replications, cfg.experiment.seed,
                          cfg.experiment.threads);
    Json cpoints = Json::array();
    for (const auto& p : curve.points) {
      cpoints.push_back(Json{{"n", p.n}, {"median_abs_error", io::number(p.median_abs_error)}});
    }
    report["consistency"] = Json{{"exact", io::number(curve.exact)}, {"points", cpoints}};
  }
  out << io::dump(report);
}

void cmd_axioms(const CliOptions& opt, std::ostream& out, std::ostream&) {
  const auto catalog = load_catalog(opt);
  const std::uint64_t seed = opt.seed.value_or(42);
  std::vector<QuantileFn> inputs;
  if (opt.input) inputs.push_back(QuantileFn::from_samples(io::read_pnl_file(*opt.input)));
  for (auto& g : random_inputs(seed, 40)) inputs.push_back(std::move(g));

  Json results = Json::object();
  for (const auto& entry : catalog) {
    const AxiomReport rep = axiom_suite(entry.spec, inputs, opt.tol);
    Json axioms = Json::object();
    for (const auto& r : rep.results) {
      Json a{{"status", to_string(r.status)},
             {"observed_holds", r.observed_holds},
             {"checks", r.checks}};
      a["expected_to_hold"] = r.expected_to_hold ? Json(*r.expected_to_hold) : Json(nullptr);
      if (r.witness) {
        a["witness"] = Json{{"description", r.witness->description},
                            {"lhs", io::number(r.witness->lhs)},
                            {"rhs", io::number(r.witness->rhs)}};
      }
      axioms[r.axiom] = std::move(a);
    }
    results[entry.name] = std::move(axioms);
  }
  Json report = header("axioms");
  report["rng"] = std::string(kRngName);
  report["seed"] = seed;
  report["tol"] = opt.tol;
  report["inputs"] = inputs.size();
  report["results"] = results;
  out << io::dump(report);
}

int run(const CliOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    std::ostringstream buf;
    if (opt.command == "eval") {
      cmd_eval(opt, buf, err);
    } else if (opt.command == "sensitivity") {
      cmd_sensitivity(opt, buf, err);
    } else if (opt.command == "roblab") {
      cmd_roblab(opt, buf, err);
    } else if (opt.command == "axioms") {
      cmd_axioms(opt, buf, err);
    } else {
      err << "error: unknown command '" << opt.command << "'\n";
      return kExitUsage;
    }
    if (opt.out) {
      std::ofstream f(*opt.out, std::ios::binary);
      if (!f) fail(ErrorCode::InvalidInput, "cannot write '" + *opt.out + "'");
      f << buf.str();
      if (!f) fail(ErrorCode::InvalidInput, "failed writing '" + *opt.out + "'");
    } else {
      out << buf.str();
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace lossrisk::cli
