#include "mtolab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mtolab/errors.hpp"
#include "mtolab/inequalities.hpp"
#include "mtolab/selftest.hpp"

namespace mto::cli {

using Json = nlohmann::ordered_json;

namespace {

const std::vector<std::string> kCommands = {"sphere-verify", "sphere-limit", "cr-verify",
                                            "cr-limit",      "extremal",     "selftest"};

constexpr double kMinOrder = 0.7;
constexpr double kConvergedError = 1e-10;

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void check_gamma(int n, double gamma) {
  if (!(gamma > 0.0) || !(gamma < 0.5 * n)) {
    throw ParameterError("--gamma must lie in (0, n/2)");
  }
  if (n - 2.0 * gamma < sphere::kEndpointGuard) {
    throw EndpointProximityError("--gamma: n - 2 gamma is below the endpoint guard 1e-3");
  }
}

void check_d(int n, double d) {
  const int Q = 2 * n + 2;
  if (!(d > 0.0) || !(d < Q)) throw ParameterError("--d must lie in (0, Q)");
  if (Q - d < cr::kEndpointGuard) throw EndpointProximityError("--d: Q - d is below the endpoint guard 1e-3");
}

void validate(const ExperimentConfig& c) {
  if (c.n < 1) throw ParameterError("--n must be >= 1");
  if (c.K < 1) throw ParameterError("--K must be >= 1");
  if (c.M != 0 && c.M < 2 * c.K + 2) throw ParameterError("--M must be at least 2K + 2");
  if (c.J < 1) throw ParameterError("--J must be >= 1");
  if (c.starts < 1) throw ParameterError("--starts must be >= 1");
  if (c.gamma) check_gamma(c.n, *c.gamma);
  if (c.d) check_d(c.n, *c.d);

  const bool limit = c.command == "sphere-limit" || c.command == "cr-limit";
  if (limit) {
    if (!(c.refine > 1.0)) throw ParameterError("--refine must exceed 1");
    if (c.steps < 2) throw ParameterError("--steps must be >= 2");
  }
  if (c.command == "sphere-limit") {
    // gamma_m = n/2 - gap refine^{-m}; endpoint gap n - 2 gamma_m = 2 gap refine^{-m}
    const double first = c.gamma_gap / c.refine;
    if (!(first > 0.0) || !(first < 0.5 * c.n)) throw ParameterError("--gamma-gap gives gamma outside (0, n/2)");
    if (2.0 * c.gamma_gap * std::pow(c.refine, -c.steps) < sphere::kEndpointGuard) {
      throw EndpointProximityError("--gamma-gap/--refine/--steps reach past the endpoint guard 1e-3");
    }
  }
  if (c.command == "cr-limit") {
    const double first = c.d_gap / c.refine;
    if (!(first > 0.0) || !(first < 2 * c.n + 2)) throw ParameterError("--d-gap gives d outside (0, Q)");
    if (c.d_gap * std::pow(c.refine, -c.steps) < cr::kEndpointGuard) {
      throw EndpointProximityError("--d-gap/--refine/--steps reach past the endpoint guard 1e-3");
    }
  }
  if (c.command == "extremal" && !c.gamma) throw ParameterError("extremal needs --gamma");
}

struct Emission {
  std::string csv;
  std::string json;
};

sphere::ContextPtr sphere_context(const ExperimentConfig& c) {
  return sphere::SphereContext::make(c.n, c.K, c.M == 0 ? 2 * c.K + 2 : c.M);
}

int deficit_status(const std::vector<DeficitRecord>& records, std::ostream& log) {
  int status = kExitOk;
  for (const auto& r : records) {
    log << r.inequality << ": lhs " << format_number(r.lhs) << "  rhs " << format_number(r.rhs) << "  deficit "
        << format_number(r.deficit) << "\n";
    if (!(r.deficit >= -sphere::kDeficitTolerance)) {
      log << "sharpness violation in " << r.inequality << "\n";
      status = kExitSharpness;
    }
  }
  return status;
}

int order_status(const LimitTable& t, std::ostream& log) {
  log << "fitted orders: lhs " << format_number(t.lhs_order) << "  rhs " << format_number(t.rhs_order) << "\n";
  if (max_limit_error(t) <= kConvergedError) return kExitOk;
  if (!(std::min(t.lhs_order, t.rhs_order) >= kMinOrder)) {
    log << "convergence order below " << kMinOrder << "\n";
    return kExitOrder;
  }
  return kExitOk;
}

int sphere_verify(const ExperimentConfig& c, Emission& em, std::ostream& log) {
  const auto ctx = sphere_context(c);
  const std::string spec = c.field.empty() ? "const:1" : c.field;
  const auto f = parse_sphere_field(spec, ctx, c.gamma);
  std::vector<DeficitRecord> records;
  if (c.gamma) records.push_back(sphere::sobolev_pair(*c.gamma, f, spec));
  records.push_back(sphere::mto_pair(f, spec));
  em = {deficit_csv(records), deficit_json(records)};
  return deficit_status(records, log);
}

int sphere_limit(const ExperimentConfig& c, Emission& em, std::ostream& log) {
  const auto ctx = sphere_context(c);
  const std::string spec = c.field.empty() ? "sum:1:0.5,3:0.3" : c.field;
  const auto w = parse_sphere_field(spec, ctx, c.gamma);
  const auto gammas = sphere::refined_gamma_sequence(c.n, c.gamma_gap, c.refine, c.steps);
  const LimitTable t = sphere::limit_study(w, gammas, spec);
  em = {limit_csv(t), limit_json(t)};
  return order_status(t, log);
}

int cr_verify(const ExperimentConfig& c, Emission& em, std::ostream& log) {
  const auto ctx = cr::CRContext::make(c.n, c.J);
  const std::string spec = c.field.empty() ? "pluri:1:0.4:0" : c.field;
  const auto f = parse_cr_field(spec, ctx);
  std::vector<DeficitRecord> records;
  if (c.d) records.push_back(cr::cr_sobolev_pair(*c.d, f, spec));
  if (f.is_pluriharmonic()) {
    records.push_back(cr::cr_mto_pair(f, spec));
  } else {
    log << "field is not pluriharmonic; skipping cr_mto\n";
  }
  em = {deficit_csv(records), deficit_json(records)};
  return deficit_status(records, log);
}

int cr_limit(const ExperimentConfig& c, Emission& em, std::ostream& log) {
  const auto ctx = cr::CRContext::make(c.n, c.J);
  const std::string spec = c.field.empty() ? "pluri:1:0.4:0" : c.field;
  const auto F = parse_cr_field(spec, ctx);
  const auto ds = cr::refined_d_sequence(c.n, c.d_gap, c.refine, c.steps);
  const LimitTable t = cr::cr_limit_study(F, ds, spec);
  em = {limit_csv(t), limit_json(t)};
  return order_status(t, log);
}

int run_extremal(const ExperimentConfig& c, Emission& em, std::ostream& log) {
  const auto ctx = sphere_context(c);
  extremal::OptimizerOptions opts;
  opts.seed = c.seed;
  opts.starts = c.starts;
  const auto rep = extremal::minimize_quotient_multistart(ctx, *c.gamma, opts);
  em = {optimizer_csv(rep), optimizer_json(rep)};
  log << "quotient " << format_number(rep.final_quotient) << "  sharp constant " << format_number(rep.sharp_constant)
      << "  iterations " << rep.iterations << " (" << rep.termination << ", seed " << rep.seed << ")\n";
  if (!(rep.final_quotient >= rep.sharp_constant - sphere::kDeficitTolerance)) {
    log << "quotient below the sharp constant\n";
    return kExitSharpness;
  }
  return kExitOk;
}

int run_selftest_command(const ExperimentConfig& c, Emission& em, std::ostream& log) {
  const auto checks = run_selftest(c.seed);
  std::ostringstream csv;
  csv << "check,passed,value,tolerance\n";
  Json arr = Json::array();
  int status = kExitOk;
  for (const auto& r : checks) {
    csv << csv_text(r.name) << ',' << (r.passed ? 1 : 0) << ',' << format_number(r.value) << ','
        << format_number(r.tolerance) << '\n';
    arr.push_back(
        {{"check", r.name}, {"passed", r.passed}, {"value", number(r.value)}, {"tolerance", number(r.tolerance)}});
    log << (r.passed ? "PASS " : "FAIL ") << r.name << "  " << format_number(r.value) << "\n";
    if (!r.passed) status = std::max(status, r.failure_code);
  }
  em = {csv.str(), Json{{"checks", arr}}.dump(2) + "\n"};
  return status;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  out.close();
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string deficit_csv(const std::vector<DeficitRecord>& records) {
  std::ostringstream s;
  s << "inequality,n,parameter,lhs,rhs,deficit,field,points,last_relative_change,capped\n";
  for (const auto& r : records) {
    s << r.inequality << ',' << r.n << ',' << (r.parameter ? format_number(*r.parameter) : "") << ','
      << format_number(r.lhs) << ',' << format_number(r.rhs) << ',' << format_number(r.deficit) << ','
      << csv_text(r.field) << ',' << r.diagnostics.points << ',' << format_number(r.diagnostics.last_relative_change)
      << ',' << (r.diagnostics.capped ? 1 : 0) << '\n';
  }
  return s.str();
}

std::string limit_csv(const LimitTable& t) {
  std::ostringstream s;
  s << "gamma_or_d,lhs,rhs,lhs_target,rhs_target,lhs_err,rhs_err,order_running\n";
  for (const auto& r : t.rows) {
    const double running = std::isnan(r.lhs_order_running) || std::isnan(r.rhs_order_running)
                               ? std::nan("")
                               : std::min(r.lhs_order_running, r.rhs_order_running);
    s << format_number(r.parameter) << ',' << format_number(r.lhs) << ',' << format_number(r.rhs) << ','
      << format_number(r.lhs_target) << ',' << format_number(r.rhs_target) << ',' << format_number(r.lhs_error)
      << ',' << format_number(r.rhs_error) << ',' << format_number(running) << '\n';
  }
  return s.str();
}

std::string optimizer_csv(const extremal::OptimizerReport& rep) {
  std::ostringstream s;
  s << "iteration,quotient,gap\n";
  for (std::size_t i = 0; i < rep.trace.size(); ++i) {
    s << i << ',' << format_number(rep.trace[i]) << ',' << format_number(rep.trace[i] - rep.sharp_constant) << '\n';
  }
  return s.str();
}

std::string deficit_json(const std::vector<DeficitRecord>& records) {
  Json arr = Json::array();
  for (const auto& r : records) {
    arr.push_back({{"inequality", r.inequality},
                   {"n", r.n},
                   {"parameter", r.parameter ? number(*r.parameter) : Json(nullptr)},
                   {"lhs", number(r.lhs)},
                   {"rhs", number(r.rhs)},
                   {"deficit", number(r.deficit)},
                   {"field", r.field},
                   {"diagnostics",
                    {{"points", r.diagnostics.points},
                     {"last_relative_change", number(r.diagnostics.last_relative_change)},
                     {"capped", r.diagnostics.capped}}}});
  }
  return Json{{"records", arr}}.dump(2) + "\n";
}

std::string limit_json(const LimitTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"parameter", number(r.parameter)},
                    {"gap", number(r.gap)},
                    {"lhs", number(r.lhs)},
                    {"rhs", number(r.rhs)},
                    {"lhs_target", number(r.lhs_target)},
                    {"rhs_target", number(r.rhs_target)},
                    {"lhs_error", number(r.lhs_error)},
                    {"rhs_error", number(r.rhs_error)},
                    {"lhs_order_running", number(r.lhs_order_running)},
                    {"rhs_order_running", number(r.rhs_order_running)}});
  }
  Json j{{"setting", t.setting},
         {"n", t.n},
         {"field", t.field},
         {"rows", rows},
         {"lhs_order", number(t.lhs_order)},
         {"rhs_order", number(t.rhs_order)},
         {"lhs_richardson", number(t.lhs_richardson)},
         {"rhs_richardson", number(t.rhs_richardson)},
         {"lhs_richardson_error", number(t.lhs_richardson_error)},
         {"rhs_richardson_error", number(t.rhs_richardson_error)}};
  return j.dump(2) + "\n";
}

std::string optimizer_json(const extremal::OptimizerReport& rep) {
  Json trace = Json::array();
  for (double x : rep.trace) trace.push_back(number(x));
  Json argmin = Json::array();
  for (double x : rep.argmin) argmin.push_back(number(x));
  Json j{{"n", rep.n},
         {"gamma", number(rep.gamma)},
         {"K", rep.K},
         {"iterations", rep.iterations},
         {"final_quotient", number(rep.final_quotient)},
         {"sharp_constant", number(rep.sharp_constant)},
         {"gap", number(rep.gap)},
         {"termination", rep.termination},
         {"seed", rep.seed},
         {"trace", trace},
         {"argmin", argmin}};
  return j.dump(2) + "\n";
}

std::optional<ExperimentConfig> parse_arguments(int argc, const char* const* argv, std::ostream& out) {
  ExperimentConfig c;
  CLI::App app{"Spectral checks of sharp Sobolev and Moser-Trudinger-Onofri inequalities on spheres", "mtolab"};
  app.add_option("command", c.command, "Experiment to run")->required()->check(CLI::IsMember(kCommands));
  app.add_option("--n", c.n, "Dimension n (S^n, or CR S^{2n+1})");
  double gamma = 0.0;
  auto* gopt = app.add_option("--gamma", gamma, "Fractional order gamma in (0, n/2)");
  app.add_option("--gamma-gap", c.gamma_gap, "sphere-limit: gamma_m = n/2 - gap * refine^-m");
  double d = 0.0;
  auto* dopt = app.add_option("--d", d, "CR order d in (0, Q)");
  app.add_option("--d-gap", c.d_gap, "cr-limit: d_m = Q - gap * refine^-m");
  app.add_option("--refine", c.refine, "Refinement factor of the limit sequence");
  app.add_option("--steps", c.steps, "Number of limit steps");
  app.add_option("--K", c.K, "Zonal truncation degree");
  app.add_option("--M", c.M, "Quadrature size (default 2K + 2)");
  app.add_option("--J", c.J, "CR bidegree truncation");
  app.add_option("--field", c.field, "Field spec, e.g. const:1, mode:1:0.5, sum:1:0.5,3:0.3, random:8:42");
  app.add_option("--seed", c.seed, "Base seed");
  app.add_option("--starts", c.starts, "extremal: number of random starts");
  std::string format = "both";
  app.add_option("--format", format, "csv, json or both")->check(CLI::IsMember({"csv", "json", "both"}));
  app.add_option("--out", c.out_dir, "Output directory (default $MTOLAB_OUT_DIR, then .)");
  app.add_option("--name", c.name, "Base name of the output files (default: command)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ParameterError(e.what());
  }
  if (gopt->count() > 0) c.gamma = gamma;
  if (dopt->count() > 0) c.d = d;
  c.format = format == "csv" ? Format::Csv : format == "json" ? Format::Json : Format::Both;
  validate(c);
  return c;
}

int run_command(const ExperimentConfig& config, std::ostream& log) {
  validate(config);
  Emission em;
  int status = kExitOk;
  if (config.command == "sphere-verify") {
    status = sphere_verify(config, em, log);
  } else if (config.command == "sphere-limit") {
    status = sphere_limit(config, em, log);
  } else if (config.command == "cr-verify") {
    status = cr_verify(config, em, log);
  } else if (config.command == "cr-limit") {
    status = cr_limit(config, em, log);
  } else if (config.command == "extremal") {
    status = run_extremal(config, em, log);
  } else if (config.command == "selftest") {
    status = run_selftest_command(config, em, log);
  } else {
    throw ParameterError("unknown command '" + config.command + "'");
  }

  std::string dir = config.out_dir;
  if (dir.empty()) {
    const char* env = std::getenv("MTOLAB_OUT_DIR");
    dir = env && *env ? env : ".";
  }
  const std::string name = config.name.empty() ? config.command : config.name;
  try {
    std::filesystem::create_directories(dir);
    const std::filesystem::path base(dir);
    if (config.format != Format::Json) write_file(base / (name + ".csv"), em.csv);
    if (config.format != Format::Csv) write_file(base / (name + ".json"), em.json);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return status;
}

}  // namespace mto::cli
