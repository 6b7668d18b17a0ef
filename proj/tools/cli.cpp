#include "cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "qcap/errors.hpp"
#include "qcap/oracle_mc.hpp"

namespace qcap::cli {

namespace {

using nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  double r = 5.0;
  double tau = 0.5;
  double theta = 0.0;
  double sigma = 0.0;
  double sigma_min = 0.0;
  double sigma_max = 3.0;
  int sigma_steps = 61;
  std::vector<double> theta_list;
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 42;
  double tol = 1e-10;
  double tail_tol = 1e-12;
  std::string format = "csv";
  std::string out_path;
  int threads = 0;

  NumericsConfig config() const {
    NumericsConfig cfg;
    cfg.quad_tol = tol;
    cfg.tail_tol = tail_tol;
    return cfg;
  }
  ChannelParams params() const { return {r, tau, theta, sigma}; }
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--tol", o.tol, "Absolute quadrature tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--tail-tol", o.tail_tol, "Poisson truncation mass")
      ->check(CLI::Range(std::numeric_limits<double>::min(), 0.5))
      ->capture_default_str();
  sub->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--out", o.out_path, "Write output to PATH instead of stdout");
  sub->add_option("--threads", o.threads, "OpenMP worker threads")->check(CLI::PositiveNumber);
}

void add_point(CLI::App* sub, Options& o, bool with_sigma) {
  sub->add_option("--r", o.r, "Coherent amplitude of symbol 1")
      ->required()
      ->check(CLI::PositiveNumber);
  sub->add_option("--tau", o.tau, "Amplitude damping")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  if (with_sigma) {
    sub->add_option("--theta", o.theta, "Decoding threshold")
        ->required()
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--sigma", o.sigma, "Detector noise width")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
  }
}

void add_sigma_range(CLI::App* sub, Options& o) {
  sub->add_option("--sigma-min", o.sigma_min)->check(CLI::NonNegativeNumber)->capture_default_str();
  sub->add_option("--sigma-max", o.sigma_max)->check(CLI::NonNegativeNumber)->capture_default_str();
}

ordered_json config_echo(const Options& o) {
  return {{"tol", o.tol}, {"tail_tol", o.tail_tol}};
}

ordered_json point_echo(const Options& o) {
  ordered_json j{{"r", o.r}, {"tau", o.tau}, {"theta", o.theta}, {"sigma", o.sigma}};
  j.update(config_echo(o));
  return j;
}

ordered_json record(const char* command, ordered_json params) {
  return {{"schema_version", kSchemaVersion}, {"command", command}, {"params", std::move(params)}};
}

ordered_json row_json(const SweepRow& row) {
  return {{"theta", row.theta},     {"sigma", row.sigma},     {"p00", row.p00},
          {"p01", row.p01},         {"p1_star", row.p1_star}, {"capacity_bits", row.capacity_bits}};
}

void write_csv_line(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ',';
    os << cells[i];
  }
  os << '\n';
}

std::string rows_output(const Options& o, const char* command, ordered_json params,
                        const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  if (o.format == "json") {
    ordered_json j = record(command, std::move(params));
    j["rows"] = ordered_json::array();
    for (const auto& row : rows) j["rows"].push_back(row_json(row));
    os << j.dump(2) << '\n';
  } else {
    write_sweep_csv(os, rows);
  }
  return os.str();
}

std::string cmd_capacity(const Options& o) {
  const auto p = o.params();
  const TransitionMatrix t = transition_matrix(p, o.config());
  const CapacityResult c = channel_capacity(t);
  std::ostringstream os;
  if (o.format == "json") {
    ordered_json j = record("capacity", point_echo(o));
    j["result"] = {{"p00", t.p00},        {"p01", t.p01},
                   {"p10", t.p10},        {"p11", t.p11},
                   {"p1_star", c.p1_star}, {"wp", c.wp},
                   {"capacity_bits", c.capacity_bits}, {"method", to_string(c.method)}};
    os << j.dump(2) << '\n';
  } else {
    write_csv_line(os, {"p00", "p01", "p10", "p11", "p1_star", "wp", "capacity_bits", "method"});
    write_csv_line(os, {format_double(t.p00), format_double(t.p01), format_double(t.p10),
                        format_double(t.p11), format_double(c.p1_star), format_double(c.wp),
                        format_double(c.capacity_bits), to_string(c.method)});
  }
  return os.str();
}

std::string cmd_sweep(const Options& o) {
  if (!(o.sigma_min < o.sigma_max)) throw UsageError("--sigma-min must be below --sigma-max");
  SweepSpec spec;
  spec.base = o.params();
  spec.theta_list = o.theta_list;
  if (spec.theta_list.empty()) spec.theta_list = {o.theta};
  spec.sigma_grid = affine_grid(o.sigma_min, o.sigma_max, o.sigma_steps);
  spec.cfg = o.config();
  const auto rows = sweep(spec);
  ordered_json params{{"r", o.r},
                      {"tau", o.tau},
                      {"theta_list", spec.theta_list},
                      {"sigma_min", o.sigma_min},
                      {"sigma_max", o.sigma_max},
                      {"sigma_steps", o.sigma_steps}};
  params.update(config_echo(o));
  return rows_output(o, "sweep", std::move(params), rows);
}

std::string cmd_fig1(const Options& o) {
  const SweepSpec spec = fig1_spec(o.config());
  const auto rows = sweep(spec);
  ordered_json params{{"r", spec.base.r},
                      {"tau", spec.base.tau},
                      {"theta_list", spec.theta_list},
                      {"sigma_min", spec.sigma_grid.front()},
                      {"sigma_max", spec.sigma_grid.back()},
                      {"sigma_steps", spec.sigma_grid.size()}};
  params.update(config_echo(o));
  return rows_output(o, "fig1", std::move(params), rows);
}

std::string cmd_optimize(const Options& o) {
  if (!(o.sigma_min < o.sigma_max)) throw UsageError("--sigma-min must be below --sigma-max");
  const auto cfg = o.config();
  const ChannelParams base = o.params();
  const NoiseOptimum best = optimal_sigma(base, o.sigma_min, o.sigma_max, cfg);
  const double at_zero = evaluate_point(base, base.theta, 0.0, cfg).capacity_bits;
  const bool benefit = best.capacity_at_star > at_zero + kCapacityResolution;
  std::ostringstream os;
  if (o.format == "json") {
    ordered_json params{{"r", o.r}, {"tau", o.tau}, {"theta", o.theta},
                        {"sigma_min", o.sigma_min}, {"sigma_max", o.sigma_max}};
    params.update(config_echo(o));
    ordered_json j = record("optimize", std::move(params));
    j["result"] = {{"sigma_star", best.sigma_star},
                   {"capacity_at_star", best.capacity_at_star},
                   {"capacity_at_zero", at_zero},
                   {"noise_benefit", benefit},
                   {"boundary", best.at_boundary}};
    os << j.dump(2) << '\n';
  } else {
    write_csv_line(os, {"sigma_star", "capacity_at_star", "capacity_at_zero", "noise_benefit",
                        "boundary"});
    write_csv_line(os, {format_double(best.sigma_star), format_double(best.capacity_at_star),
                        format_double(at_zero), benefit ? "true" : "false",
                        best.at_boundary ? "true" : "false"});
  }
  return os.str();
}

struct Check {
  const char* name;
  double reference;
  mc::McEstimate estimate;
  double z;
};

// The standard error is floored at 1/N so an estimate of exactly 0 or 1
// still yields a finite score.
double z_score(double reference, const mc::McEstimate& e) {
  const double floor = 1.0 / static_cast<double>(e.n_samples);
  return (e.p_hat - reference) / std::max(e.std_err, floor);
}

std::string cmd_validate(const Options& o, bool& passed) {
  if (o.samples < mc::kMinSamples) {
    throw UsageError("--samples must be at least " + std::to_string(mc::kMinSamples));
  }
  const auto cfg = o.config();
  const auto p = o.params();
  const TransitionMatrix t = transition_matrix(p, cfg);
  const SignalDensity vacuum(0.0, p.sigma, cfg);
  const double p00_quad = interval_probability(vacuum, -p.theta, p.theta, cfg);
  const auto est = mc::estimate_transition(p, o.samples, o.seed);

  const std::vector<Check> checks{
      {"p00", p00_quad, est.p00, z_score(p00_quad, est.p00)},
      {"p01", t.p01, est.p01, z_score(t.p01, est.p01)},
      {"p00_closed_form", t.p00, est.p00, z_score(t.p00, est.p00)}};
  passed = true;
  for (const auto& c : checks) passed = passed && std::abs(c.z) <= 4.0;

  std::ostringstream os;
  if (o.format == "json") {
    ordered_json params = point_echo(o);
    params["samples"] = o.samples;
    params["seed"] = o.seed;
    ordered_json j = record("validate", std::move(params));
    j["checks"] = ordered_json::array();
    for (const auto& c : checks) {
      j["checks"].push_back({{"quantity", c.name},
                             {"reference", c.reference},
                             {"mc_estimate", c.estimate.p_hat},
                             {"std_err", c.estimate.std_err},
                             {"z", c.z}});
    }
    j["passed"] = passed;
    os << j.dump(2) << '\n';
  } else {
    write_csv_line(os, {"quantity", "reference", "mc_estimate", "std_err", "z"});
    for (const auto& c : checks) {
      write_csv_line(os, {c.name, format_double(c.reference), format_double(c.estimate.p_hat),
                          format_double(c.estimate.std_err), format_double(c.z)});
    }
  }
  return os.str();
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out_path, std::ios::binary);
  if (!file) throw UsageError("cannot open output file " + o.out_path);
  file << text;
  if (!file) throw UsageError("failed writing output file " + o.out_path);
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) throw std::domain_error("format_double: non-finite value");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << kSweepHeader << '\n';
  for (const auto& row : rows) {
    write_csv_line(os, {format_double(row.theta), format_double(row.sigma), format_double(row.p00),
                        format_double(row.p01), format_double(row.p1_star),
                        format_double(row.capacity_bits)});
  }
}

std::vector<SweepRow> read_sweep_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kSweepHeader) {
    throw std::invalid_argument("read_sweep_csv: unexpected header");
  }
  std::vector<SweepRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    double cells[6];
    const char* pos = line.data();
    const char* end = line.data() + line.size();
    for (int i = 0; i < 6; ++i) {
      const auto res = std::from_chars(pos, end, cells[i]);
      if (res.ec != std::errc{}) throw std::invalid_argument("read_sweep_csv: bad number");
      pos = res.ptr;
      if (i < 5) {
        if (pos == end || *pos != ',') throw std::invalid_argument("read_sweep_csv: bad row");
        ++pos;
      }
    }
    if (pos != end) throw std::invalid_argument("read_sweep_csv: trailing data");
    rows.push_back({cells[0], cells[1], cells[2], cells[3], cells[4], cells[5]});
  }
  return rows;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Capacity of a damped bosonic channel with noisy threshold decoding", "qcap"};
  app.require_subcommand(1);
  Options o;

  auto* capacity = app.add_subcommand("capacity", "Transition matrix and capacity at one point");
  add_point(capacity, o, true);
  add_common(capacity, o);

  auto* sweep_cmd = app.add_subcommand("sweep", "Capacity over a sigma grid and theta list");
  sweep_cmd->add_option("--r", o.r)->required()->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--tau", o.tau)->check(CLI::NonNegativeNumber)->capture_default_str();
  auto* theta_opt = sweep_cmd->add_option("--theta", o.theta)->check(CLI::NonNegativeNumber);
  auto* list_opt = sweep_cmd->add_option("--theta-list", o.theta_list, "Comma-separated thresholds")
                       ->delimiter(',')
                       ->check(CLI::NonNegativeNumber);
  theta_opt->excludes(list_opt);
  add_sigma_range(sweep_cmd, o);
  sweep_cmd->add_option("--sigma-steps", o.sigma_steps)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_common(sweep_cmd, o);

  auto* optimize = app.add_subcommand("optimize", "Locate the capacity-maximizing noise width");
  add_point(optimize, o, false);
  optimize->add_option("--theta", o.theta)->required()->check(CLI::NonNegativeNumber);
  add_sigma_range(optimize, o);
  add_common(optimize, o);

  auto* fig1 = app.add_subcommand("fig1", "Canonical capacity-versus-noise data set");
  add_common(fig1, o);

  auto* validate = app.add_subcommand("validate", "Cross-check transition probabilities by Monte Carlo");
  add_point(validate, o, true);
  validate->add_option("--samples", o.samples)->capture_default_str();
  validate->add_option("--seed", o.seed)->capture_default_str();
  add_common(validate, o);

  std::vector<const char*> argv{"qcap"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  if (sweep_cmd->parsed() && theta_opt->count() == 0 && list_opt->count() == 0) {
    err << "sweep: one of --theta or --theta-list is required\n" << app.help();
    return kUsage;
  }
  if (o.threads > 0) omp_set_num_threads(o.threads);

  try {
    std::string text;
    int code = kOk;
    if (capacity->parsed()) {
      text = cmd_capacity(o);
    } else if (sweep_cmd->parsed()) {
      text = cmd_sweep(o);
    } else if (optimize->parsed()) {
      text = cmd_optimize(o);
    } else if (fig1->parsed()) {
      text = cmd_fig1(o);
    } else {
      bool passed = false;
      text = cmd_validate(o, passed);
      if (!passed) code = kValidation;
    }
    emit(o, text, out);
    return code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerics;
  } catch (const std::domain_error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerics;
  }
}

}  // namespace qcap::cli
