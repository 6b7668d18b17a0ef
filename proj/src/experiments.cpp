#include "qcap/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

#include "qcap/errors.hpp"

namespace qcap {

namespace {

std::string point_label(double theta, double sigma) {
  std::ostringstream os;
  os.precision(17);
  os << "(theta=" << theta << ", sigma=" << sigma << ")";
  return os.str();
}

SweepRow evaluate_labelled(const SweepSpec& spec, std::size_t index) {
  const std::size_t n_sigma = spec.sigma_grid.size();
  const double theta = spec.theta_list[index / n_sigma];
  const double sigma = spec.sigma_grid[index % n_sigma];
  try {
    return evaluate_point(spec.base, theta, sigma, spec.cfg);
  } catch (const NumericalError& e) {
    throw NumericalError(std::string(e.what()) + " at " + point_label(theta, sigma));
  }
}

double capacity_at(const ChannelParams& base, double sigma, const NumericsConfig& cfg) {
  return evaluate_point(base, base.theta, sigma, cfg).capacity_bits;
}

}  // namespace

void SweepSpec::validate() const {
  base.validate();
  cfg.validate();
  if (sigma_grid.empty() || theta_list.empty()) {
    throw std::invalid_argument("SweepSpec: sigma grid and theta list must be non-empty");
  }
  for (std::size_t i = 0; i < sigma_grid.size(); ++i) {
    if (!(sigma_grid[i] >= 0.0) || !std::isfinite(sigma_grid[i])) {
      throw std::invalid_argument("SweepSpec: sigma values must be finite and >= 0");
    }
    if (i > 0 && !(sigma_grid[i] > sigma_grid[i - 1])) {
      throw std::invalid_argument("SweepSpec: sigma grid must be strictly increasing");
    }
  }
  for (double theta : theta_list) {
    if (!(theta >= 0.0)) throw std::invalid_argument("SweepSpec: theta values must be >= 0");
  }
}

std::vector<double> affine_grid(double lo, double hi, int steps) {
  if (steps < 1) throw std::invalid_argument("affine_grid: steps must be >= 1");
  if (steps == 1) return {lo};
  std::vector<double> grid(steps);
  for (int i = 0; i < steps; ++i) grid[i] = lo + i * (hi - lo) / (steps - 1);
  grid.back() = hi;
  return grid;
}

SweepRow evaluate_point(const ChannelParams& base, double theta, double sigma,
                        const NumericsConfig& cfg) {
  ChannelParams p = base;
  p.theta = theta;
  p.sigma = sigma;
  const TransitionMatrix t = transition_matrix(p, cfg);
  const CapacityResult c = channel_capacity(t);
  return {theta, sigma, t.p00, t.p01, c.p1_star, c.capacity_bits};
}

std::vector<SweepRow> sweep_serial(const SweepSpec& spec) {
  spec.validate();
  const std::size_t total = spec.theta_list.size() * spec.sigma_grid.size();
  std::vector<SweepRow> rows(total);
  for (std::size_t i = 0; i < total; ++i) rows[i] = evaluate_labelled(spec, i);
  return rows;
}

std::vector<SweepRow> sweep(const SweepSpec& spec) {
  spec.validate();
  const std::size_t total = spec.theta_list.size() * spec.sigma_grid.size();
  std::vector<SweepRow> rows(total);
  std::string failure;
  std::size_t failed_index = total;
  const auto n = static_cast<std::int64_t>(total);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      rows[idx] = evaluate_labelled(spec, idx);
    } catch (const NumericalError& e) {
      // Report the first failing point in row order, whatever the schedule.
#pragma omp critical(qcap_sweep_failure)
      if (idx < failed_index) {
        failed_index = idx;
        failure = e.what();
      }
    }
  }
  if (failed_index < total) throw NumericalError(failure);
  return rows;
}

NoiseOptimum optimal_sigma(const ChannelParams& base, double sigma_lo, double sigma_hi,
                           const NumericsConfig& cfg, int grid_points) {
  base.validate();
  if (!(sigma_lo >= 0.0 && sigma_lo < sigma_hi) || !std::isfinite(sigma_hi)) {
    throw std::invalid_argument("optimal_sigma: requires 0 <= sigma_lo < sigma_hi");
  }
  if (grid_points < 50) throw std::invalid_argument("optimal_sigma: at least 50 grid points");

  SweepSpec spec{base, affine_grid(sigma_lo, sigma_hi, grid_points), {base.theta}, cfg};
  const auto rows = sweep(spec);
  std::size_t best = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].capacity_bits > rows[best].capacity_bits + kCapacityResolution) best = i;
  }

  NoiseOptimum out{rows[best].sigma, rows[best].capacity_bits, false};
  double a = rows[best == 0 ? 0 : best - 1].sigma;
  double b = rows[std::min(best + 1, rows.size() - 1)].sigma;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = capacity_at(base, c, cfg);
  double fd = capacity_at(base, d, cfg);
  while (b - a > kSigmaTolerance) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = capacity_at(base, c, cfg);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = capacity_at(base, d, cfg);
    }
  }
  const double refined = 0.5 * (a + b);
  const double refined_cap = capacity_at(base, refined, cfg);
  if (refined_cap > out.capacity_at_star + kCapacityResolution) {
    out.sigma_star = refined;
    out.capacity_at_star = refined_cap;
  }
  out.at_boundary = out.sigma_star - sigma_lo < kSigmaTolerance ||
                    sigma_hi - out.sigma_star < kSigmaTolerance;
  return out;
}

SweepSpec fig1_spec(const NumericsConfig& cfg) {
  SweepSpec spec;
  spec.base = ChannelParams{5.0, 0.5, 3.6, 0.0};
  spec.theta_list = {3.6, 3.8, 4.0, 4.2};
  spec.sigma_grid = affine_grid(0.0, 3.0, 61);
  spec.cfg = cfg;
  return spec;
}

std::vector<SweepRow> fig1_dataset(const NumericsConfig& cfg) { return sweep(fig1_spec(cfg)); }

}  // namespace qcap
