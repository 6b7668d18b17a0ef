#pragma once

#include <vector>

#include "qcap/capacity.hpp"
#include "qcap/channel.hpp"

namespace qcap {

struct SweepSpec {
  ChannelParams base;               // r and tau are taken from here
  std::vector<double> sigma_grid;   // strictly increasing
  std::vector<double> theta_list;
  NumericsConfig cfg;

  void validate() const;
};

struct SweepRow {
  double theta = 0.0;
  double sigma = 0.0;
  double p00 = 0.0;
  double p01 = 0.0;
  double p1_star = 0.5;
  double capacity_bits = 0.0;

  bool operator==(const SweepRow&) const = default;
};

// steps points from lo to hi inclusive, lo + i (hi - lo) / (steps - 1).
std::vector<double> affine_grid(double lo, double hi, int steps);

// Transition matrix and capacity at one (theta, sigma).
SweepRow evaluate_point(const ChannelParams& base, double theta, double sigma,
                        const NumericsConfig& cfg);

// Rows ordered theta-major, sigma-minor. Grid points are evaluated in
// parallel; a failing point is reported as qcap::NumericalError naming its
// (theta, sigma).
std::vector<SweepRow> sweep(const SweepSpec& spec);

// Single-threaded reference for sweep; bit-identical rows.
std::vector<SweepRow> sweep_serial(const SweepSpec& spec);

struct NoiseOptimum {
  double sigma_star = 0.0;
  double capacity_at_star = 0.0;
  bool at_boundary = false;  // maximum sits at sigma_lo or sigma_hi
};

inline constexpr double kSigmaTolerance = 1e-4;
// Capacity differences below this are treated as ties (well under the
// quadrature tolerance); ties resolve toward the smaller sigma.
inline constexpr double kCapacityResolution = 1e-12;

// Coarse scan over grid_points sigmas followed by golden-section refinement
// between the neighbours of the best grid point. The result is never worse
// than the best grid point.
NoiseOptimum optimal_sigma(const ChannelParams& base, double sigma_lo, double sigma_hi,
                           const NumericsConfig& cfg, int grid_points = 101);

// Canonical capacity-versus-noise data set: r = 5, tau = 0.5,
// theta in {3.6, 3.8, 4.0, 4.2}, sigma from 0 to 3 in steps of 0.05.
SweepSpec fig1_spec(const NumericsConfig& cfg);
std::vector<SweepRow> fig1_dataset(const NumericsConfig& cfg);

}  // namespace qcap
