#pragma once

#include "qcap/quadist.hpp"

namespace qcap {

struct ChannelParams {
  double r = 5.0;      // coherent amplitude carrying symbol 1
  double tau = 0.5;    // amplitude damping, r -> r e^{-tau}
  double theta = 4.0;  // decoding threshold on |y|
  double sigma = 0.0;  // width of the detector-noise kernel

  // Throws std::invalid_argument unless r > 0 and tau, theta, sigma >= 0.
  void validate() const;
  // Mean photon number of symbol 1 at the receiver.
  double received_mean() const;
};

// p_ij = Pr(output i | input j). Output 0 means |y| < theta.
struct TransitionMatrix {
  double p00 = 1.0;
  double p01 = 0.0;
  double p10 = 0.0;
  double p11 = 1.0;

  static TransitionMatrix from_inside(double p00, double p01) {
    return {p00, p01, 1.0 - p00, 1.0 - p01};
  }
};

// Mean photon number of the state prepared for `bit`: vacuum for 0, r^2 for 1.
double encode(int bit, double r);

// Mean photon number after amplitude damping: lambda e^{-2 tau}.
double damp(double lambda, double tau);

// p00 from the closed form erf(theta / sqrt(1 + sigma^2)); p01 by adaptive
// quadrature of the damped, smeared symbol-1 density over (-theta, theta).
// Thresholds at or beyond the integration cutoff put all mass inside the
// acceptance interval, so p00 = p01 = 1.
TransitionMatrix transition_matrix(const ChannelParams& p, const NumericsConfig& cfg);

struct SeriesResult {
  double value = 0.0;
  int terms = 0;               // outer index reached
  double last_increment = 0.0; // |S_n - S_{n-1}| at the final term
};

// p01 from the explicit double series in odd Hermite polynomials at the
// scaled threshold, summed through outer index n_terms in extended precision.
// The m = 0 term uses the antiderivative convention
//   H_{-1}(0) = 0,  e^{-t^2} H_{-1}(t) = -(sqrt(pi)/2) erf(t),
// so the series collapses to erf(theta / sqrt(1 + sigma^2)) for the vacuum.
// Throws qcap::NumericalError when the final outer increment exceeds
// cauchy_tol (the partial sums have not settled).
SeriesResult p01_series(const ChannelParams& p, int n_terms, double cauchy_tol = 1e-13);

}  // namespace qcap
