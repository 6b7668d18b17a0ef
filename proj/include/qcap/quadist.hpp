#pragma once

#include <cstddef>

#include "qcap/quadrature.hpp"
#include "qcap/specfn.hpp"

namespace qcap {

struct NumericsConfig {
  double tail_tol = 1e-12;  // Poisson truncation mass
  double quad_tol = 1e-10;  // absolute tolerance of interval integrals
  double y_max = 40.0;      // lower bound on the cutoff of integrals over the real line
  std::size_t max_panels = 1'000'000;  // subdivision budget of the adaptive rule

  // Throws std::invalid_argument unless every field is finite and positive
  // and tail_tol < 1.
  void validate() const;
};

// Cutoff actually used for improper integrals: at least cfg.y_max and never
// below the classical turning point of the highest retained Fock state plus
// six noise widths.
double integration_cutoff(const NumericsConfig& cfg, int n_max, double sigma);

// Quadrature density of the Fock state |n>: psi_n(y)^2.
double fock_density(int n, double y);

// Quadrature density of a dephased coherent state with mean photon number
// lambda, as the Poisson mixture of Fock densities truncated per cfg.tail_tol.
double damped_density(double lambda, double y, const NumericsConfig& cfg);

// Outcome density of a noisy quadrature measurement on a dephased coherent
// state: the Poisson-Fock mixture convolved with the Gaussian kernel
// exp(-(y - y')^2 / sigma^2) / sqrt(pi sigma^2) (variance sigma^2 / 2).
//
// The mixture truncated at n_max is exp(-y'^2) times an even polynomial of
// degree 2 n_max, so the convolution is computed exactly by a Gauss-Hermite
// rule with more than n_max nodes after completing the square in the
// integration variable.
class SignalDensity {
 public:
  SignalDensity(double lambda, double sigma, const NumericsConfig& cfg);

  double lambda() const { return weights_.mean; }
  double sigma() const { return sigma_; }
  const specfn::PoissonWeights& weights() const { return weights_; }
  // Effective cutoff for integrals over the real line.
  double y_max() const { return y_max_; }

  // Density before detector noise.
  double damped(double y) const;
  // Density after detector noise; equals damped(y) when sigma == 0.
  double operator()(double y) const;

 private:
  specfn::PoissonWeights weights_;
  double sigma_;
  double y_max_;
  quad::Rule hermite_rule_;
};

double smeared_density(const SignalDensity& sd, double y);

// Integral of the smeared density over [a, b], clipped to the cutoff
// [-y_max, y_max]. Symmetric intervals are folded onto [0, b]. Throws
// qcap::NumericalError when the adaptive rule exhausts its panel budget.
double interval_probability(const SignalDensity& sd, double a, double b,
                            const NumericsConfig& cfg);

}  // namespace qcap
