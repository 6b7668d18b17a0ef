#pragma once

#include <cstddef>
#include <vector>

namespace qcap::specfn {

// Physicists' Hermite polynomial H_n(x) by the three-term recurrence.
// Throws std::overflow_error when the value is not representable as a double.
double hermite(int n, double x);

// Orthonormal Hermite function psi_n(x) = H_n(x) exp(-x^2/2) / sqrt(2^n n! sqrt(pi)).
// Evaluated with a rescaled recurrence, so it stays finite for any n and
// underflows smoothly to zero far outside the classical turning point.
double hermite_function(int n, double x);

// Fills out[k] = psi_k(x) for k = 0..out.size()-1 in one recurrence pass.
void hermite_functions(double x, std::vector<double>& out);

double erf(double x);

// ln(n!).
double log_factorial(int n);

// Poisson photon-number law truncated on cumulative mass.
struct PoissonWeights {
  double mean = 0.0;
  std::vector<double> weights;  // weights[n] = e^{-mean} mean^n / n!
  int n_max = 0;
};

// Smallest truncation whose cumulative mass is at least 1 - tail_tol.
PoissonWeights poisson_weights(double mean, double tail_tol);

}  // namespace qcap::specfn
