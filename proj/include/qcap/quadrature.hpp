#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace qcap::quad {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [-1, 1].
Rule gauss_legendre(int n);

// n-point Gauss-Hermite rule for weight exp(-x^2) on the real line.
Rule gauss_hermite(int n);

struct AdaptiveOptions {
  double abs_tol = 1e-10;
  std::size_t max_panels = 1'000'000;
};

struct AdaptiveResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t panels = 0;
};

// Adaptive bisection with a 15-point Gauss-Legendre rule per panel: a panel is
// accepted when the rule on the panel and on its two halves agree to within
// the panel's share (by width) of abs_tol. Throws qcap::NumericalError when
// the panel budget is exhausted.
AdaptiveResult integrate(const std::function<double(double)>& f, double a, double b,
                         const AdaptiveOptions& opts = {});

}  // namespace qcap::quad
