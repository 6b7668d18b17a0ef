#include "qcap/quadist.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qcap {

namespace {

constexpr double kRescale = 1e150;

// sum_n w_n psi_n(y)^2 in a single Hermite-function recurrence. The running
// sum is carried in the same rescaled units as the recurrence.
double mixture_density(const std::vector<double>& w, double y) {
  double log_scale = -y * y;  // applies to squared quantities
  double prev = 1.0 / std::sqrt(std::sqrt(std::numbers::pi));
  double sum = w[0] * prev * prev;
  if (w.size() > 1) {
    double cur = std::numbers::sqrt2 * y * prev;
    sum += w[1] * cur * cur;
    for (std::size_t k = 2; k < w.size(); ++k) {
      const double kk = static_cast<double>(k);
      const double next = y * std::sqrt(2.0 / kk) * cur - std::sqrt((kk - 1.0) / kk) * prev;
      prev = cur;
      cur = next;
      if (std::abs(cur) > kRescale) {
        cur /= kRescale;
        prev /= kRescale;
        sum /= kRescale * kRescale;
        log_scale += 2.0 * std::log(kRescale);
      }
      sum += w[k] * cur * cur;
    }
  }
  if (sum == 0.0) return 0.0;
  return std::exp(std::log(sum) + log_scale);
}

}  // namespace

void NumericsConfig::validate() const {
  const auto ok = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!ok(tail_tol) || tail_tol >= 1.0) {
    throw std::invalid_argument("NumericsConfig: tail_tol must lie in (0, 1)");
  }
  if (!ok(quad_tol)) throw std::invalid_argument("NumericsConfig: quad_tol must be positive");
  if (!ok(y_max)) throw std::invalid_argument("NumericsConfig: y_max must be positive");
  if (max_panels < 1) throw std::invalid_argument("NumericsConfig: max_panels must be positive");
}

double integration_cutoff(const NumericsConfig& cfg, int n_max, double sigma) {
  const double turning = std::sqrt(2.0 * n_max + 1.0);
  return std::max(cfg.y_max, turning + 6.0 * std::max(1.0, sigma));
}

double fock_density(int n, double y) {
  const double psi = specfn::hermite_function(n, y);
  return psi * psi;
}

double damped_density(double lambda, double y, const NumericsConfig& cfg) {
  const auto pw = specfn::poisson_weights(lambda, cfg.tail_tol);
  return mixture_density(pw.weights, y);
}

SignalDensity::SignalDensity(double lambda, double sigma, const NumericsConfig& cfg)
    : sigma_(sigma) {
  cfg.validate();
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("SignalDensity: sigma must be finite and non-negative");
  }
  weights_ = specfn::poisson_weights(lambda, cfg.tail_tol);
  y_max_ = integration_cutoff(cfg, weights_.n_max, sigma);
  if (sigma > 0.0) hermite_rule_ = quad::gauss_hermite(weights_.n_max + 8);
}

double SignalDensity::damped(double y) const { return mixture_density(weights_.weights, y); }

// With y' = y - sigma u the kernel becomes exp(-u^2)/sqrt(pi), and
// u^2 + y'^2 = (1 + sigma^2)(u - u0)^2 + y^2 / (1 + sigma^2). Substituting
// v = sqrt(1 + sigma^2)(u - u0) leaves a polynomial against exp(-v^2).
double SignalDensity::operator()(double y) const {
  if (sigma_ == 0.0) return damped(y);
  const double s2 = 1.0 + sigma_ * sigma_;
  const double s = std::sqrt(s2);
  const double u0 = y * sigma_ / s2;
  double sum = 0.0;
  for (std::size_t i = 0; i < hermite_rule_.nodes.size(); ++i) {
    const double v = hermite_rule_.nodes[i];
    const double u = u0 + v / s;
    const double d = damped(y - sigma_ * u);
    if (d == 0.0) continue;
    sum += hermite_rule_.weights[i] * std::exp(v * v - u * u) * d;
  }
  return sum / (std::sqrt(std::numbers::pi) * s);
}

double smeared_density(const SignalDensity& sd, double y) { return sd(y); }

double interval_probability(const SignalDensity& sd, double a, double b,
                            const NumericsConfig& cfg) {
  if (!(a <= b)) throw std::invalid_argument("interval_probability: requires a <= b");
  const double cut = sd.y_max();
  const double lo = std::clamp(a, -cut, cut);
  const double hi = std::clamp(b, -cut, cut);
  if (lo >= hi) return 0.0;
  const auto f = [&sd](double y) { return sd(y); };
  double p;
  if (lo == -hi) {
    p = 2.0 * quad::integrate(f, 0.0, hi, {.abs_tol = 0.5 * cfg.quad_tol, .max_panels = cfg.max_panels}).value;
  } else {
    p = quad::integrate(f, lo, hi, {.abs_tol = cfg.quad_tol, .max_panels = cfg.max_panels}).value;
  }
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace qcap
