#include "qcap/specfn.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qcap::specfn {

namespace {

constexpr double kRescale = 1e150;
const double kLogRescale = std::log(kRescale);

constexpr int kFactorialTable = 1024;

std::array<double, kFactorialTable> make_log_factorials() {
  std::array<double, kFactorialTable> t{};
  long double acc = 0.0L;
  t[0] = 0.0;
  for (int n = 1; n < kFactorialTable; ++n) {
    acc += std::log(static_cast<long double>(n));
    t[n] = static_cast<double>(acc);
  }
  return t;
}

const std::array<double, kFactorialTable>& log_factorial_table() {
  static const auto table = make_log_factorials();
  return table;
}

}  // namespace

double hermite(int n, double x) {
  if (n < 0) throw std::invalid_argument("hermite: negative degree");
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 2.0 * x;
  for (int m = 2; m <= n; ++m) {
    const double next = 2.0 * x * cur - 2.0 * (m - 1) * prev;
    prev = cur;
    cur = next;
  }
  if (!std::isfinite(cur)) {
    throw std::overflow_error("hermite: H_" + std::to_string(n) + "(" + std::to_string(x) +
                              ") overflows double");
  }
  return cur;
}

// The recurrence runs on psi_k * exp(x^2/2) with periodic rescaling; the
// Gaussian factor and the accumulated scale are applied once at the end in
// log space so neither over- nor underflows on its own.
double hermite_function(int n, double x) {
  if (n < 0) throw std::invalid_argument("hermite_function: negative degree");
  double log_scale = -0.5 * x * x;
  double prev = 1.0 / std::sqrt(std::sqrt(std::numbers::pi));
  double cur = std::numbers::sqrt2 * x * prev;
  if (n == 0) return prev * std::exp(log_scale);
  for (int k = 2; k <= n; ++k) {
    const double next = x * std::sqrt(2.0 / k) * cur - std::sqrt((k - 1.0) / k) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescale) {
      cur /= kRescale;
      prev /= kRescale;
      log_scale += kLogRescale;
    }
  }
  if (cur == 0.0) return 0.0;
  return std::copysign(std::exp(std::log(std::abs(cur)) + log_scale), cur);
}

void hermite_functions(double x, std::vector<double>& out) {
  if (out.empty()) return;
  double log_scale = -0.5 * x * x;
  const auto finish = [&](double v) {
    return v == 0.0 ? 0.0 : std::copysign(std::exp(std::log(std::abs(v)) + log_scale), v);
  };
  double prev = 1.0 / std::sqrt(std::sqrt(std::numbers::pi));
  out[0] = finish(prev);
  if (out.size() == 1) return;
  double cur = std::numbers::sqrt2 * x * prev;
  out[1] = finish(cur);
  for (std::size_t k = 2; k < out.size(); ++k) {
    const double kk = static_cast<double>(k);
    const double next = x * std::sqrt(2.0 / kk) * cur - std::sqrt((kk - 1.0) / kk) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescale) {
      cur /= kRescale;
      prev /= kRescale;
      log_scale += kLogRescale;
    }
    out[k] = finish(cur);
  }
}

// libm's erf is accurate to a few ulp across the real line.
double erf(double x) { return std::erf(x); }

double log_factorial(int n) {
  if (n < 0) throw std::invalid_argument("log_factorial: negative argument");
  if (n < kFactorialTable) return log_factorial_table()[n];
  // Stirling series; the first omitted term is below 1e-20 at n >= 1024.
  const double x = n;
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  return x * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi * x) +
         inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 / 1260.0));
}

PoissonWeights poisson_weights(double mean, double tail_tol) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw std::invalid_argument("poisson_weights: mean must be finite and non-negative");
  }
  if (!(tail_tol > 0.0 && tail_tol < 1.0)) {
    throw std::invalid_argument("poisson_weights: tail_tol must lie in (0, 1)");
  }
  PoissonWeights pw;
  pw.mean = mean;
  if (mean == 0.0) {
    pw.weights = {1.0};
    return pw;
  }
  const double log_mean = std::log(mean);
  long double mass = 0.0L;
  for (int n = 0;; ++n) {
    const double w = std::exp(-mean + n * log_mean - log_factorial(n));
    pw.weights.push_back(w);
    mass += w;
    if (mass >= 1.0L - tail_tol) break;
    // Past the mode the tail is dominated by a geometric series; this only
    // triggers when tail_tol sits below the rounding of the running sum.
    const double ratio = mean / (n + 1.0);
    if (ratio < 1.0 && w * ratio / (1.0 - ratio) < 1e-3 * tail_tol) break;
  }
  pw.n_max = static_cast<int>(pw.weights.size()) - 1;
  return pw;
}

}  // namespace qcap::specfn
