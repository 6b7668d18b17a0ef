#include "qcap/oracle_mc.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qcap/errors.hpp"

namespace qcap::mc {

namespace {

// psi_n(y)^2 from the normalized Hermite recurrence in long double. Kept
// separate from the library's density code on purpose.
double fock_density_ld(int n, double y) {
  const long double x = y;
  long double h_prev = 0.0L;
  long double h = 1.0L;  // H_k(x) / sqrt(2^k k!)
  long double log_scale = 0.0L;
  for (int k = 1; k <= n; ++k) {
    const long double next = (std::sqrt(2.0L / k) * x) * h - std::sqrt((k - 1.0L) / k) * h_prev;
    h_prev = h;
    h = next;
    if (std::fabs(h) > 1e300L) {
      h /= 1e300L;
      h_prev /= 1e300L;
      log_scale += std::log(1e300L);
    }
  }
  if (h == 0.0L) return 0.0;
  const long double log_val = 2.0L * (std::log(std::fabs(h)) + log_scale) - x * x -
                              0.5L * std::log(std::numbers::pi_v<long double>);
  return static_cast<double>(std::exp(log_val));
}

double locate_maximum(int n, double half_width) {
  constexpr int kGrid = 8000;
  const double step = 2.0 * half_width / kGrid;
  int best = 0;
  double best_val = -1.0;
  for (int i = 0; i <= kGrid; ++i) {
    const double v = fock_density_ld(n, -half_width + i * step);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  // Golden-section polish inside the bracketing grid cells.
  double a = -half_width + (best - 1) * step;
  double b = -half_width + (best + 1) * step;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int iter = 0; iter < 80; ++iter) {
    const double c = b - inv_phi * (b - a);
    const double d = a + inv_phi * (b - a);
    if (fock_density_ld(n, c) >= fock_density_ld(n, d)) {
      b = d;
    } else {
      a = c;
    }
  }
  return std::max(best_val, fock_density_ld(n, 0.5 * (a + b)));
}

constexpr double kMaxPoissonMean = 500.0;

// Samplers for every photon number with appreciable probability are built up
// front; the rare larger draw gets a temporary sampler.
class SamplerBank {
 public:
  explicit SamplerBank(double mean) {
    const int cap = static_cast<int>(mean + 12.0 * std::sqrt(mean) + 30.0);
    samplers_.reserve(cap + 1);
    for (int n = 0; n <= cap; ++n) samplers_.emplace_back(n);
  }

  double draw(int n, SampleRng& rng) const {
    if (n < static_cast<int>(samplers_.size())) return samplers_[n](rng);
    return FockQuadratureSampler(n)(rng);
  }

 private:
  std::vector<FockQuadratureSampler> samplers_;
};

bool sample_inside(const SamplerBank& bank, double mean, const ChannelParams& p,
                   std::uint64_t seed, std::uint32_t stream, std::uint64_t index) {
  SampleRng rng(seed, stream, index);
  const int photons = mean > 0.0 ? sample_poisson(mean, rng) : 0;
  const double y = bank.draw(photons, rng) + p.sigma / std::numbers::sqrt2 * rng.normal();
  return std::abs(y) < p.theta;
}

McEstimate make_estimate(std::size_t inside, std::size_t n, std::uint64_t seed) {
  McEstimate e;
  e.n_samples = n;
  e.seed = seed;
  e.p_hat = static_cast<double>(inside) / static_cast<double>(n);
  e.std_err = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(n));
  return e;
}

void check_inputs(const ChannelParams& p, std::size_t n_samples) {
  p.validate();
  if (n_samples < kMinSamples) {
    throw std::invalid_argument("estimate_transition: at least " + std::to_string(kMinSamples) +
                                " samples required");
  }
  if (p.received_mean() > kMaxPoissonMean) {
    throw std::invalid_argument("estimate_transition: received mean photon number above " +
                                std::to_string(kMaxPoissonMean));
  }
}

}  // namespace

FockQuadratureSampler::FockQuadratureSampler(int n)
    : n_(n), half_width_(std::sqrt(2.0 * n + 1.0) + 4.0), envelope_(0.0) {
  if (n < 0) throw std::invalid_argument("FockQuadratureSampler: negative photon number");
  envelope_ = 1.1 * locate_maximum(n, half_width_);
}

double FockQuadratureSampler::density(double y) const { return fock_density_ld(n_, y); }

double FockQuadratureSampler::operator()(SampleRng& rng) const {
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const double y = half_width_ * (2.0 * rng.uniform() - 1.0);
    if (rng.uniform() * envelope_ < density(y)) return y;
  }
  throw NumericalError("FockQuadratureSampler: rejection budget exhausted for n = " +
                       std::to_string(n_));
}

double sample_fock_quadrature(int n, SampleRng& rng) { return FockQuadratureSampler(n)(rng); }

int sample_poisson(double mean, SampleRng& rng) {
  if (!(mean >= 0.0 && mean <= kMaxPoissonMean)) {
    throw std::invalid_argument("sample_poisson: mean outside [0, 500]");
  }
  const double u = rng.uniform();
  double term = std::exp(-mean);
  double cdf = term;
  int k = 0;
  // Guard against u landing in the rounding gap at the top of the CDF.
  while (u > cdf && term > 0.0) {
    ++k;
    term *= mean / k;
    cdf += term;
  }
  return k;
}

TransitionEstimate estimate_transition_serial(const ChannelParams& p, std::size_t n_samples,
                                              std::uint64_t seed) {
  check_inputs(p, n_samples);
  const double mean = p.received_mean();
  const SamplerBank bank(mean);
  std::size_t inside0 = 0;
  std::size_t inside1 = 0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    inside0 += sample_inside(bank, 0.0, p, seed, 0, i) ? 1 : 0;
    inside1 += sample_inside(bank, mean, p, seed, 1, i) ? 1 : 0;
  }
  return {make_estimate(inside0, n_samples, seed), make_estimate(inside1, n_samples, seed)};
}

TransitionEstimate estimate_transition(const ChannelParams& p, std::size_t n_samples,
                                       std::uint64_t seed) {
  check_inputs(p, n_samples);
  const double mean = p.received_mean();
  const SamplerBank bank(mean);
  const auto n = static_cast<std::int64_t>(n_samples);
  std::size_t inside0 = 0;
  std::size_t inside1 = 0;
  std::string failure;
  // Counts are integers, so the reduction order cannot change the result.
#pragma omp parallel for schedule(static) reduction(+ : inside0, inside1)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    try {
      inside0 += sample_inside(bank, 0.0, p, seed, 0, idx) ? 1 : 0;
      inside1 += sample_inside(bank, mean, p, seed, 1, idx) ? 1 : 0;
    } catch (const NumericalError& e) {
#pragma omp critical(qcap_mc_failure)
      if (failure.empty()) failure = e.what();
    }
  }
  if (!failure.empty()) throw NumericalError(failure);
  return {make_estimate(inside0, n_samples, seed), make_estimate(inside1, n_samples, seed)};
}

}  // namespace qcap::mc
