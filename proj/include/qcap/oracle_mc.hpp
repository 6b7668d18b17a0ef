#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qcap/channel.hpp"
#include "qcap/philox.hpp"

namespace qcap::mc {

struct McEstimate {
  double p_hat = 0.0;
  double std_err = 0.0;  // sqrt(p_hat (1 - p_hat) / n_samples)
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
};

// Rejection sampler for the quadrature density of Fock state |n>, with a
// uniform envelope over [-(sqrt(2n+1)+4), sqrt(2n+1)+4] at 1.1 times the
// numerically located density maximum.
class FockQuadratureSampler {
 public:
  explicit FockQuadratureSampler(int n);

  int n() const { return n_; }
  double half_width() const { return half_width_; }
  double envelope() const { return envelope_; }
  // Density the sampler targets, evaluated independently of the library's
  // density code.
  double density(double y) const;

  // Throws qcap::NumericalError after kMaxAttempts rejections in a row.
  double operator()(SampleRng& rng) const;

  static constexpr int kMaxAttempts = 1'000'000;

 private:
  int n_;
  double half_width_;
  double envelope_;
};

double sample_fock_quadrature(int n, SampleRng& rng);

// Inversion sampler; mean must lie in [0, 500].
int sample_poisson(double mean, SampleRng& rng);

struct TransitionEstimate {
  McEstimate p00;
  McEstimate p01;
};

inline constexpr std::size_t kMinSamples = 1000;

// Event-by-event simulation of both symbols: photon number, quadrature
// outcome, detector noise of variance sigma^2 / 2, threshold. Sample i of
// symbol j draws from Philox stream (seed, j, i), so the estimate does not
// depend on the number of OpenMP threads.
TransitionEstimate estimate_transition(const ChannelParams& p, std::size_t n_samples,
                                       std::uint64_t seed);

// Single-threaded reference for estimate_transition; bit-identical results.
TransitionEstimate estimate_transition_serial(const ChannelParams& p, std::size_t n_samples,
                                              std::uint64_t seed);

}  // namespace qcap::mc
