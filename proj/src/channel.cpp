#include "qcap/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace qcap {

void ChannelParams::validate() const {
  if (!(std::isfinite(r) && r > 0.0)) throw std::invalid_argument("ChannelParams: r must be > 0");
  if (!(std::isfinite(tau) && tau >= 0.0)) {
    throw std::invalid_argument("ChannelParams: tau must be >= 0");
  }
  if (!(theta >= 0.0) || std::isnan(theta)) {
    throw std::invalid_argument("ChannelParams: theta must be >= 0");
  }
  if (!(std::isfinite(sigma) && sigma >= 0.0)) {
    throw std::invalid_argument("ChannelParams: sigma must be >= 0");
  }
}

double ChannelParams::received_mean() const { return damp(encode(1, r), tau); }

double encode(int bit, double r) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("encode: bit must be 0 or 1");
  if (!(r > 0.0)) throw std::invalid_argument("encode: r must be > 0");
  return bit == 0 ? 0.0 : r * r;
}

double damp(double lambda, double tau) {
  if (!(lambda >= 0.0) || !(tau >= 0.0)) {
    throw std::invalid_argument("damp: lambda and tau must be >= 0");
  }
  return lambda * std::exp(-2.0 * tau);
}

TransitionMatrix transition_matrix(const ChannelParams& p, const NumericsConfig& cfg) {
  p.validate();
  const SignalDensity signal(p.received_mean(), p.sigma, cfg);
  if (p.theta >= signal.y_max()) return TransitionMatrix::from_inside(1.0, 1.0);
  const double p00 = specfn::erf(p.theta / std::sqrt(1.0 + p.sigma * p.sigma));
  const double p01 = interval_probability(signal, -p.theta, p.theta, cfg);
  return TransitionMatrix::from_inside(p00, p01);
}

}  // namespace qcap
