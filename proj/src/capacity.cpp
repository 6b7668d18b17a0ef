#include "qcap/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qcap {

namespace {

// Arguments assembled from probabilities can stray from [0, 1] by rounding.
double unit(double z) { return std::clamp(z, 0.0, 1.0); }

double binary_entropy(double p) { return entropy_term(unit(p)) + entropy_term(unit(1.0 - p)); }

}  // namespace

double entropy_term(double z) {
  if (!(z >= 0.0 && z <= 1.0)) {
    throw std::domain_error("entropy_term: argument " + std::to_string(z) + " outside [0, 1]");
  }
  if (z == 0.0) return 0.0;
  return -z * std::log2(z);
}

double output_entropy(const TransitionMatrix& t, double p1) {
  const double one = t.p11 * p1 + (1.0 - t.p00) * (1.0 - p1);
  const double zero = (1.0 - t.p11) * p1 + t.p00 * (1.0 - p1);
  return entropy_term(unit(one)) + entropy_term(unit(zero));
}

double conditional_entropy(const TransitionMatrix& t, double p1) {
  return (1.0 - p1) * binary_entropy(t.p00) + p1 * binary_entropy(t.p11);
}

double mutual_information(const TransitionMatrix& t, double p1) {
  return output_entropy(t, p1) - conditional_entropy(t, p1);
}

std::optional<OptimalPrior> optimal_prior(const TransitionMatrix& t) {
  const double det = t.p00 + t.p11 - 1.0;
  if (std::abs(det) < kDegeneracyThreshold) return std::nullopt;
  const double exponent =
      std::numbers::ln2 * (binary_entropy(t.p00) - binary_entropy(t.p11)) / det;
  OptimalPrior out;
  out.wp = 1.0 / (1.0 + std::exp(exponent));
  const double raw = (t.p00 - out.wp) / det;
  out.p1_star = std::clamp(raw, 0.0, 1.0);
  out.clamped = !(raw >= 0.0 && raw <= 1.0);
  return out;
}

const char* to_string(CapacityMethod m) {
  return m == CapacityMethod::closed_form ? "closed_form" : "numeric";
}

double maximize_prior_numeric(const TransitionMatrix& t, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0;
  double b = 1.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = mutual_information(t, c);
  double fd = mutual_information(t, d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = mutual_information(t, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = mutual_information(t, d);
    }
  }
  // The endpoints are candidates too: I(p1) is concave but may peak at 0 or 1.
  double best = 0.5 * (a + b);
  double best_val = mutual_information(t, best);
  for (double edge : {0.0, 1.0}) {
    const double v = mutual_information(t, edge);
    if (v > best_val) {
      best = edge;
      best_val = v;
    }
  }
  return best;
}

CapacityResult channel_capacity(const TransitionMatrix& t) {
  CapacityResult out;
  const auto prior = optimal_prior(t);
  if (!prior) {
    out.method = CapacityMethod::numeric;
    return out;
  }
  out.wp = prior->wp;
  double p1 = prior->p1_star;
  double info = mutual_information(t, p1);
  if (prior->clamped || !std::isfinite(info)) {
    p1 = maximize_prior_numeric(t);
    info = mutual_information(t, p1);
    out.method = CapacityMethod::numeric;
  }
  out.p1_star = p1;
  out.capacity_bits = std::clamp(info, 0.0, 1.0);
  return out;
}

}  // namespace qcap
