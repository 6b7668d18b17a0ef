#pragma once

#include <optional>

#include "qcap/channel.hpp"

namespace qcap {

// -z log2(z), continuously extended by 0 at z = 0. Throws
// std::domain_error outside [0, 1].
double entropy_term(double z);

// H(Y) in bits for input prior Pr(X = 1) = p1.
double output_entropy(const TransitionMatrix& t, double p1);

// H(Y|X) in bits.
double conditional_entropy(const TransitionMatrix& t, double p1);

// I(X;Y) = H(Y) - H(Y|X) in bits.
double mutual_information(const TransitionMatrix& t, double p1);

struct OptimalPrior {
  double p1_star = 0.5;  // clamped to [0, 1]
  double wp = 0.5;       // auxiliary quantity of the closed form
  bool clamped = false;  // the unclamped closed form fell outside [0, 1]
};

// |p00 + p11 - 1| below this marks a channel whose columns coincide.
inline constexpr double kDegeneracyThreshold = 1e-12;

// Closed-form maximizer of I(X;Y) over the input prior. Returns nullopt for
// a degenerate channel (identical output laws for both inputs).
std::optional<OptimalPrior> optimal_prior(const TransitionMatrix& t);

enum class CapacityMethod { closed_form, numeric };

const char* to_string(CapacityMethod m);

struct CapacityResult {
  double p1_star = 0.5;
  double wp = 0.5;
  double capacity_bits = 0.0;
  CapacityMethod method = CapacityMethod::closed_form;
};

// Golden-section maximization of I(X;Y) over p1 in [0, 1].
double maximize_prior_numeric(const TransitionMatrix& t, double tol = 1e-10);

// Capacity in bits. Uses the closed-form prior when it applies and falls
// back to golden-section search when the closed form clamps; a degenerate
// channel reports C = 0 at p1 = 1/2.
CapacityResult channel_capacity(const TransitionMatrix& t);

}  // namespace qcap
