#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcap/channel.hpp"
#include "qcap/errors.hpp"

namespace qcap {

namespace {

// The inner sums cancel by roughly 2^n relative to their largest term, so the
// series is carried in 100 decimal digits.
using Real = boost::multiprecision::cpp_bin_float_100;

}  // namespace

SeriesResult p01_series(const ChannelParams& p, int n_terms, double cauchy_tol) {
  p.validate();
  if (n_terms < 1) throw std::invalid_argument("p01_series: n_terms must be >= 1");

  const Real lambda = Real(p.r) * Real(p.r) * exp(Real(-2) * Real(p.tau));
  const Real s = Real(1) + Real(p.sigma) * Real(p.sigma);
  const Real t = Real(p.theta) / sqrt(s);
  const Real pi = boost::math::constants::pi<Real>();
  const Real gauss = exp(-t * t);

  // bracket[m] = H_{2m-1}(0) - e^{-t^2} H_{2m-1}(t); H_odd(0) = 0.
  std::vector<Real> bracket(n_terms + 1);
  bracket[0] = sqrt(pi) / 2 * boost::math::erf(t);
  {
    Real h_prev = 1;   // H_0(t)
    Real h_cur = 2 * t;  // H_1(t)
    for (int m = 1; m <= n_terms; ++m) {
      const int j = 2 * m - 1;  // index of h_cur
      bracket[m] = -gauss * h_cur;
      // advance two steps to H_{j+2}
      Real h_next = 2 * t * h_cur - 2 * j * h_prev;
      h_prev = h_cur;
      h_cur = h_next;
      h_next = 2 * t * h_cur - 2 * (j + 1) * h_prev;
      h_prev = h_cur;
      h_cur = h_next;
    }
  }

  std::vector<Real> inv_factorial(n_terms + 1);
  inv_factorial[0] = 1;
  for (int i = 1; i <= n_terms; ++i) inv_factorial[i] = inv_factorial[i - 1] / i;
  std::vector<Real> pow2(n_terms + 1);
  std::vector<Real> inv_s_pow(n_terms + 1);
  pow2[0] = 1;
  inv_s_pow[0] = 1;
  for (int i = 1; i <= n_terms; ++i) {
    pow2[i] = pow2[i - 1] * 2;
    inv_s_pow[i] = inv_s_pow[i - 1] / s;
  }

  const Real prefactor = 2 / sqrt(pi) * exp(-lambda);
  Real half_lambda_pow = 1;
  Real total = 0;
  Real increment = 0;
  for (int n = 0; n <= n_terms; ++n) {
    Real inner = 0;
    for (int k = 0; k <= n; ++k) {
      const int m = n - k;
      inner += inv_factorial[m] * inv_factorial[m] * pow2[k] * inv_factorial[k] * inv_s_pow[m] *
               bracket[m];
    }
    increment = prefactor * half_lambda_pow * inner;
    total += increment;
    half_lambda_pow *= lambda / 2;
  }

  SeriesResult result;
  result.value = static_cast<double>(total);
  result.terms = n_terms;
  result.last_increment = std::abs(static_cast<double>(increment));
  if (!(result.last_increment <= cauchy_tol)) {
    throw NumericalError("p01_series: not converged after " + std::to_string(n_terms) +
                         " terms (last increment " + std::to_string(result.last_increment) +
                         ")");
  }
  return result;
}

}  // namespace qcap
