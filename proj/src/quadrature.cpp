#include "qcap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "qcap/errors.hpp"

namespace qcap::quad {

Rule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      dp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Re-evaluate the derivative at the converged root for the weight.
    double p1 = 1.0;
    double p2 = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
    }
    dp = n * (z * p1 - p2) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

// Newton iteration on the orthonormal Hermite recurrence with the usual
// asymptotic initial guesses for the largest roots.
Rule gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite: n must be positive");
  const double pim4 = 1.0 / std::sqrt(std::sqrt(std::numbers::pi));
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < half; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * rule.nodes[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * rule.nodes[1];
    } else {
      z = 2.0 * z - rule.nodes[i - 2];
    }
    double pp = 0.0;
    bool converged = false;
    for (int iter = 0; iter < 200; ++iter) {
      double p1 = pim4;
      double p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) <= 1e-15 * std::max(1.0, std::abs(z))) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw NumericalError("gauss_hermite: root " + std::to_string(i) + " of " +
                           std::to_string(n) + " did not converge");
    }
    rule.nodes[i] = z;
    rule.nodes[n - 1 - i] = -z;
    rule.weights[i] = 2.0 / (pp * pp);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  // Ascending order.
  for (int i = 0; i < n / 2; ++i) {
    std::swap(rule.nodes[i], rule.nodes[n - 1 - i]);
    std::swap(rule.weights[i], rule.weights[n - 1 - i]);
  }
  return rule;
}

namespace {

const Rule& panel_rule() {
  static const Rule rule = gauss_legendre(15);
  return rule;
}

double apply(const std::function<double(double)>& f, double a, double b) {
  const Rule& rule = panel_rule();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return sum * half;
}

struct Panel {
  double a;
  double b;
  double whole;
};

}  // namespace

AdaptiveResult integrate(const std::function<double(double)>& f, double a, double b,
                         const AdaptiveOptions& opts) {
  if (!(a <= b)) throw std::invalid_argument("integrate: requires a <= b");
  AdaptiveResult result;
  if (a == b) return result;
  const double width = b - a;
  std::vector<Panel> stack;
  stack.push_back({a, b, apply(f, a, b)});
  std::size_t panels = 1;
  while (!stack.empty()) {
    const Panel p = stack.back();
    stack.pop_back();
    const double mid = 0.5 * (p.a + p.b);
    const double left = apply(f, p.a, mid);
    const double right = apply(f, mid, p.b);
    const double refined = left + right;
    const double err = std::abs(refined - p.whole);
    const double budget = opts.abs_tol * (p.b - p.a) / width;
    // Panels that cannot be split further in floating point are accepted.
    if (err <= budget || mid <= p.a || mid >= p.b) {
      result.value += refined;
      result.error_estimate += err;
      continue;
    }
    panels += 2;
    if (panels > opts.max_panels) {
      throw NumericalError("integrate: panel budget of " + std::to_string(opts.max_panels) +
                           " exhausted on [" + std::to_string(a) + ", " + std::to_string(b) +
                           "]");
    }
    stack.push_back({mid, p.b, right});
    stack.push_back({p.a, mid, left});
  }
  result.panels = panels;
  return result;
}

}  // namespace qcap::quad
