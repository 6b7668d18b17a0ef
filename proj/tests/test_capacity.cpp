#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "qcap/capacity.hpp"

using namespace qcap;

namespace {

TransitionMatrix matrix(double p00, double p11) {
  return TransitionMatrix::from_inside(p00, 1.0 - p11);
}

// Reference maximum of I(p1) on a uniform grid of `points` priors.
double grid_max(const TransitionMatrix& t, int points, double* argmax = nullptr) {
  double best = -1.0;
  for (int i = 0; i < points; ++i) {
    const double p1 = static_cast<double>(i) / (points - 1);
    const double v = mutual_information(t, p1);
    if (v > best) {
      best = v;
      if (argmax) *argmax = p1;
    }
  }
  return best;
}

double h(double p) { return p <= 0.0 || p >= 1.0 ? 0.0 : -p * std::log2(p) - (1 - p) * std::log2(1 - p); }

}  // namespace

TEST_CASE("entropy_term") {
  CHECK(entropy_term(0.0) == 0.0);
  CHECK(entropy_term(1.0) == 0.0);
  CHECK(entropy_term(0.5) == 0.5);
  CHECK_THROWS_AS(entropy_term(-1e-9), std::domain_error);
  CHECK_THROWS_AS(entropy_term(1.5), std::domain_error);
  CHECK_THROWS_AS(entropy_term(std::nan("")), std::domain_error);
}

TEST_CASE("output_entropy") {
  CHECK(output_entropy(matrix(1, 1), 0.5) == 1.0);
  CHECK(output_entropy(matrix(1, 0), 0.3) == 0.0);
  // p00 = 0.9, p11 = 0.7, p1 = 0.4: Pr(Y = 1) = 0.28 + 0.06 = 0.34
  CHECK(output_entropy(matrix(0.9, 0.7), 0.4) ==
        doctest::Approx(0.92481870497303005146).epsilon(1e-14));
}

TEST_CASE("conditional_entropy") {
  for (double p1 : {0.0, 0.2, 0.9}) {
    CHECK(conditional_entropy(matrix(1, 1), p1) == 0.0);
    CHECK(conditional_entropy(matrix(0.5, 0.5), p1) == doctest::Approx(1.0));
  }
  CHECK(conditional_entropy(matrix(0.9, 0.7), 0.4) ==
        doctest::Approx(0.63391371584584576868).epsilon(1e-14));
}

TEST_CASE("optimal_prior closed form") {
  for (double p : {0.1, 0.3, 0.8, 0.99}) {
    const auto prior = optimal_prior(matrix(p, p));
    REQUIRE(prior);
    CHECK(prior->p1_star == doctest::Approx(0.5).epsilon(1e-14));
  }
  const auto noiseless = optimal_prior(matrix(1, 1));
  REQUIRE(noiseless);
  CHECK(noiseless->p1_star == 0.5);
  CHECK(noiseless->wp == 0.5);

  const auto z = optimal_prior(matrix(1, 0.5));
  REQUIRE(z);
  CHECK(z->wp == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(z->p1_star == doctest::Approx(0.4).epsilon(1e-14));
  double argmax = 0.0;
  grid_max(matrix(1, 0.5), 100001, &argmax);
  CHECK(std::abs(argmax - 0.4) <= 1e-5);
}

TEST_CASE("optimal_prior reports degenerate channels") {
  CHECK_FALSE(optimal_prior(matrix(0.5, 0.5)));
  CHECK_FALSE(optimal_prior(matrix(0.3, 0.7)));
  CHECK_FALSE(optimal_prior(matrix(0.0, 1.0)));
}

TEST_CASE("channel_capacity reference channels") {
  const auto perfect = channel_capacity(matrix(1, 1));
  CHECK(perfect.capacity_bits == 1.0);
  CHECK(perfect.method == CapacityMethod::closed_form);

  const auto useless = channel_capacity(matrix(0.5, 0.5));
  CHECK(useless.capacity_bits == 0.0);
  CHECK(useless.p1_star == 0.5);

  const auto z = channel_capacity(matrix(1, 0.5));
  CHECK(std::abs(z.capacity_bits - 0.32192809488736234787) <= 1e-12);
  CHECK(std::abs(grid_max(matrix(1, 0.5), 100001) - z.capacity_bits) <= 1e-9);

  // binary symmetric channel: 1 - h(p)
  const auto bsc = channel_capacity(matrix(0.89, 0.89));
  CHECK(bsc.capacity_bits == doctest::Approx(1.0 - h(0.89)).epsilon(1e-13));
}

TEST_CASE("closed-form prior beats a dense grid on random channels") {
  std::mt19937_64 gen(1234);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int tested = 0;
  while (tested < 200) {
    const double p00 = u(gen);
    const double p11 = u(gen);
    if (std::abs(p00 + p11 - 1.0) < 1e-3) continue;
    ++tested;
    const auto t = matrix(p00, p11);
    const auto c = channel_capacity(t);
    CHECK(c.method == CapacityMethod::closed_form);
    CHECK(c.capacity_bits >= grid_max(t, 10001) - 1e-9);
    CHECK(c.capacity_bits >= 0.0);
    CHECK(c.capacity_bits <= 1.0);
    CHECK(std::abs(maximize_prior_numeric(t) - c.p1_star) <= 1e-4);
  }
}

TEST_CASE("relabelling both symbols mirrors the prior") {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double p00 = u(gen);
    const double p11 = u(gen);
    if (std::abs(p00 + p11 - 1.0) < 1e-3) continue;
    const auto a = channel_capacity(matrix(p00, p11));
    const auto b = channel_capacity(matrix(p11, p00));
    CHECK(a.capacity_bits == doctest::Approx(b.capacity_bits).epsilon(1e-12));
    CHECK(a.p1_star == doctest::Approx(1.0 - b.p1_star).epsilon(1e-10));
  }
}

TEST_CASE("identical columns carry no information") {
  for (double p : {0.0, 0.2, 0.5, 0.97, 1.0}) {
    const auto c = channel_capacity(TransitionMatrix::from_inside(p, p));
    CHECK(std::abs(c.capacity_bits) <= 1e-12);
  }
}

TEST_CASE("numeric maximizer handles a noiseless channel") {
  CHECK(maximize_prior_numeric(matrix(1, 1)) == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(std::string(to_string(CapacityMethod::numeric)) == "numeric");
}
