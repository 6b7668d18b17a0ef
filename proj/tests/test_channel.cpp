#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qcap/capacity.hpp"
#include "qcap/channel.hpp"
#include "qcap/errors.hpp"

using namespace qcap;

TEST_CASE("encode and damp") {
  CHECK(encode(0, 5.0) == 0.0);
  CHECK(encode(1, 5.0) == 25.0);
  CHECK(encode(1, 1.0) == 1.0);
  CHECK_THROWS_AS(encode(2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(encode(1, 0.0), std::invalid_argument);

  CHECK(damp(25.0, 0.5) == doctest::Approx(9.196986029286058).epsilon(1e-15));
  CHECK(damp(7.0, 0.0) == 7.0);
  CHECK(damp(0.0, 3.0) == 0.0);
  CHECK_THROWS_AS(damp(-1.0, 0.0), std::invalid_argument);
}

TEST_CASE("ChannelParams validation") {
  CHECK_NOTHROW(ChannelParams{5, 0.5, 4.2, 0}.validate());
  CHECK_THROWS_AS((ChannelParams{0, 0.5, 4.2, 0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ChannelParams{1, -0.1, 4.2, 0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ChannelParams{1, 0.1, -1, 0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ChannelParams{1, 0.1, 1, -2}.validate()), std::invalid_argument);
  CHECK(ChannelParams{5, 0.5, 0, 0}.received_mean() == doctest::Approx(25.0 * std::exp(-1.0)));
}

TEST_CASE("transition matrix rows sum to one exactly") {
  const NumericsConfig cfg;
  for (double theta : {0.0, 1.0, 3.6, 4.2}) {
    for (double sigma : {0.0, 1.0}) {
      const auto t = transition_matrix({5, 0.5, theta, sigma}, cfg);
      CHECK(t.p00 + t.p10 == 1.0);
      CHECK(t.p01 + t.p11 == 1.0);
      for (double p : {t.p00, t.p01, t.p10, t.p11}) {
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
      }
    }
  }
}

TEST_CASE("transition matrix edge thresholds") {
  const NumericsConfig cfg;
  const auto closed = transition_matrix({5, 0.5, 0.0, 1.0}, cfg);
  CHECK(closed.p00 == 0.0);
  CHECK(closed.p10 == 1.0);
  CHECK(closed.p01 == 0.0);

  const auto open = transition_matrix({5, 0.5, cfg.y_max, 0.5}, cfg);
  CHECK(open.p00 == 1.0);
  CHECK(open.p01 == 1.0);
  CHECK(open.p11 == 0.0);
  CHECK(channel_capacity(open).capacity_bits == 0.0);
}

TEST_CASE("transition matrix against high-precision references") {
  const NumericsConfig cfg;
  // mpmath, 40 digits: Hermite expansion of the smeared density integrated
  // term by term over (-theta, theta).
  struct Case {
    ChannelParams p;
    double p01;
  };
  const Case cases[] = {
      {{1, 0, 1, 0}, 0.52931236090340784324},
      {{2, 0.25, 2, 0.5}, 0.70406819097193806691},
      {{5, 0.5, 3.6, 0.5}, 0.66909511232006654828},
      {{5, 0.5, 4.2, 1}, 0.79985605287761795467},
      {{5, 0.5, 4.2, 0}, 0.82667523730581196998},
  };
  for (const auto& c : cases) {
    const auto t = transition_matrix(c.p, cfg);
    CHECK(std::abs(t.p01 - c.p01) <= 1e-9);
    CHECK(t.p00 == std::erf(c.p.theta / std::sqrt(1 + c.p.sigma * c.p.sigma)));
  }
}

TEST_CASE("closed-form p00 agrees with quadrature of the vacuum density") {
  const NumericsConfig cfg;
  for (double theta : {0.5, 2.0, 4.0}) {
    for (double sigma : {0.0, 0.5, 1.0, 2.0}) {
      const auto t = transition_matrix({5, 0.5, theta, sigma}, cfg);
      const SignalDensity vacuum(0.0, sigma, cfg);
      CHECK(std::abs(t.p00 - interval_probability(vacuum, -theta, theta, cfg)) <= 1e-9);
    }
  }
}

TEST_CASE("vanishing amplitude makes the symbols indistinguishable") {
  const NumericsConfig cfg;
  for (double sigma : {0.0, 0.8}) {
    const auto t = transition_matrix({1e-4, 0.5, 1.2, sigma}, cfg);
    CHECK(std::abs(t.p01 - t.p00) <= 1e-6);
  }
}

TEST_CASE("acceptance probabilities are nondecreasing in theta") {
  const NumericsConfig cfg;
  for (double sigma : {0.0, 1.0}) {
    TransitionMatrix prev = transition_matrix({5, 0.5, 0.0, sigma}, cfg);
    for (double theta = 0.2; theta <= 8.0; theta += 0.2) {
      const auto t = transition_matrix({5, 0.5, theta, sigma}, cfg);
      CHECK(t.p00 >= prev.p00);
      CHECK(t.p01 >= prev.p01 - 1e-12);
      prev = t;
    }
  }
}

TEST_CASE("p01 series collapses to erf for the vacuum") {
  for (double sigma : {0.0, 0.5, 2.0}) {
    const ChannelParams p{1e-30, 0.0, 1.7, sigma};
    const auto s = p01_series(p, 5);
    CHECK(s.value == doctest::Approx(std::erf(1.7 / std::sqrt(1 + sigma * sigma))).epsilon(1e-15));
  }
}

TEST_CASE("p01 series agrees with the quadrature path") {
  const NumericsConfig cfg;
  const ChannelParams unit{1, 0, 1, 0};
  CHECK(std::abs(p01_series(unit, 80).value - transition_matrix(unit, cfg).p01) <= 1e-8);

  for (const ChannelParams p : {ChannelParams{2, 0.25, 2, 0.5}, ChannelParams{5, 0.5, 3.6, 0.5},
                                ChannelParams{5, 0.5, 4.2, 1}, ChannelParams{3, 0.1, 2.5, 0}}) {
    const auto s = p01_series(p, 150);
    CHECK(std::abs(s.value - transition_matrix(p, cfg).p01) <= 1e-6);
    CHECK(s.last_increment <= 1e-13);
  }
}

TEST_CASE("p01 series reports non-convergence") {
  CHECK_THROWS_AS(p01_series({5, 0.5, 4.2, 1}, 5), NumericalError);
  CHECK_THROWS_AS(p01_series({5, 0.5, 4.2, 1}, 0), std::invalid_argument);
}
