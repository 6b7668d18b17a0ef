#include <doctest.h>
#include <omp.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qcap/errors.hpp"
#include "qcap/experiments.hpp"

using namespace qcap;

TEST_CASE("affine_grid") {
  const auto g = affine_grid(0.0, 3.0, 61);
  REQUIRE(g.size() == 61);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 3.0);
  for (int i = 0; i < 61; ++i) CHECK(g[i] == doctest::Approx(0.05 * i).epsilon(1e-14));
  CHECK(affine_grid(1.5, 2.0, 1) == std::vector<double>{1.5});
  CHECK_THROWS_AS(affine_grid(0.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("SweepSpec validation") {
  SweepSpec spec{{5, 0.5, 0, 0}, {0.0, 0.5}, {4.0}, {}};
  CHECK_NOTHROW(spec.validate());
  spec.sigma_grid = {0.5, 0.5};
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.sigma_grid = {};
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.sigma_grid = {0.1};
  spec.theta_list = {};
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.theta_list = {-1.0};
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("a one-point sweep is transition_matrix followed by channel_capacity") {
  const NumericsConfig cfg;
  const auto rows = sweep({{5, 0.5, 0, 0}, {0.0}, {4.2}, cfg});
  REQUIRE(rows.size() == 1);
  const auto t = transition_matrix({5, 0.5, 4.2, 0.0}, cfg);
  const auto c = channel_capacity(t);
  CHECK(rows[0] == SweepRow{4.2, 0.0, t.p00, t.p01, c.p1_star, c.capacity_bits});
}

TEST_CASE("thresholds beyond the cutoff give zero capacity") {
  const NumericsConfig cfg;
  const auto rows = sweep({{5, 0.5, 0, 0}, affine_grid(0.0, 2.0, 5), {cfg.y_max, 2 * cfg.y_max}, cfg});
  for (const auto& row : rows) CHECK(row.capacity_bits <= 1e-10);
}

TEST_CASE("parallel sweep matches the serial reference bit for bit") {
  const auto spec = fig1_spec({});
  const auto reference = sweep_serial(spec);
  const int saved = omp_get_max_threads();
  for (int threads : {1, 2, 5}) {
    omp_set_num_threads(threads);
    CHECK(sweep(spec) == reference);
  }
  omp_set_num_threads(saved);
}

TEST_CASE("fig1 data set shape and physics") {
  const NumericsConfig cfg;
  const auto rows = fig1_dataset(cfg);
  REQUIRE(rows.size() == 244);
  const double thetas[] = {3.6, 3.8, 4.0, 4.2};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].theta == thetas[i / 61]);
    CHECK(rows[i].sigma == doctest::Approx(0.05 * (i % 61)).epsilon(1e-14));
    CHECK(rows[i].capacity_bits >= 0.0);
    CHECK(rows[i].capacity_bits <= 1.0);
  }
  // Curves ordered top to bottom by threshold at zero noise.
  for (int k = 0; k + 1 < 4; ++k) {
    CHECK(rows[61 * k].capacity_bits > rows[61 * (k + 1)].capacity_bits + 1e-6);
  }
  for (int k = 0; k < 4; ++k) {
    double best = 0.0;
    for (int j = 0; j < 61; ++j) best = std::max(best, rows[61 * k + j].capacity_bits);
    CHECK(rows[61 * k + 60].capacity_bits < best);
    if (thetas[k] >= 4.0) CHECK(best > rows[61 * k].capacity_bits + 10 * cfg.quad_tol);
  }
  CHECK(fig1_dataset(cfg) == rows);
}

TEST_CASE("optimal_sigma finds an interior optimum for a high threshold") {
  const NumericsConfig cfg;
  const ChannelParams base{5, 0.5, 4.2, 0};
  const auto best = optimal_sigma(base, 0.0, 3.0, cfg);
  CHECK_FALSE(best.at_boundary);
  CHECK(best.sigma_star > 0.5);
  CHECK(best.sigma_star < 3.0);
  const double at_zero = evaluate_point(base, 4.2, 0.0, cfg).capacity_bits;
  CHECK(best.capacity_at_star > at_zero);
  for (double s : affine_grid(0.0, 3.0, 101)) {
    CHECK(best.capacity_at_star >= evaluate_point(base, 4.2, s, cfg).capacity_bits);
  }
  // neighbours within the sigma tolerance do no better
  CHECK(best.capacity_at_star >=
        evaluate_point(base, 4.2, best.sigma_star + 2 * kSigmaTolerance, cfg).capacity_bits - 1e-12);
  CHECK(best.capacity_at_star >=
        evaluate_point(base, 4.2, best.sigma_star - 2 * kSigmaTolerance, cfg).capacity_bits - 1e-12);
}

TEST_CASE("optimal_sigma stays at zero noise for a low threshold") {
  const NumericsConfig cfg;
  const ChannelParams base{5, 0.5, 2.0, 0};
  // full grid scan as oracle
  const auto grid = affine_grid(0.0, 3.0, 301);
  double best_grid = -1.0;
  double arg = -1.0;
  for (double s : grid) {
    const double c = evaluate_point(base, 2.0, s, cfg).capacity_bits;
    if (c > best_grid) {
      best_grid = c;
      arg = s;
    }
  }
  CHECK(arg == 0.0);
  const auto best = optimal_sigma(base, 0.0, 3.0, cfg);
  CHECK(best.at_boundary);
  CHECK(best.sigma_star == 0.0);
  CHECK(best.capacity_at_star == best_grid);
}

TEST_CASE("optimal_sigma on a useless channel flags the boundary") {
  const NumericsConfig cfg;
  const auto best = optimal_sigma({1e-4, 0.5, 4.2, 0}, 0.0, 3.0, cfg);
  CHECK(best.capacity_at_star <= 1e-6);
  CHECK(best.at_boundary);
}

TEST_CASE("optimal_sigma input checks") {
  const NumericsConfig cfg;
  CHECK_THROWS_AS(optimal_sigma({5, 0.5, 4.2, 0}, 1.0, 1.0, cfg), std::invalid_argument);
  CHECK_THROWS_AS(optimal_sigma({5, 0.5, 4.2, 0}, -1.0, 1.0, cfg), std::invalid_argument);
  CHECK_THROWS_AS(optimal_sigma({5, 0.5, 4.2, 0}, 0.0, 1.0, cfg, 10), std::invalid_argument);
}

TEST_CASE("sweep failures name the offending grid point") {
  NumericsConfig cfg;
  cfg.quad_tol = 1e-30;
  cfg.max_panels = 3;
  const SweepSpec spec{{5, 0.5, 0, 0}, {0.0, 0.25}, {4.5}, cfg};
  try {
    sweep(spec);
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    const std::string what = e.what();
    CHECK(what.find("theta=4.5") != std::string::npos);
    CHECK(what.find("sigma=0)") != std::string::npos);
  }
}
