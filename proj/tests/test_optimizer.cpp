#include <gtest/gtest.h>

#include "crsp/optimizer.hpp"
#include "test_support.hpp"

using namespace crsp;
using namespace crsp::testkit;

TEST(SuccessValue, examples) {
  for (double eta : {0.0, 1.0, 4.0}) EXPECT_NEAR(success_value(ghz_channel(), {kPi / 2, eta}), 1.0, 1e-12);
  EXPECT_EQ(success_value(ghz_channel(), {0.0, 0.0}), 0.0);
  EXPECT_NEAR(success_value(unit_family(0.5, 0.5), {3 * kPi / 4, 0.0}), 1.0, 1e-12);
  EXPECT_EQ(success_value(product_channel(), {1.0, 1.0}), 0.0);
}

TEST(SuccessValue, matches_protocol_closed_form) {
  Rng rng(50);
  for (int trial = 0; trial < 100; ++trial) {
    const CanonicalCoefficients c = random_coefficients(rng);
    const ControllerSetting s = random_setting(rng);
    const SuccessTerms terms = success_terms(c, s);
    const ProtocolReport r = run_crsp_single(c, s, {0.6, 0.8});
    EXPECT_NEAR(terms.lambda00, r.lambda00, 1e-12);
    EXPECT_NEAR(terms.lambda10, r.lambda10, 1e-12);
    EXPECT_NEAR(terms.p_real, r.closed_form_success, 1e-12);
    EXPECT_NEAR(terms.p_complex, terms.p_real / 2, 1e-15);
  }
}

TEST(SuccessValue, charlie_probabilities_ignore_eta_without_a0_a1_overlap) {
  Rng rng(51);
  for (int trial = 0; trial < 20; ++trial) {
    CanonicalCoefficients c = random_coefficients(rng);
    c.a[trial % 2] = 0.0;
    double n = 0.0;
    for (double x : c.a) n += x * x;
    for (double& x : c.a) x /= std::sqrt(n);
    const double theta = kPi * rng.uniform();
    const SuccessTerms base = success_terms(c, {theta, 0.0});
    for (int k = 0; k < 10; ++k) {
      const SuccessTerms t = success_terms(c, {theta, 2 * kPi * rng.uniform()});
      EXPECT_NEAR(t.p0, base.p0, 1e-12);
      EXPECT_NEAR(t.p1, base.p1, 1e-12);
    }
    // With a0 = 0 Charlie's outcome-0 branch carries no a0 term, so eta is a global phase.
    if (trial % 2 == 0) {
      for (int k = 0; k < 5; ++k) EXPECT_NEAR(success_value(c, {theta, 2 * kPi * rng.uniform()}), base.p_real, 1e-12);
    }
  }
}

TEST(SuccessValue, unit_family_curve) {
  // For a0 = a1 = 1/2 every point with cos(eta) = -cot(theta) reaches 1.
  for (double theta = kPi / 4; theta <= 3 * kPi / 4 + 1e-12; theta += kPi / 40) {
    const double eta = std::acos(std::clamp(-1.0 / std::tan(theta), -1.0, 1.0));
    EXPECT_NEAR(success_value(unit_family(0.5, 0.5), {theta, eta}), 1.0, 1e-9) << theta;
  }
}

TEST(Sweep, ghz_column) {
  const Landscape l = sweep(ghz_channel(), 5, 5);
  ASSERT_EQ(l.theta_grid.size(), 5u);
  EXPECT_DOUBLE_EQ(l.theta_grid.back(), kPi);
  EXPECT_DOUBLE_EQ(l.eta_grid.back(), 2 * kPi);
  for (std::size_t j = 0; j < 5; ++j) EXPECT_NEAR(l.value(2, j), 1.0, 1e-12);
}

TEST(Sweep, product_channel_is_flat_zero) {
  const Landscape l = sweep(product_channel(), 7, 9);
  for (const auto& c : l.cells) EXPECT_EQ(c.p_real, 0.0);
}

TEST(Sweep, bounded_and_parallel_matches_serial) {
  Rng rng(52);
  for (int trial = 0; trial < 5; ++trial) {
    const CanonicalCoefficients c = random_coefficients(rng);
    const Landscape par = sweep(c, 31, 47);
    const Landscape ser = sweep_serial(c, 31, 47);
    ASSERT_EQ(par.cells.size(), ser.cells.size());
    for (std::size_t k = 0; k < par.cells.size(); ++k) {
      EXPECT_EQ(par.cells[k].p_real, ser.cells[k].p_real);
      EXPECT_EQ(par.cells[k].lambda10, ser.cells[k].lambda10);
      EXPECT_GE(par.cells[k].p_real, 0.0);
      EXPECT_LE(par.cells[k].p_real, 1.0 + 1e-9);
    }
  }
  EXPECT_THROW(sweep(ghz_channel(), 1, 5), Error);
}

TEST(Maximize, ghz) {
  const Optimum o = maximize(ghz_channel());
  EXPECT_NEAR(o.p_real, 1.0, 1e-6);
  EXPECT_NEAR(o.theta_star, kPi / 2, 1e-3);
  EXPECT_DOUBLE_EQ(o.p_complex, o.p_real / 2);
}

TEST(Maximize, unit_family_location) {
  const Optimum o = maximize(unit_family(0.5, 0.5));
  EXPECT_NEAR(o.p_real, 1.0, 1e-4);
  EXPECT_NEAR(o.theta_star, 3 * kPi / 4, 1e-3);
  EXPECT_NEAR(o.eta_star, 0.0, 1e-3);
}

TEST(Maximize, unit_family_members) {
  Rng rng(53);
  std::vector<std::pair<double, double>> members{{0.5, 0.5}, {kInvSqrt2, 0.0}};
  for (int k = 0; k < 3; ++k) {
    const double phi = 0.5 * kPi * rng.uniform();
    members.emplace_back(kInvSqrt2 * std::cos(phi), kInvSqrt2 * std::sin(phi));
  }
  for (const auto& [a0, a1] : members) EXPECT_GE(maximize(unit_family(a0, a1)).p_real, 1.0 - 1e-4) << a0;
}

TEST(Maximize, product_channel) { EXPECT_EQ(maximize(product_channel(), {37, 73}).p_real, 0.0); }

TEST(Maximize, dominates_grid_and_probes_and_is_monotone) {
  Rng rng(54);
  OptimizerOptions opt;
  opt.theta_steps = 61;
  opt.eta_steps = 121;
  for (int trial = 0; trial < 10; ++trial) {
    const CanonicalCoefficients c = acin_decompose(haar_random_state(kChannelWires, rng)).coeffs;
    const Optimum o = maximize(c, opt);
    EXPECT_LE(o.p_real, 1.0);
    const Landscape grid = sweep(c, opt.theta_steps, opt.eta_steps);
    for (const auto& cell : grid.cells) EXPECT_GE(o.p_real, cell.p_real - 1e-12);
    for (int k = 0; k < 50; ++k) EXPECT_GE(o.p_real, success_value(c, random_setting(rng)) - 1e-6);
    ASSERT_EQ(o.history.size(), o.iterations + 1);
    for (std::size_t k = 1; k < o.history.size(); ++k) EXPECT_GE(o.history[k], o.history[k - 1]);
    EXPECT_NEAR(success_value(c, {o.theta_star, o.eta_star}), o.p_real, 1e-15);
  }
}
