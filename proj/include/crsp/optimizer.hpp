#pragma once

// Success probability as a function of Charlie's angles, evaluated in closed
// form, plus landscape sweeps and a grid + pattern-search maximizer.

#include <cstddef>
#include <vector>

#include "crsp/canonical.hpp"
#include "crsp/protocols.hpp"

namespace crsp {

struct SuccessTerms {
  double p0 = 0.0;
  double p1 = 0.0;
  double lambda00 = 0.0;
  double lambda10 = 0.0;
  double p_real = 0.0;     // 2 (p0 lambda00 + p1 lambda10), clamped to [0, 1]
  double p_complex = 0.0;  // p_real / 2
};

// A branch whose p falls below tol.probability_floor contributes zero.
SuccessTerms success_terms(const CanonicalCoefficients& channel, const ControllerSetting& setting,
                           const Tolerances& tol = {});
double success_value(const CanonicalCoefficients& channel, const ControllerSetting& setting,
                     const Tolerances& tol = {});

struct Landscape {
  std::vector<double> theta_grid;
  std::vector<double> eta_grid;
  std::vector<SuccessTerms> cells;  // row-major, theta outer

  const SuccessTerms& at(std::size_t i, std::size_t j) const { return cells.at(i * eta_grid.size() + j); }
  double value(std::size_t i, std::size_t j) const { return at(i, j).p_real; }
};

// Inclusive uniform grids over [0, pi] x [0, 2 pi]; both step counts must be >= 2.
Landscape sweep_serial(const CanonicalCoefficients& channel, std::size_t theta_steps, std::size_t eta_steps,
                       const Tolerances& tol = {});
// Same cells as sweep_serial, evaluated with OpenMP.
Landscape sweep(const CanonicalCoefficients& channel, std::size_t theta_steps, std::size_t eta_steps,
                const Tolerances& tol = {});

struct OptimizerOptions {
  std::size_t theta_steps = 181;
  std::size_t eta_steps = 361;
  double min_step = 1e-7;
  // Grid values within this of the maximum count as ties.
  double tie_tolerance = 1e-12;
  std::size_t max_iterations = 100000;
};

struct Optimum {
  double theta_star = 0.0;
  double eta_star = 0.0;
  double p_real = 0.0;
  double p_complex = 0.0;
  std::size_t iterations = 0;
  // Incumbent value after the grid stage and after every refinement iteration.
  std::vector<double> history;
};

// Ties on the grid go to the smallest eta, then the smallest theta.
Optimum maximize(const CanonicalCoefficients& channel, const OptimizerOptions& options = {},
                 const Tolerances& tol = {});

}  // namespace crsp
