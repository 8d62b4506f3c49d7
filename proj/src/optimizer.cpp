#include "crsp/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

namespace crsp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Smaller Schmidt coefficient of the normalized state M / ||M||_F.
// sqrt(1 - C^2) is taken from the entries of M M^dag as a sum of squares so
// it stays accurate near maximal entanglement.
double lambda_small_of(const Eigen::Matrix2cd& m) {
  const double norm2 = m.squaredNorm();
  if (norm2 <= 0.0) return 0.0;
  const double c = std::min(1.0, 2.0 * std::abs(m.determinant()) / norm2);
  const double top = m.row(0).squaredNorm() - m.row(1).squaredNorm();
  const Amplitude cross = m.row(0).dot(m.row(1));
  const double gap = std::min(1.0, std::sqrt(top * top + 4.0 * std::norm(cross)) / norm2);
  return c * c / (2.0 * (1.0 + gap));
}

std::vector<double> inclusive_grid(double hi, std::size_t steps) {
  if (steps < 2) throw Error(ErrorCode::InvalidArgument, "grid needs at least 2 steps per axis");
  std::vector<double> g(steps);
  for (std::size_t i = 0; i < steps; ++i) g[i] = hi * static_cast<double>(i) / static_cast<double>(steps - 1);
  return g;
}

Landscape empty_landscape(std::size_t theta_steps, std::size_t eta_steps) {
  Landscape out;
  out.theta_grid = inclusive_grid(kPi, theta_steps);
  out.eta_grid = inclusive_grid(kTwoPi, eta_steps);
  out.cells.resize(theta_steps * eta_steps);
  return out;
}

double wrap_eta(double eta) {
  double w = std::fmod(eta, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w;
}

}  // namespace

SuccessTerms success_terms(const CanonicalCoefficients& channel, const ControllerSetting& setting,
                           const Tolerances& tol) {
  const auto& a = channel.a;
  Eigen::Matrix2cd t0 = Eigen::Matrix2cd::Zero();
  t0(0, 0) = a[0];
  Eigen::Matrix2cd t1;
  t1 << std::polar(a[1], channel.mu), a[2], a[3], a[4];

  const double c = std::cos(setting.theta / 2.0);
  const double s = std::sin(setting.theta / 2.0);
  const Amplitude phase = std::polar(1.0, -setting.eta);
  const Eigen::Matrix2cd omega0 = c * t0 + phase * s * t1;
  const Eigen::Matrix2cd omega1 = s * t0 - phase * c * t1;

  SuccessTerms out;
  std::tie(out.p0, out.p1) = charlie_closed_form(channel, setting);
  out.lambda00 = out.p0 < tol.probability_floor ? 0.0 : lambda_small_of(omega0);
  out.lambda10 = out.p1 < tol.probability_floor ? 0.0 : lambda_small_of(omega1);
  const double w0 = out.p0 < tol.probability_floor ? 0.0 : out.p0;
  const double w1 = out.p1 < tol.probability_floor ? 0.0 : out.p1;
  out.p_real = std::clamp(2.0 * (w0 * out.lambda00 + w1 * out.lambda10), 0.0, 1.0);
  out.p_complex = out.p_real / 2.0;
  return out;
}

double success_value(const CanonicalCoefficients& channel, const ControllerSetting& setting,
                     const Tolerances& tol) {
  return success_terms(channel, setting, tol).p_real;
}

Landscape sweep_serial(const CanonicalCoefficients& channel, std::size_t theta_steps, std::size_t eta_steps,
                       const Tolerances& tol) {
  Landscape out = empty_landscape(theta_steps, eta_steps);
  for (std::size_t i = 0; i < theta_steps; ++i) {
    for (std::size_t j = 0; j < eta_steps; ++j) {
      out.cells[i * eta_steps + j] = success_terms(channel, {out.theta_grid[i], out.eta_grid[j]}, tol);
    }
  }
  return out;
}

Landscape sweep(const CanonicalCoefficients& channel, std::size_t theta_steps, std::size_t eta_steps,
                const Tolerances& tol) {
  Landscape out = empty_landscape(theta_steps, eta_steps);
  const auto total = static_cast<std::ptrdiff_t>(theta_steps * eta_steps);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < total; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    const std::size_t i = idx / eta_steps;
    const std::size_t j = idx % eta_steps;
    out.cells[idx] = success_terms(channel, {out.theta_grid[i], out.eta_grid[j]}, tol);
  }
  return out;
}

Optimum maximize(const CanonicalCoefficients& channel, const OptimizerOptions& options, const Tolerances& tol) {
  const Landscape grid = sweep(channel, options.theta_steps, options.eta_steps, tol);

  double best = 0.0;
  for (const auto& cell : grid.cells) best = std::max(best, cell.p_real);

  std::size_t bi = 0, bj = 0;
  bool found = false;
  for (std::size_t j = 0; j < grid.eta_grid.size() && !found; ++j) {
    for (std::size_t i = 0; i < grid.theta_grid.size(); ++i) {
      if (grid.value(i, j) >= best - options.tie_tolerance) {
        bi = i;
        bj = j;
        found = true;
        break;
      }
    }
  }

  Optimum opt;
  opt.theta_star = grid.theta_grid[bi];
  opt.eta_star = grid.eta_grid[bj];
  opt.p_real = grid.value(bi, bj);
  opt.history.push_back(opt.p_real);

  double step_theta = kPi / static_cast<double>(options.theta_steps - 1);
  double step_eta = kTwoPi / static_cast<double>(options.eta_steps - 1);
  while ((step_theta >= options.min_step || step_eta >= options.min_step) &&
         opt.iterations < options.max_iterations) {
    const ControllerSetting probes[] = {
        {std::clamp(opt.theta_star + step_theta, 0.0, kPi), opt.eta_star},
        {std::clamp(opt.theta_star - step_theta, 0.0, kPi), opt.eta_star},
        {opt.theta_star, wrap_eta(opt.eta_star + step_eta)},
        {opt.theta_star, wrap_eta(opt.eta_star - step_eta)},
    };
    double candidate = opt.p_real;
    const ControllerSetting* move = nullptr;
    for (const auto& p : probes) {
      const double v = success_value(channel, p, tol);
      if (v > candidate + 1e-15) {
        candidate = v;
        move = &p;
      }
    }
    if (move) {
      opt.theta_star = move->theta;
      opt.eta_star = move->eta;
      opt.p_real = candidate;
    } else {
      step_theta /= 2.0;
      step_eta /= 2.0;
    }
    ++opt.iterations;
    opt.history.push_back(opt.p_real);
  }
  opt.p_complex = opt.p_real / 2.0;
  return opt;
}

}  // namespace crsp
