#include "crsp/campaign.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace crsp {

namespace {

template <std::size_t N>
std::array<Amplitude, N> gaussian_unit(Rng& rng, bool complex, double norm = 1.0) {
  std::array<Amplitude, N> v{};
  double sum = 0.0;
  do {
    sum = 0.0;
    for (auto& z : v) {
      z = complex ? rng.complex_normal() : Amplitude(rng.normal(), 0.0);
      sum += std::norm(z);
    }
  } while (sum < 1e-24);
  const double scale = norm / std::sqrt(sum);
  for (auto& z : v) z *= scale;
  return v;
}

}  // namespace

void ClassMix::validate() const {
  if (real < 0.0 || complex < 0.0 || zeta_one < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "class mix weights must be non-negative");
  }
  if (std::abs(real + complex + zeta_one - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvalidArgument, "class mix weights must sum to 1");
  }
}

CoefficientClass ClassMix::pick(double u) const {
  if (u < real) return CoefficientClass::Real;
  if (u < real + complex || zeta_one <= 0.0) return CoefficientClass::ComplexGeneral;
  return CoefficientClass::ComplexZetaOne;
}

void CampaignConfig::validate() const {
  if (trials == 0) throw Error(ErrorCode::InvalidArgument, "trials must be positive");
  mix.validate();
  if (fixed_channel) fixed_channel->validate();
}

TargetQubit random_target_qubit(CoefficientClass cls, Rng& rng) {
  const auto t = gaussian_unit<2>(rng, cls != CoefficientClass::Real);
  return {t[0], t[1]};
}

TargetTwoQubit random_target_two(CoefficientClass cls, Rng& rng) {
  if (cls == CoefficientClass::ComplexZetaOne) {
    const double half = 1.0 / std::numbers::sqrt2;
    const auto head = gaussian_unit<2>(rng, true, half);
    const auto tail = gaussian_unit<2>(rng, true, half);
    return {head[0], head[1], tail[0], tail[1]};
  }
  const auto t = gaussian_unit<4>(rng, cls != CoefficientClass::Real);
  return {t[0], t[1], t[2], t[3]};
}

TrialResult run_trial(const CampaignConfig& config, std::size_t index) {
  TrialResult result;
  result.index = index;
  Rng rng(config.seed + index);
  try {
    CanonicalCoefficients channel;
    if (config.fixed_channel) {
      channel = *config.fixed_channel;
    } else {
      const PureState source = haar_random_state(kChannelWires, rng);
      const CanonicalThreeQubit decomposed = acin_decompose(source, config.tol);
      if (decomposed.source_fidelity < 1.0 - config.tol.success_fidelity) {
        result.failure = "canonical reconstruction fidelity below threshold";
        return result;
      }
      channel = decomposed.coeffs;
    }
    const ControllerSetting setting{std::numbers::pi * rng.uniform(), 2.0 * std::numbers::pi * rng.uniform()};
    const CoefficientClass cls = config.mix.pick(rng.uniform());

    const ProtocolReport report =
        config.protocol == ProtocolKind::Crsp1
            ? run_crsp_single(channel, setting, random_target_qubit(cls, rng), config.tol)
            : run_crsp_two(channel, setting, random_target_two(cls, rng), config.tol);
    result.closed_form_gap = report.closed_form_gap();
    result.conservation_error = std::abs(report.total_probability() - 1.0);
    result.failure = report.invariant_violation(config.tol);
  } catch (const Error& e) {
    result.failure = e.what();
  }
  return result;
}

CampaignSummary summarize(const std::vector<TrialResult>& results) {
  CampaignSummary summary;
  summary.trials_run = results.size();
  for (const auto& r : results) {
    summary.max_abs_closed_form_gap = std::max(summary.max_abs_closed_form_gap, r.closed_form_gap);
    summary.conservation_worst = std::max(summary.conservation_worst, r.conservation_error);
    if (r.failure) summary.failures.emplace_back(r.index, *r.failure);
  }
  std::sort(summary.failures.begin(), summary.failures.end());
  return summary;
}

CampaignSummary run_campaign_serial(const CampaignConfig& config) {
  config.validate();
  std::vector<TrialResult> results;
  results.reserve(config.trials);
  for (std::size_t i = 0; i < config.trials; ++i) results.push_back(run_trial(config, i));
  return summarize(results);
}

CampaignSummary run_campaign(const CampaignConfig& config) {
  config.validate();
  std::vector<TrialResult> results(config.trials);
  const auto n = static_cast<std::ptrdiff_t>(config.trials);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    results[static_cast<std::size_t>(i)] = run_trial(config, static_cast<std::size_t>(i));
  }
  return summarize(results);
}

}  // namespace crsp
