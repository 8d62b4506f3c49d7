#pragma once

// Seeded Monte Carlo verification: each trial draws a channel, a controller
// setting and a target, runs the protocol and checks the report invariants.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crsp/canonical.hpp"
#include "crsp/protocols.hpp"

namespace crsp {

struct ClassMix {
  double real = 1.0 / 3.0;
  double complex = 1.0 / 3.0;
  double zeta_one = 1.0 / 3.0;

  // Non-negative weights summing to 1 within 1e-9.
  void validate() const;
  CoefficientClass pick(double u) const;
};

struct CampaignConfig {
  std::size_t trials = 100;
  std::uint64_t seed = 42;
  ProtocolKind protocol = ProtocolKind::Crsp1;
  // Haar-random channels when empty.
  std::optional<CanonicalCoefficients> fixed_channel;
  ClassMix mix;
  Tolerances tol;

  void validate() const;
};

struct TrialResult {
  std::size_t index = 0;
  double closed_form_gap = 0.0;
  double conservation_error = 0.0;
  std::optional<std::string> failure;
};

struct CampaignSummary {
  std::size_t trials_run = 0;
  double max_abs_closed_form_gap = 0.0;
  double conservation_worst = 0.0;
  std::vector<std::pair<std::size_t, std::string>> failures;  // sorted by trial index

  bool ok() const { return failures.empty(); }
};

TargetQubit random_target_qubit(CoefficientClass cls, Rng& rng);
TargetTwoQubit random_target_two(CoefficientClass cls, Rng& rng);

// Trial `index` draws everything from Rng(config.seed + index).
TrialResult run_trial(const CampaignConfig& config, std::size_t index);

CampaignSummary summarize(const std::vector<TrialResult>& results);

CampaignSummary run_campaign_serial(const CampaignConfig& config);
// Trials run under OpenMP; the summary is identical to run_campaign_serial.
CampaignSummary run_campaign(const CampaignConfig& config);

}  // namespace crsp
