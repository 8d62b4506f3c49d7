#pragma once

// Controlled remote state preparation over a canonical three-qubit channel.
//
// Parties and wires: Charlie holds c, Alice holds a (and a' in the two-qubit
// protocol), Bob holds b (and b'), plus an auxiliary qubit "aux" he
// introduces for the probabilistic correction. Every run enumerates the
// complete outcome tree (Charlie, Alice, Bob's aux measurement).

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crsp/canonical.hpp"
#include "crsp/qcore.hpp"

namespace crsp {

struct ControllerSetting {
  double theta = 0.0;  // [0, pi]
  double eta = 0.0;    // [0, 2 pi]

  void validate() const;
};

struct TargetQubit {
  Amplitude alpha{1.0, 0.0};
  Amplitude beta{0.0, 0.0};

  std::array<Amplitude, 2> coefficients() const { return {alpha, beta}; }
  void validate(const Tolerances& tol = {}) const;
};

struct TargetTwoQubit {
  Amplitude alpha{1.0, 0.0};
  Amplitude beta{0.0, 0.0};
  Amplitude gamma{0.0, 0.0};
  Amplitude delta{0.0, 0.0};

  std::array<Amplitude, 4> coefficients() const { return {alpha, beta, gamma, delta}; }
  // sqrt((|gamma|^2 + |delta|^2) / (|alpha|^2 + |beta|^2)); empty when the
  // denominator is at most 1e-10.
  std::optional<double> zeta() const;
  void validate(const Tolerances& tol = {}) const;
};

enum class CoefficientClass { Real, ComplexGeneral, ComplexZetaOne };

std::string_view to_string(CoefficientClass cls);

// First coefficient with magnitude above 1e-12 rotated real positive.
TargetQubit canonicalize_phase(const TargetQubit& target);
TargetTwoQubit canonicalize_phase(const TargetTwoQubit& target);

CoefficientClass classify(const TargetQubit& target, const Tolerances& tol = {});
CoefficientClass classify(const TargetTwoQubit& target, const Tolerances& tol = {});

// {cos(t/2)|0> + e^{i eta} sin(t/2)|1>, sin(t/2)|0> - e^{i eta} cos(t/2)|1>}
MeasurementBasis charlie_basis(const ControllerSetting& setting);

// Closed-form probabilities of Charlie's two outcomes on the canonical channel.
std::pair<double, double> charlie_closed_form(const CanonicalCoefficients& channel,
                                              const ControllerSetting& setting);

// Alice's bases. `left` is the Schmidt basis of her qubit a; the two-qubit
// variants act on (a, a') built on {|0'0>, |0'1>, |1'0>, |1'1>}.
MeasurementBasis alice_basis_single(const TargetQubit& target, const std::array<Qubit, 2>& left,
                                    const Tolerances& tol = {});
MeasurementBasis alice_basis_two_real(const TargetTwoQubit& target, const std::array<Qubit, 2>& left,
                                      const Tolerances& tol = {});
MeasurementBasis alice_basis_two_complex(const TargetTwoQubit& target, const std::array<Qubit, 2>& left,
                                         const Tolerances& tol = {});

// Bob's corrections in his Schmidt frame, over (b, aux) and (b, b', aux).
// Applied to the collapsed state (x) |0>_aux they leave
// sqrt(lambda_small) * target on the aux = 0 branch. Throws
// NoCorrectionExists for outcomes whose collapsed state carries conjugated
// coefficients or an unknown zeta weighting.
LocalOperator bob_correction_single(int alice_outcome, double lambda_small, double lambda_large,
                                    CoefficientClass cls = CoefficientClass::Real);
LocalOperator bob_correction_two(int alice_outcome, double lambda_small, double lambda_large,
                                 CoefficientClass cls);

bool correction_exists_single(int alice_outcome, CoefficientClass cls);
bool correction_exists_two(int alice_outcome, CoefficientClass cls);

enum class ProtocolKind { Crsp1, Crsp2 };

std::string_view to_string(ProtocolKind kind);

struct BranchRecord {
  int charlie_outcome = 0;
  double charlie_prob = 0.0;
  int alice_outcome = 0;
  double alice_prob = 0.0;  // conditional on Charlie's outcome
  std::optional<int> bob_aux_outcome;  // empty: no correction, branch ends at Alice
  double bob_aux_prob = 1.0;           // conditional on Alice's outcome
  double joint_prob = 0.0;
  std::optional<PureState> bob_final;     // computational frame, Bob's target wires
  std::optional<double> fidelity_to_target;
  bool success = false;
};

struct ProtocolReport {
  ProtocolKind protocol = ProtocolKind::Crsp1;
  CoefficientClass target_class = CoefficientClass::Real;
  std::vector<BranchRecord> branches;
  double enumerated_success = 0.0;
  double closed_form_success = 0.0;
  double p0 = 0.0, p1 = 0.0;
  double lambda00 = 0.0, lambda01 = 0.0, lambda10 = 0.0, lambda11 = 0.0;
  int cbits_used = 0;

  double total_probability() const;
  double closed_form_gap() const { return std::abs(enumerated_success - closed_form_success); }
  // Empty when every report invariant holds, else the first violation.
  std::optional<std::string> invariant_violation(const Tolerances& tol = {}) const;
};

// Closed-form success probabilities.
double closed_form_single(CoefficientClass cls, double p0, double lambda00, double p1, double lambda10);
double closed_form_two(CoefficientClass cls, double p0, double lambda00, double p1, double lambda10);

// Throws ChannelNotControllable when a0^2 or a2^2 + a3^2 + a4^2 is at most
// the probability floor, or when one of Charlie's outcomes is below it.
ProtocolReport run_crsp_single(const CanonicalCoefficients& channel, const ControllerSetting& setting,
                               const TargetQubit& target, const Tolerances& tol = {});
// Throws DegenerateTarget for complex targets whose (alpha, beta) or
// (gamma, delta) half has squared norm <= 1e-10.
ProtocolReport run_crsp_two(const CanonicalCoefficients& channel, const ControllerSetting& setting,
                            const TargetTwoQubit& target, const Tolerances& tol = {});

}  // namespace crsp
