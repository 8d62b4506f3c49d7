#pragma once

// Five-term local-unitary canonical form of a pure three-qubit state:
//
//   a0|000> + a1 e^{i mu}|100> + a2|101> + a3|110> + a4|111>,
//   a_i >= 0, sum a_i^2 = 1, 0 <= mu <= pi,
//
// over wires (c, a, b), c being the most significant.

#include <array>
#include <string>
#include <vector>

#include "crsp/qcore.hpp"

namespace crsp {

struct CanonicalCoefficients {
  std::array<double, 5> a{1.0, 0.0, 0.0, 0.0, 0.0};
  double mu = 0.0;

  // Throws InvalidCoefficients unless every a_i >= -1e-12, mu lies in [0, pi]
  // and |sum a_i^2 - 1| <= norm_slack.
  void validate(double norm_slack = 1e-6) const;
};

struct CanonicalThreeQubit {
  CanonicalCoefficients coeffs;
  // (u_c (x) u_a (x) u_b)|source> equals canonical_state(coeffs).
  LocalOperator u_c = LocalOperator::identity(2);
  LocalOperator u_a = LocalOperator::identity(2);
  LocalOperator u_b = LocalOperator::identity(2);
  double source_fidelity = 1.0;
  // The source is a product across c | ab.
  bool degenerate = false;

  static CanonicalThreeQubit from_coefficients(const CanonicalCoefficients& coeffs);
};

inline const std::vector<std::string> kChannelWires{"c", "a", "b"};

PureState canonical_state(const CanonicalCoefficients& coeffs,
                          const std::vector<std::string>& wires = kChannelWires);

CanonicalThreeQubit acin_decompose(const PureState& state, const Tolerances& tol = {});

// Applies result's unitaries to `state` and compares with the canonical state.
double verify_canonical(const PureState& state, const CanonicalThreeQubit& result);

}  // namespace crsp
