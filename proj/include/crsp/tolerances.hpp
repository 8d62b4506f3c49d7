#pragma once

namespace crsp {

// Every numerical threshold used by the library. Passed by value; the
// defaults are the contract values and the CLI may override them.
struct Tolerances {
  double unitarity = 1e-9;          // ||U^dag U - I||_max
  double norm = 1e-12;              // |<psi|psi> - 1| for stored states
  double probability_floor = 1e-14; // outcomes below this carry no state
  double rank = 1e-10;              // singular-value rank decisions
  double real_class = 1e-10;        // max |Im| for a Real target
  double zeta_one = 1e-9;           // |zeta - 1| for ComplexZetaOne
  double success_fidelity = 1e-9;   // branch succeeds iff F >= 1 - this
  double reconciliation = 1e-9;     // |enumerated - closed form|
  double conservation = 1e-9;       // |sum of branch probabilities - 1|
  double input_norm = 1e-6;         // renormalize inputs off by at most this
};

}  // namespace crsp
