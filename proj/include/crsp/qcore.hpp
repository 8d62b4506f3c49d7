#pragma once

// Pure-state mechanics on a handful of named wires (at most five qubits).
//
// Index convention everywhere: amplitudes are laid out lexicographically
// over the wire list, the first listed wire being the most significant bit.
// Operators and measurement bases use the same convention over their own
// ordered target list.

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "crsp/error.hpp"
#include "crsp/rng.hpp"
#include "crsp/tolerances.hpp"

namespace crsp {

using Amplitude = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using Qubit = Eigen::Vector2cd;

inline constexpr std::size_t kMaxWires = 5;

class PureState {
 public:
  // Validates labels, dimension, finiteness and norm (tol.norm).
  PureState(std::vector<std::string> wires, CVector amplitudes, const Tolerances& tol = {});

  // Divides by the norm first. Throws NotNormalized for a zero vector.
  static PureState normalized(std::vector<std::string> wires, CVector amplitudes);
  static PureState basis(std::vector<std::string> wires, std::size_t index);

  const std::vector<std::string>& wires() const noexcept { return wires_; }
  const CVector& amplitudes() const noexcept { return amplitudes_; }
  Amplitude amplitude(std::size_t index) const { return amplitudes_(static_cast<Eigen::Index>(index)); }
  std::size_t num_wires() const noexcept { return wires_.size(); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }

  std::optional<std::size_t> wire_position(const std::string& label) const;
  std::size_t require_wire(const std::string& label) const;

  // Same physical state over a permutation of the wire list.
  PureState reordered(const std::vector<std::string>& order) const;

 private:
  std::vector<std::string> wires_;
  CVector amplitudes_;
};

class LocalOperator {
 public:
  explicit LocalOperator(CMatrix matrix);

  static LocalOperator identity(std::size_t dim);

  const CMatrix& matrix() const noexcept { return matrix_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  std::size_t num_qubits() const noexcept;

  // ||U^dag U - I||_max
  double unitarity_error() const;
  bool is_unitary(const Tolerances& tol = {}) const { return unitarity_error() <= tol.unitarity; }

  LocalOperator operator*(const LocalOperator& rhs) const;
  // Kronecker product, this operator on the more significant targets.
  LocalOperator kron(const LocalOperator& rhs) const;

 private:
  CMatrix matrix_;
};

// Orthonormal basis; vectors()[k] is the outcome-k vector.
class MeasurementBasis {
 public:
  explicit MeasurementBasis(std::vector<CVector> vectors, const Tolerances& tol = {});

  const std::vector<CVector>& vectors() const noexcept { return vectors_; }
  const CVector& vector(std::size_t outcome) const { return vectors_.at(outcome); }
  std::size_t dim() const noexcept { return vectors_.size(); }

  // max_ij |<v_i|v_j> - delta_ij|
  double orthonormality_error() const;
  // Unitary whose columns are the basis vectors.
  LocalOperator as_operator() const;

 private:
  std::vector<CVector> vectors_;
};

MeasurementBasis computational_basis(std::size_t num_qubits);

struct MeasurementOutcome {
  std::size_t outcome = 0;
  double probability = 0.0;
  // Empty when probability < probability_floor.
  std::optional<PureState> collapsed;
};

// state = sqrt(lambda_small)|left[0] right[0]> + sqrt(lambda_large)|left[1] right[1]>
// exactly (no residual phase).
struct SchmidtPair {
  double lambda_small = 0.0;
  double lambda_large = 1.0;
  std::array<Qubit, 2> basis_left;
  std::array<Qubit, 2> basis_right;

  PureState reconstruct(const std::string& left_wire, const std::string& right_wire) const;
};

PureState tensor(const PureState& left, const PureState& right);

PureState apply_local(const PureState& state, const LocalOperator& op,
                      const std::vector<std::string>& targets, const Tolerances& tol = {});

// One entry per basis vector, in basis order; measured wires are removed.
std::vector<MeasurementOutcome> measure(const PureState& state, const MeasurementBasis& basis,
                                        const std::vector<std::string>& targets,
                                        const Tolerances& tol = {});

SchmidtPair bipartite_schmidt(const PureState& state, const std::string& left,
                              const std::string& right, const Tolerances& tol = {});

// Schmidt data of an unnormalized 2x2 amplitude matrix M[left][right].
SchmidtPair schmidt_of_matrix(const Eigen::Matrix2cd& amplitudes, const Tolerances& tol = {});

// |<a|b>|^2 after aligning b's wire order to a's.
double fidelity(const PureState& a, const PureState& b);

// Rotate so the first component with magnitude above `threshold` is real positive.
CVector phase_gauged(const CVector& v, double threshold = 1e-12);

// Haar-random pure state: 2^n iid standard complex Gaussians, normalized.
PureState haar_random_state(std::vector<std::string> wires, Rng& rng);
PureState haar_random_state(std::size_t num_wires, std::uint64_t seed);

// Default labels q0, q1, ... for generated states.
std::vector<std::string> default_wire_labels(std::size_t num_wires);

}  // namespace crsp
