#include "crsp/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace crsp {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t log2_exact(std::size_t n) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

bool all_finite(const CVector& v) {
  return std::all_of(v.data(), v.data() + v.size(),
                     [](const Amplitude& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

// full[rest * local_dim + local] is the index into the whole register.
struct WireSplit {
  std::size_t local_dim = 1;
  std::size_t rest_dim = 1;
  std::vector<std::size_t> full;
  std::vector<std::string> rest_wires;
};

WireSplit split_wires(const PureState& state, const std::vector<std::string>& targets) {
  const std::size_t n = state.num_wires();
  std::vector<std::size_t> target_pos;
  target_pos.reserve(targets.size());
  std::set<std::string> seen;
  for (const auto& t : targets) {
    if (!seen.insert(t).second) throw Error(ErrorCode::DuplicateWire, "target listed twice: " + t);
    target_pos.push_back(state.require_wire(t));
  }
  std::vector<std::size_t> rest_pos;
  WireSplit split;
  for (std::size_t p = 0; p < n; ++p) {
    if (std::find(target_pos.begin(), target_pos.end(), p) == target_pos.end()) {
      rest_pos.push_back(p);
      split.rest_wires.push_back(state.wires()[p]);
    }
  }
  split.local_dim = std::size_t{1} << target_pos.size();
  split.rest_dim = std::size_t{1} << rest_pos.size();
  split.full.assign(state.dim(), 0);
  for (std::size_t f = 0; f < state.dim(); ++f) {
    std::size_t local = 0;
    for (std::size_t q = 0; q < target_pos.size(); ++q) {
      const std::size_t bit = (f >> (n - 1 - target_pos[q])) & 1u;
      local |= bit << (target_pos.size() - 1 - q);
    }
    std::size_t rest = 0;
    for (std::size_t q = 0; q < rest_pos.size(); ++q) {
      const std::size_t bit = (f >> (n - 1 - rest_pos[q])) & 1u;
      rest |= bit << (rest_pos.size() - 1 - q);
    }
    split.full[rest * split.local_dim + local] = f;
  }
  return split;
}

Qubit orthogonal_complement(const Qubit& v) {
  Qubit w(-std::conj(v(1)), std::conj(v(0)));
  return w;
}

}  // namespace

// ---------------------------------------------------------------- PureState

PureState::PureState(std::vector<std::string> wires, CVector amplitudes, const Tolerances& tol)
    : wires_(std::move(wires)), amplitudes_(std::move(amplitudes)) {
  if (wires_.size() > kMaxWires) {
    throw Error(ErrorCode::InvalidArgument, "at most 5 wires are supported");
  }
  std::set<std::string> unique(wires_.begin(), wires_.end());
  if (unique.size() != wires_.size()) throw Error(ErrorCode::DuplicateWire, "wire labels must be unique");
  if (static_cast<std::size_t>(amplitudes_.size()) != (std::size_t{1} << wires_.size())) {
    throw Error(ErrorCode::DimensionMismatch, "amplitude count must be 2^wires");
  }
  if (!all_finite(amplitudes_)) throw Error(ErrorCode::NonFinite, "amplitudes must be finite");
  const double norm2 = amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > tol.norm) {
    throw Error(ErrorCode::NotNormalized, "squared norm is " + std::to_string(norm2));
  }
}

PureState PureState::normalized(std::vector<std::string> wires, CVector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw Error(ErrorCode::NotNormalized, "zero or non-finite vector");
  return PureState(std::move(wires), amplitudes / norm);
}

PureState PureState::basis(std::vector<std::string> wires, std::size_t index) {
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(std::size_t{1} << wires.size()));
  if (index >= static_cast<std::size_t>(amps.size())) throw Error(ErrorCode::DimensionMismatch, "basis index out of range");
  amps(static_cast<Eigen::Index>(index)) = 1.0;
  return PureState(std::move(wires), std::move(amps));
}

std::optional<std::size_t> PureState::wire_position(const std::string& label) const {
  const auto it = std::find(wires_.begin(), wires_.end(), label);
  if (it == wires_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - wires_.begin());
}

std::size_t PureState::require_wire(const std::string& label) const {
  const auto pos = wire_position(label);
  if (!pos) throw Error(ErrorCode::UnknownWire, "no wire named '" + label + "'");
  return *pos;
}

PureState PureState::reordered(const std::vector<std::string>& order) const {
  if (order.size() != wires_.size()) throw Error(ErrorCode::WireMismatch, "wire sets differ");
  const std::size_t n = wires_.size();
  std::vector<std::size_t> source_pos(n);
  for (std::size_t q = 0; q < n; ++q) {
    const auto pos = wire_position(order[q]);
    if (!pos) throw Error(ErrorCode::WireMismatch, "wire sets differ at '" + order[q] + "'");
    source_pos[q] = *pos;
  }
  CVector out(amplitudes_.size());
  for (std::size_t f = 0; f < dim(); ++f) {
    std::size_t src = 0;
    for (std::size_t q = 0; q < n; ++q) {
      const std::size_t bit = (f >> (n - 1 - q)) & 1u;
      src |= bit << (n - 1 - source_pos[q]);
    }
    out(static_cast<Eigen::Index>(f)) = amplitudes_(static_cast<Eigen::Index>(src));
  }
  return PureState(order, std::move(out));
}

// ------------------------------------------------------------ LocalOperator

LocalOperator::LocalOperator(CMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || !is_power_of_two(static_cast<std::size_t>(matrix_.rows())) ||
      matrix_.rows() > (1 << kMaxWires)) {
    throw Error(ErrorCode::DimensionMismatch, "operator must be square with power-of-two dimension");
  }
  if (!matrix_.allFinite()) throw Error(ErrorCode::NonFinite, "operator entries must be finite");
}

LocalOperator LocalOperator::identity(std::size_t dim) {
  return LocalOperator(CMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)));
}

std::size_t LocalOperator::num_qubits() const noexcept { return log2_exact(dim()); }

double LocalOperator::unitarity_error() const {
  const CMatrix gram = matrix_.adjoint() * matrix_ - CMatrix::Identity(matrix_.rows(), matrix_.cols());
  return gram.cwiseAbs().maxCoeff();
}

LocalOperator LocalOperator::operator*(const LocalOperator& rhs) const {
  if (dim() != rhs.dim()) throw Error(ErrorCode::DimensionMismatch, "operator product dimension mismatch");
  return LocalOperator(matrix_ * rhs.matrix_);
}

LocalOperator LocalOperator::kron(const LocalOperator& rhs) const {
  const Eigen::Index n = matrix_.rows();
  const Eigen::Index m = rhs.matrix_.rows();
  CMatrix out(n * m, n * m);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out.block(i * m, j * m, m, m) = matrix_(i, j) * rhs.matrix_;
    }
  }
  return LocalOperator(std::move(out));
}

// --------------------------------------------------------- MeasurementBasis

MeasurementBasis::MeasurementBasis(std::vector<CVector> vectors, const Tolerances& tol)
    : vectors_(std::move(vectors)) {
  const std::size_t d = vectors_.size();
  if (!is_power_of_two(d)) throw Error(ErrorCode::DimensionMismatch, "basis size must be a power of two");
  for (const auto& v : vectors_) {
    if (static_cast<std::size_t>(v.size()) != d) throw Error(ErrorCode::DimensionMismatch, "basis vector length mismatch");
    if (!all_finite(v)) throw Error(ErrorCode::NonFinite, "basis entries must be finite");
  }
  const double err = orthonormality_error();
  if (err > tol.unitarity) {
    throw Error(ErrorCode::InvalidArgument, "basis is not orthonormal (error " + std::to_string(err) + ")");
  }
}

double MeasurementBasis::orthonormality_error() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    for (std::size_t j = 0; j < vectors_.size(); ++j) {
      const Amplitude overlap = vectors_[i].dot(vectors_[j]);  // conjugates the left side
      worst = std::max(worst, std::abs(overlap - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

LocalOperator MeasurementBasis::as_operator() const {
  const auto d = static_cast<Eigen::Index>(dim());
  CMatrix m(d, d);
  for (Eigen::Index k = 0; k < d; ++k) m.col(k) = vectors_[static_cast<std::size_t>(k)];
  return LocalOperator(std::move(m));
}

MeasurementBasis computational_basis(std::size_t num_qubits) {
  const std::size_t d = std::size_t{1} << num_qubits;
  std::vector<CVector> vs;
  for (std::size_t k = 0; k < d; ++k) {
    CVector v = CVector::Zero(static_cast<Eigen::Index>(d));
    v(static_cast<Eigen::Index>(k)) = 1.0;
    vs.push_back(std::move(v));
  }
  return MeasurementBasis(std::move(vs));
}

// ---------------------------------------------------------------- Schmidt

PureState SchmidtPair::reconstruct(const std::string& left_wire, const std::string& right_wire) const {
  CVector amps = CVector::Zero(4);
  const double weights[2] = {std::sqrt(std::max(lambda_small, 0.0)), std::sqrt(std::max(lambda_large, 0.0))};
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) amps(2 * i + j) += weights[k] * basis_left[k](i) * basis_right[k](j);
    }
  }
  return PureState::normalized({left_wire, right_wire}, std::move(amps));
}

SchmidtPair schmidt_of_matrix(const Eigen::Matrix2cd& amplitudes, const Tolerances& tol) {
  const double total = amplitudes.norm();
  if (!(total > 0.0)) throw Error(ErrorCode::NotNormalized, "zero two-qubit amplitude matrix");
  const Eigen::Matrix2cd m = amplitudes / total;

  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double s_large = svd.singularValues()(0);
  const double s_small = svd.singularValues()(1);
  const double sum = s_large * s_large + s_small * s_small;

  SchmidtPair out;
  out.lambda_small = s_small * s_small / sum;
  out.lambda_large = 1.0 - out.lambda_small;

  const double weights[2] = {s_small, s_large};
  if (s_large - s_small < tol.rank) {
    // Equal coefficients: any unitary of the left basis works; pin it to
    // the computational basis and derive the right basis from it.
    out.basis_left[0] = Qubit(1.0, 0.0);
    out.basis_left[1] = Qubit(0.0, 1.0);
    Qubit r0 = m.row(0).transpose();
    Qubit r1 = m.row(1).transpose();
    r0 /= r0.norm();
    r1 -= r0 * r0.dot(r1);
    r1 /= r1.norm();
    out.basis_right[0] = r0;
    out.basis_right[1] = r1;
    return out;
  }

  out.basis_left[0] = phase_gauged(svd.matrixU().col(1));
  out.basis_left[1] = phase_gauged(svd.matrixU().col(0));
  // right_k = (left_k^dag M)^T / sigma_k, so sum_k sigma_k left_k right_k = M.
  out.basis_right[1] = (out.basis_left[1].adjoint() * m).transpose() / weights[1];
  if (s_small < tol.rank) {
    out.basis_right[0] = phase_gauged(orthogonal_complement(out.basis_right[1]));
  } else {
    out.basis_right[0] = (out.basis_left[0].adjoint() * m).transpose() / weights[0];
  }
  return out;
}

SchmidtPair bipartite_schmidt(const PureState& state, const std::string& left, const std::string& right,
                              const Tolerances& tol) {
  if (state.num_wires() != 2) throw Error(ErrorCode::WireMismatch, "Schmidt decomposition needs exactly two wires");
  const PureState ordered = state.reordered({left, right});
  Eigen::Matrix2cd m;
  m << ordered.amplitude(0), ordered.amplitude(1), ordered.amplitude(2), ordered.amplitude(3);
  return schmidt_of_matrix(m, tol);
}

// ---------------------------------------------------------------- ops

PureState tensor(const PureState& left, const PureState& right) {
  std::vector<std::string> wires = left.wires();
  for (const auto& w : right.wires()) {
    if (left.wire_position(w)) throw Error(ErrorCode::DuplicateWire, "wire '" + w + "' on both sides");
    wires.push_back(w);
  }
  const auto m = static_cast<Eigen::Index>(right.dim());
  CVector amps(static_cast<Eigen::Index>(left.dim()) * m);
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(left.dim()); ++i) {
    amps.segment(i * m, m) = left.amplitudes()(i) * right.amplitudes();
  }
  return PureState(std::move(wires), std::move(amps));
}

PureState apply_local(const PureState& state, const LocalOperator& op, const std::vector<std::string>& targets,
                      const Tolerances& tol) {
  if (op.dim() != (std::size_t{1} << targets.size())) {
    throw Error(ErrorCode::DimensionMismatch, "operator dimension does not match the target count");
  }
  if (!op.is_unitary(tol)) throw Error(ErrorCode::InvalidArgument, "operator is not unitary");
  const WireSplit split = split_wires(state, targets);
  const auto ld = static_cast<Eigen::Index>(split.local_dim);
  CVector out(state.amplitudes().size());
  CVector local(ld);
  for (std::size_t r = 0; r < split.rest_dim; ++r) {
    const std::size_t* row = &split.full[r * split.local_dim];
    for (Eigen::Index l = 0; l < ld; ++l) local(l) = state.amplitude(row[l]);
    const CVector mapped = op.matrix() * local;
    for (Eigen::Index l = 0; l < ld; ++l) out(static_cast<Eigen::Index>(row[l])) = mapped(l);
  }
  // Unitary within tol.unitarity still leaves ~1e-9 norm drift; renormalize.
  return PureState::normalized(state.wires(), std::move(out));
}

std::vector<MeasurementOutcome> measure(const PureState& state, const MeasurementBasis& basis,
                                        const std::vector<std::string>& targets, const Tolerances& tol) {
  if (basis.dim() != (std::size_t{1} << targets.size())) {
    throw Error(ErrorCode::DimensionMismatch, "basis dimension does not match the target count");
  }
  const WireSplit split = split_wires(state, targets);
  std::vector<MeasurementOutcome> outcomes;
  outcomes.reserve(basis.dim());
  for (std::size_t k = 0; k < basis.dim(); ++k) {
    const CVector& v = basis.vector(k);
    CVector rest(static_cast<Eigen::Index>(split.rest_dim));
    for (std::size_t r = 0; r < split.rest_dim; ++r) {
      Amplitude acc = 0.0;
      for (std::size_t l = 0; l < split.local_dim; ++l) {
        acc += std::conj(v(static_cast<Eigen::Index>(l))) * state.amplitude(split.full[r * split.local_dim + l]);
      }
      rest(static_cast<Eigen::Index>(r)) = acc;
    }
    MeasurementOutcome outcome;
    outcome.outcome = k;
    outcome.probability = rest.squaredNorm();
    if (outcome.probability >= tol.probability_floor) {
      outcome.collapsed = PureState::normalized(split.rest_wires, std::move(rest));
    }
    outcomes.push_back(std::move(outcome));
  }
  return outcomes;
}

double fidelity(const PureState& a, const PureState& b) {
  const PureState aligned = b.reordered(a.wires());
  const double f = std::norm(a.amplitudes().dot(aligned.amplitudes()));
  return std::clamp(f, 0.0, 1.0);
}

CVector phase_gauged(const CVector& v, double threshold) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > threshold) return v * (std::conj(v(i)) / mag);
  }
  return v;
}

std::vector<std::string> default_wire_labels(std::size_t num_wires) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < num_wires; ++i) labels.push_back("q" + std::to_string(i));
  return labels;
}

PureState haar_random_state(std::vector<std::string> wires, Rng& rng) {
  if (wires.empty() || wires.size() > kMaxWires) throw Error(ErrorCode::InvalidArgument, "1..5 wires required");
  CVector amps(static_cast<Eigen::Index>(std::size_t{1} << wires.size()));
  for (Eigen::Index i = 0; i < amps.size(); ++i) amps(i) = rng.complex_normal();
  return PureState::normalized(std::move(wires), std::move(amps));
}

PureState haar_random_state(std::size_t num_wires, std::uint64_t seed) {
  Rng rng(seed);
  return haar_random_state(default_wire_labels(num_wires), rng);
}

}  // namespace crsp
