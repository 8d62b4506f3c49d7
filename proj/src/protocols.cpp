#include "crsp/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>

namespace crsp {

namespace {

constexpr double kPi = std::numbers::pi;

// One entry of Alice's measurement matrix, written in terms of the target
// coefficients t[k]: sign * zeta^zeta_power * (conjugated ? conj(t[index]) : t[index]).
//
// Bob's collapsed state carries conj(entry) weighted by sqrt(lambda) of the
// Schmidt term, so the same table tells him which signed permutation undoes
// the pattern and whether the pattern can be undone at all.
struct RowEntry {
  int index;
  int sign;
  bool conjugated;
  int zeta_power;
};

template <std::size_t N>
using Row = std::array<RowEntry, N>;

// {|mu0>, |mu1>} = [[a, b], [b*, -a*]] on {|0'>, |1'>}.
constexpr std::array<Row<2>, 2> kSingleRows{{
    {{{0, +1, false, 0}, {1, +1, false, 0}}},
    {{{1, +1, true, 0}, {0, -1, true, 0}}},
}};

// Real two-qubit basis on {|0'0>, |0'1>, |1'0>, |1'1>}.
constexpr std::array<Row<4>, 4> kTwoRealRows{{
    {{{0, +1, false, 0}, {1, +1, false, 0}, {2, +1, false, 0}, {3, +1, false, 0}}},
    {{{1, +1, false, 0}, {0, -1, false, 0}, {3, -1, false, 0}, {2, +1, false, 0}}},
    {{{2, +1, false, 0}, {3, +1, false, 0}, {0, -1, false, 0}, {1, -1, false, 0}}},
    {{{3, +1, false, 0}, {2, -1, false, 0}, {1, +1, false, 0}, {0, -1, false, 0}}},
}};

// Complex two-qubit basis with zeta weights.
constexpr std::array<Row<4>, 4> kTwoComplexRows{{
    {{{0, +1, true, 0}, {1, -1, true, 0}, {2, +1, true, 0}, {3, -1, true, 0}}},
    {{{0, +1, true, 1}, {1, -1, true, 1}, {2, -1, true, -1}, {3, +1, true, -1}}},
    {{{1, -1, false, 0}, {0, -1, false, 0}, {3, -1, false, 0}, {2, -1, false, 0}}},
    {{{1, -1, false, 1}, {0, -1, false, 1}, {3, +1, false, -1}, {2, +1, false, -1}}},
}};

template <std::size_t N>
Amplitude entry_value(const RowEntry& e, const std::array<Amplitude, N>& t, double zeta) {
  const Amplitude base = e.conjugated ? std::conj(t[static_cast<std::size_t>(e.index)])
                                      : t[static_cast<std::size_t>(e.index)];
  return static_cast<double>(e.sign) * std::pow(zeta, e.zeta_power) * base;
}

// Bob sees conj(entry): unconjugated coefficients iff the entry is conjugated.
template <std::size_t N>
bool row_correctable(const Row<N>& row, CoefficientClass cls) {
  if (cls == CoefficientClass::Real) return std::all_of(row.begin(), row.end(), [](const RowEntry& e) {
      return e.zeta_power == 0;
    });
  for (const auto& e : row) {
    if (!e.conjugated) return false;
    if (e.zeta_power != 0 && cls != CoefficientClass::ComplexZetaOne) return false;
  }
  return true;
}

// Schmidt-frame basis state for register index m: Alice's Schmidt vector for
// the leading bit, computational basis for the remaining ones.
CVector frame_vector(std::size_t m, std::size_t extra_bits, const std::array<Qubit, 2>& left) {
  const std::size_t schmidt = m >> extra_bits;
  const std::size_t rest = m & ((std::size_t{1} << extra_bits) - 1);
  const std::size_t rest_dim = std::size_t{1} << extra_bits;
  CVector v = CVector::Zero(static_cast<Eigen::Index>(2 * rest_dim));
  for (std::size_t i = 0; i < 2; ++i) {
    v(static_cast<Eigen::Index>(i * rest_dim + rest)) = left[schmidt](static_cast<Eigen::Index>(i));
  }
  return v;
}

template <std::size_t N>
MeasurementBasis basis_from_rows(const std::array<Row<N>, N>& rows, const std::array<Amplitude, N>& t,
                                 double zeta, const std::array<Qubit, 2>& left, const Tolerances& tol) {
  const std::size_t extra_bits = N == 2 ? 0 : 1;
  std::vector<CVector> vectors;
  for (const auto& row : rows) {
    CVector v = CVector::Zero(static_cast<Eigen::Index>(N));
    for (std::size_t m = 0; m < N; ++m) v += entry_value(row[m], t, zeta) * frame_vector(m, extra_bits, left);
    vectors.push_back(std::move(v));
  }
  return MeasurementBasis(std::move(vectors), tol);
}

// Amplitude-balancing block after the signed permutation, over (register, aux).
template <std::size_t N>
LocalOperator correction_from_row(const Row<N>& row, double lambda_small, double lambda_large) {
  if (!(lambda_large > 1e-12)) throw Error(ErrorCode::DegenerateSchmidt, "lambda_large must be positive");
  if (lambda_small > lambda_large + 1e-12 || lambda_small < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "need 0 <= lambda_small <= lambda_large");
  }
  const std::size_t extra_bits = N == 2 ? 0 : 1;
  const auto dim = static_cast<Eigen::Index>(2 * N);

  CMatrix perm = CMatrix::Zero(dim, dim);
  std::array<bool, N> heavy{};
  for (std::size_t m = 0; m < N; ++m) {
    const auto to = static_cast<std::size_t>(row[m].index);
    for (Eigen::Index x = 0; x < 2; ++x) {
      perm(static_cast<Eigen::Index>(2 * to) + x, static_cast<Eigen::Index>(2 * m) + x) = row[m].sign;
    }
    if ((m >> extra_bits) == 1) heavy[to] = true;
  }

  const double ratio = std::clamp(lambda_small / lambda_large, 0.0, 1.0);
  const double r = std::sqrt(ratio);
  const double s = std::sqrt(1.0 - ratio);
  CMatrix balance = CMatrix::Identity(dim, dim);
  for (std::size_t n = 0; n < N; ++n) {
    if (!heavy[n]) continue;
    const auto k = static_cast<Eigen::Index>(2 * n);
    balance(k, k) = r;
    balance(k + 1, k) = s;
    balance(k, k + 1) = -s;
    balance(k + 1, k + 1) = r;
  }
  return LocalOperator(balance * perm);
}

void check_outcome(int outcome, int count) {
  if (outcome < 0 || outcome >= count) throw Error(ErrorCode::InvalidArgument, "Alice outcome out of range");
}

// Rotates Bob's b from the computational basis into coordinates of his
// Schmidt basis, which double as the target frame.
LocalOperator frame_rotation(const std::array<Qubit, 2>& right) {
  CMatrix f(2, 2);
  f.row(0) = right[0].adjoint();
  f.row(1) = right[1].adjoint();
  return LocalOperator(std::move(f));
}

LocalOperator with_identity(const LocalOperator& op, std::size_t identity_qubits) {
  return op.kron(LocalOperator::identity(std::size_t{1} << identity_qubits));
}

template <std::size_t N>
bool approx_real(const std::array<Amplitude, N>& t, double tol) {
  return std::all_of(t.begin(), t.end(), [tol](const Amplitude& z) { return std::abs(z.imag()) <= tol; });
}

template <std::size_t N>
std::array<Amplitude, N> canonicalized(std::array<Amplitude, N> t) {
  for (const auto& z : t) {
    const double mag = std::abs(z);
    if (mag > 1e-12) {
      const Amplitude phase = std::conj(z) / mag;
      for (auto& w : t) w *= phase;
      break;
    }
  }
  return t;
}

template <std::size_t N>
double squared_norm(const std::array<Amplitude, N>& t) {
  double s = 0.0;
  for (const auto& z : t) s += std::norm(z);
  return s;
}

// Charlie's qubit must be entangled with (a, b): a0 > 0 and (a2, a3, a4) not
// all zero. Otherwise one of his settings yields nothing to control.
void require_controllable(const CanonicalCoefficients& channel, const Tolerances& tol) {
  const double tail = channel.a[2] * channel.a[2] + channel.a[3] * channel.a[3] + channel.a[4] * channel.a[4];
  if (channel.a[0] * channel.a[0] <= tol.probability_floor || tail <= tol.probability_floor) {
    throw Error(ErrorCode::ChannelNotControllable, "Charlie's qubit is not entangled with Alice and Bob");
  }
}

void check_finite(std::span<const Amplitude> t) {
  for (const auto& z : t) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw Error(ErrorCode::NonFinite, "target coefficients");
  }
}

struct ProtocolLayout {
  std::vector<std::string> alice_wires;
  std::vector<std::string> bob_wires;
  std::size_t bob_extra_qubits;
};

struct AliceStage {
  MeasurementBasis basis;
  std::vector<int> correctable;
};

const std::string kAux = "aux";

// Runs Alice's measurement and Bob's response for one Charlie outcome and
// appends the resulting branches.
template <typename CorrectionFn>
void enumerate_alice_and_bob(const PureState& after_charlie, int charlie_outcome, double charlie_prob,
                             const MeasurementBasis& alice_basis, const SchmidtPair& schmidt,
                             const ProtocolLayout& layout, const PureState& target_state,
                             CorrectionFn&& correction_for, const Tolerances& tol,
                             std::vector<BranchRecord>& out) {
  const auto alice = measure(after_charlie, alice_basis, layout.alice_wires, tol);
  const LocalOperator frame = frame_rotation(schmidt.basis_right);
  for (const auto& a : alice) {
    BranchRecord base;
    base.charlie_outcome = charlie_outcome;
    base.charlie_prob = charlie_prob;
    base.alice_outcome = static_cast<int>(a.outcome);
    base.alice_prob = a.probability;
    if (!a.collapsed) {
      base.joint_prob = charlie_prob * a.probability;
      out.push_back(std::move(base));
      continue;
    }
    const PureState bob = a.collapsed->reordered(layout.bob_wires);
    const std::optional<LocalOperator> correction = correction_for(base.alice_outcome);
    if (!correction) {
      base.joint_prob = charlie_prob * a.probability;
      PureState rotated = apply_local(bob, frame, {layout.bob_wires[0]}, tol);
      base.fidelity_to_target = fidelity(target_state, rotated);
      base.bob_final = std::move(rotated);
      out.push_back(std::move(base));
      continue;
    }
    const LocalOperator full =
        *correction * with_identity(frame, layout.bob_extra_qubits + 1);
    std::vector<std::string> targets = layout.bob_wires;
    targets.push_back(kAux);
    const PureState prepared = apply_local(tensor(bob, PureState::basis({kAux}, 0)), full, targets, tol);
    for (const auto& x : measure(prepared, computational_basis(1), {kAux}, tol)) {
      BranchRecord rec = base;
      rec.bob_aux_outcome = static_cast<int>(x.outcome);
      rec.bob_aux_prob = x.probability;
      rec.joint_prob = charlie_prob * a.probability * x.probability;
      if (x.collapsed) {
        rec.fidelity_to_target = fidelity(target_state, *x.collapsed);
        rec.success = x.outcome == 0 && *rec.fidelity_to_target >= 1.0 - tol.success_fidelity;
        rec.bob_final = *x.collapsed;
      }
      out.push_back(std::move(rec));
    }
  }
}

void finalize(ProtocolReport& report) {
  report.enumerated_success = 0.0;
  for (const auto& b : report.branches) {
    if (b.success) report.enumerated_success += b.joint_prob;
  }
}

// zeta for the complex basis, which needs both halves of the target.
double complex_zeta(const TargetTwoQubit& t) {
  const auto zeta = t.zeta();
  if (!zeta) throw Error(ErrorCode::DegenerateTarget, "|alpha|^2 + |beta|^2 vanishes; use the single-qubit protocol");
  if (std::norm(t.gamma) + std::norm(t.delta) <= 1e-10) {
    throw Error(ErrorCode::DegenerateTarget, "|gamma|^2 + |delta|^2 vanishes; use the single-qubit protocol");
  }
  return *zeta;
}

ControllerSetting checked(const ControllerSetting& s) {
  s.validate();
  return s;
}

}  // namespace

// ------------------------------------------------------------ value types

void ControllerSetting::validate() const {
  constexpr double slack = 1e-12;
  if (!std::isfinite(theta) || theta < -slack || theta > kPi + slack) {
    throw Error(ErrorCode::InvalidArgument, "theta must lie in [0, pi]");
  }
  if (!std::isfinite(eta) || eta < -slack || eta > 2.0 * kPi + slack) {
    throw Error(ErrorCode::InvalidArgument, "eta must lie in [0, 2 pi]");
  }
}

void TargetQubit::validate(const Tolerances& tol) const {
  const auto t = coefficients();
  check_finite(t);
  if (std::abs(squared_norm(t) - 1.0) > tol.real_class) throw Error(ErrorCode::NotNormalized, "target qubit norm");
}

void TargetTwoQubit::validate(const Tolerances& tol) const {
  const auto t = coefficients();
  check_finite(t);
  if (std::abs(squared_norm(t) - 1.0) > tol.real_class) throw Error(ErrorCode::NotNormalized, "target two-qubit norm");
}

std::optional<double> TargetTwoQubit::zeta() const {
  const double head = std::norm(alpha) + std::norm(beta);
  if (head <= 1e-10) return std::nullopt;
  return std::sqrt((std::norm(gamma) + std::norm(delta)) / head);
}

std::string_view to_string(CoefficientClass cls) {
  switch (cls) {
    case CoefficientClass::Real: return "real";
    case CoefficientClass::ComplexGeneral: return "complex";
    case CoefficientClass::ComplexZetaOne: return "complex_zeta1";
  }
  return "unknown";
}

std::string_view to_string(ProtocolKind kind) { return kind == ProtocolKind::Crsp1 ? "crsp1" : "crsp2"; }

TargetQubit canonicalize_phase(const TargetQubit& target) {
  const auto t = canonicalized(target.coefficients());
  return {t[0], t[1]};
}

TargetTwoQubit canonicalize_phase(const TargetTwoQubit& target) {
  const auto t = canonicalized(target.coefficients());
  return {t[0], t[1], t[2], t[3]};
}

CoefficientClass classify(const TargetQubit& target, const Tolerances& tol) {
  return approx_real(canonicalize_phase(target).coefficients(), tol.real_class) ? CoefficientClass::Real
                                                                               : CoefficientClass::ComplexGeneral;
}

CoefficientClass classify(const TargetTwoQubit& target, const Tolerances& tol) {
  const TargetTwoQubit t = canonicalize_phase(target);
  if (approx_real(t.coefficients(), tol.real_class)) return CoefficientClass::Real;
  const auto z = t.zeta();
  if (z && std::abs(*z - 1.0) <= tol.zeta_one) return CoefficientClass::ComplexZetaOne;
  return CoefficientClass::ComplexGeneral;
}

// ------------------------------------------------------------ Charlie

MeasurementBasis charlie_basis(const ControllerSetting& setting) {
  const double c = std::cos(setting.theta / 2.0);
  const double s = std::sin(setting.theta / 2.0);
  const Amplitude phase = std::polar(1.0, setting.eta);
  CVector e0(2), e1(2);
  e0 << c, phase * s;
  e1 << s, -phase * c;
  return MeasurementBasis({e0, e1});
}

std::pair<double, double> charlie_closed_form(const CanonicalCoefficients& channel,
                                              const ControllerSetting& setting) {
  const double a0 = channel.a[0];
  const double a1 = channel.a[1];
  const double half = std::sin(setting.theta / 2.0);
  const double cross = a0 * a1 * std::cos(channel.mu - setting.eta) * std::sin(setting.theta);
  const double p0 = half * half + a0 * a0 * std::cos(setting.theta) + cross;
  return {p0, 1.0 - p0};
}

// ------------------------------------------------------------ Alice

MeasurementBasis alice_basis_single(const TargetQubit& target, const std::array<Qubit, 2>& left,
                                    const Tolerances& tol) {
  target.validate(tol);
  return basis_from_rows(kSingleRows, target.coefficients(), 1.0, left, tol);
}

MeasurementBasis alice_basis_two_real(const TargetTwoQubit& target, const std::array<Qubit, 2>& left,
                                      const Tolerances& tol) {
  target.validate(tol);
  const TargetTwoQubit t = canonicalize_phase(target);
  if (!approx_real(t.coefficients(), tol.real_class)) {
    throw Error(ErrorCode::NotRealCoefficients, "real basis needs real coefficients");
  }
  return basis_from_rows(kTwoRealRows, t.coefficients(), 1.0, left, tol);
}

MeasurementBasis alice_basis_two_complex(const TargetTwoQubit& target, const std::array<Qubit, 2>& left,
                                         const Tolerances& tol) {
  target.validate(tol);
  const auto zeta = complex_zeta(target);
  return basis_from_rows(kTwoComplexRows, target.coefficients(), zeta, left, tol);
}

// ------------------------------------------------------------ Bob

bool correction_exists_single(int alice_outcome, CoefficientClass cls) {
  check_outcome(alice_outcome, 2);
  return row_correctable(kSingleRows[static_cast<std::size_t>(alice_outcome)], cls);
}

bool correction_exists_two(int alice_outcome, CoefficientClass cls) {
  check_outcome(alice_outcome, 4);
  const auto& rows = cls == CoefficientClass::Real ? kTwoRealRows : kTwoComplexRows;
  return row_correctable(rows[static_cast<std::size_t>(alice_outcome)], cls);
}

LocalOperator bob_correction_single(int alice_outcome, double lambda_small, double lambda_large,
                                    CoefficientClass cls) {
  if (!correction_exists_single(alice_outcome, cls)) {
    throw Error(ErrorCode::NoCorrectionExists, "Bob receives conjugated coefficients");
  }
  return correction_from_row(kSingleRows[static_cast<std::size_t>(alice_outcome)], lambda_small, lambda_large);
}

LocalOperator bob_correction_two(int alice_outcome, double lambda_small, double lambda_large,
                                 CoefficientClass cls) {
  if (!correction_exists_two(alice_outcome, cls)) {
    throw Error(ErrorCode::NoCorrectionExists, "outcome cannot be corrected without knowing the target");
  }
  const auto& rows = cls == CoefficientClass::Real ? kTwoRealRows : kTwoComplexRows;
  return correction_from_row(rows[static_cast<std::size_t>(alice_outcome)], lambda_small, lambda_large);
}

// ------------------------------------------------------------ reports

double ProtocolReport::total_probability() const {
  double total = 0.0;
  for (const auto& b : branches) total += b.joint_prob;
  return total;
}

std::optional<std::string> ProtocolReport::invariant_violation(const Tolerances& tol) const {
  if (std::abs(total_probability() - 1.0) > tol.conservation) return "branch probabilities do not sum to 1";
  if (closed_form_gap() > tol.reconciliation) return "enumerated success differs from the closed form";
  double success = 0.0;
  for (const auto& b : branches) {
    if (std::abs(b.joint_prob - b.charlie_prob * b.alice_prob * b.bob_aux_prob) > 1e-12) {
      return "joint probability is not the product of the conditionals";
    }
    if (b.success) {
      if (!b.fidelity_to_target || *b.fidelity_to_target < 1.0 - tol.success_fidelity) {
        return "success branch below fidelity threshold";
      }
      success += b.joint_prob;
    }
  }
  if (std::abs(success - enumerated_success) > 1e-12) return "enumerated success is not the success-branch sum";
  const int expected_cbits = protocol == ProtocolKind::Crsp1 ? 2 : 3;
  if (cbits_used != expected_cbits) return "unexpected classical bit count";
  return std::nullopt;
}

double closed_form_single(CoefficientClass cls, double p0, double lambda00, double p1, double lambda10) {
  const double base = p0 * lambda00 + p1 * lambda10;
  return cls == CoefficientClass::Real ? 2.0 * base : base;
}

double closed_form_two(CoefficientClass cls, double p0, double lambda00, double p1, double lambda10) {
  const double base = p0 * lambda00 + p1 * lambda10;
  switch (cls) {
    case CoefficientClass::Real: return 2.0 * base;
    case CoefficientClass::ComplexZetaOne: return base;
    case CoefficientClass::ComplexGeneral: return 0.5 * base;
  }
  return 0.0;
}

// ------------------------------------------------------------ protocols

ProtocolReport run_crsp_single(const CanonicalCoefficients& channel, const ControllerSetting& setting,
                               const TargetQubit& target, const Tolerances& tol) {
  const ControllerSetting cs = checked(setting);
  target.validate(tol);
  const CoefficientClass cls = classify(target, tol);
  const TargetQubit t = canonicalize_phase(target);
  const PureState target_state = PureState::normalized({"b"}, Qubit(t.alpha, t.beta));

  ProtocolReport report;
  report.protocol = ProtocolKind::Crsp1;
  report.target_class = cls;
  report.cbits_used = 2;

  require_controllable(channel, tol);
  const PureState state = canonical_state(channel);
  const auto charlie = measure(state, charlie_basis(cs), {"c"}, tol);
  for (const auto& o : charlie) {
    if (!o.collapsed) throw Error(ErrorCode::ChannelNotControllable, "a Charlie outcome has zero probability");
  }
  const ProtocolLayout layout{{"a"}, {"b"}, 0};
  for (const auto& o : charlie) {
    const SchmidtPair schmidt = bipartite_schmidt(*o.collapsed, "a", "b", tol);
    const int k = static_cast<int>(o.outcome);
    (k == 0 ? report.p0 : report.p1) = o.probability;
    (k == 0 ? report.lambda00 : report.lambda10) = schmidt.lambda_small;
    (k == 0 ? report.lambda01 : report.lambda11) = schmidt.lambda_large;

    const MeasurementBasis basis = alice_basis_single(t, schmidt.basis_left, tol);
    auto correction = [&](int j) -> std::optional<LocalOperator> {
      if (!correction_exists_single(j, cls)) return std::nullopt;
      return bob_correction_single(j, schmidt.lambda_small, schmidt.lambda_large, cls);
    };
    enumerate_alice_and_bob(*o.collapsed, k, o.probability, basis, schmidt, layout, target_state, correction, tol,
                            report.branches);
  }
  const auto [cp0, cp1] = charlie_closed_form(channel, cs);
  report.closed_form_success = closed_form_single(cls, cp0, report.lambda00, cp1, report.lambda10);
  finalize(report);
  return report;
}

ProtocolReport run_crsp_two(const CanonicalCoefficients& channel, const ControllerSetting& setting,
                            const TargetTwoQubit& target, const Tolerances& tol) {
  const ControllerSetting cs = checked(setting);
  target.validate(tol);
  const CoefficientClass cls = classify(target, tol);
  const TargetTwoQubit t = canonicalize_phase(target);
  if (cls != CoefficientClass::Real) complex_zeta(t);
  CVector tv(4);
  tv << t.alpha, t.beta, t.gamma, t.delta;
  const PureState target_state = PureState::normalized({"b", "b'"}, tv);

  ProtocolReport report;
  report.protocol = ProtocolKind::Crsp2;
  report.target_class = cls;
  report.cbits_used = 3;

  require_controllable(channel, tol);
  const PureState channel_state = canonical_state(channel);
  CVector bell = CVector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  const PureState state = tensor(channel_state, PureState({"a'", "b'"}, bell));

  const MeasurementBasis cb = charlie_basis(cs);
  const auto charlie_small = measure(channel_state, cb, {"c"}, tol);
  const auto charlie = measure(state, cb, {"c"}, tol);
  for (const auto& o : charlie_small) {
    if (!o.collapsed) throw Error(ErrorCode::ChannelNotControllable, "a Charlie outcome has zero probability");
  }
  const ProtocolLayout layout{{"a", "a'"}, {"b", "b'"}, 1};
  for (std::size_t k = 0; k < 2; ++k) {
    const SchmidtPair schmidt = bipartite_schmidt(*charlie_small[k].collapsed, "a", "b", tol);
    const double prob = charlie[k].probability;
    (k == 0 ? report.p0 : report.p1) = prob;
    (k == 0 ? report.lambda00 : report.lambda10) = schmidt.lambda_small;
    (k == 0 ? report.lambda01 : report.lambda11) = schmidt.lambda_large;

    const MeasurementBasis basis = cls == CoefficientClass::Real ? alice_basis_two_real(t, schmidt.basis_left, tol)
                                                                 : alice_basis_two_complex(t, schmidt.basis_left, tol);
    auto correction = [&](int j) -> std::optional<LocalOperator> {
      if (!correction_exists_two(j, cls)) return std::nullopt;
      return bob_correction_two(j, schmidt.lambda_small, schmidt.lambda_large, cls);
    };
    enumerate_alice_and_bob(*charlie[k].collapsed, static_cast<int>(k), prob, basis, schmidt, layout, target_state,
                            correction, tol, report.branches);
  }
  const auto [cp0, cp1] = charlie_closed_form(channel, cs);
  report.closed_form_success = closed_form_two(cls, cp0, report.lambda00, cp1, report.lambda10);
  finalize(report);
  return report;
}

}  // namespace crsp
