#include "crsp/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

namespace crsp {

namespace {

constexpr double kPi = std::numbers::pi;

struct Slices {
  Eigen::Matrix2cd t0;
  Eigen::Matrix2cd t1;
};

Slices slices_of(const PureState& state) {
  Slices s;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      s.t0(a, b) = state.amplitude(static_cast<std::size_t>(2 * a + b));
      s.t1(a, b) = state.amplitude(static_cast<std::size_t>(4 + 2 * a + b));
    }
  }
  return s;
}

// Candidate first-row mixings of the c qubit; nullopt stands for x = infinity,
// i.e. the c basis swapped so that the new T0 is the old T1.
std::vector<std::optional<Amplitude>> mixing_roots(const Slices& s, double eps) {
  const Amplitude quad = s.t1.determinant();
  const Amplitude lin = s.t0(0, 0) * s.t1(1, 1) + s.t1(0, 0) * s.t0(1, 1) - s.t0(0, 1) * s.t1(1, 0) -
                        s.t1(0, 1) * s.t0(1, 0);
  const Amplitude cst = s.t0.determinant();

  std::vector<std::optional<Amplitude>> roots;
  if (std::abs(quad) > eps) {
    // Numerically stable pair of roots of quad x^2 + lin x + cst.
    Amplitude disc = std::sqrt(lin * lin - 4.0 * quad * cst);
    if (std::real(std::conj(lin) * disc) < 0.0) disc = -disc;
    const Amplitude q = -0.5 * (lin + disc);
    if (std::abs(q) > 0.0) {
      roots.emplace_back(q / quad);
      roots.emplace_back(cst / q);
    } else {
      roots.emplace_back(Amplitude{0.0});
    }
    return roots;
  }
  if (std::abs(lin) > eps) {
    roots.emplace_back(-cst / lin);
    roots.emplace_back(std::nullopt);
  } else if (std::abs(cst) > eps) {
    roots.emplace_back(std::nullopt);
  } else {
    // Every combination is singular; T0 already is.
    roots.emplace_back(Amplitude{0.0});
  }
  return roots;
}

Eigen::Matrix2cd mixing_unitary(const std::optional<Amplitude>& x) {
  Eigen::Matrix2cd u;
  if (!x) {
    u << 0.0, 1.0, 1.0, 0.0;
    return u;
  }
  const double n = std::sqrt(1.0 + std::norm(*x));
  u << 1.0 / n, *x / n, -std::conj(*x) / n, 1.0 / n;
  return u;
}

struct Candidate {
  CanonicalCoefficients coeffs;
  Eigen::Matrix2cd uc, ua, ub;
  bool mu_in_range = true;
};

double wrap_two_pi(double angle) {
  double w = std::fmod(angle, 2.0 * kPi);
  if (w < 0.0) w += 2.0 * kPi;
  return w;
}

Candidate build_candidate(const Slices& s, const Eigen::Matrix2cd& mix, double eps) {
  Eigen::Matrix2cd uc = mix;
  const Eigen::Matrix2cd t0p = mix(0, 0) * s.t0 + mix(0, 1) * s.t1;
  const Eigen::Matrix2cd t1p = mix(1, 0) * s.t0 + mix(1, 1) * s.t1;

  // A M B^T with A = U^dag, B = V^T diagonalizes M = U S V^dag.
  const Eigen::Matrix2cd& pivot = t0p.norm() > eps ? t0p : t1p;
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(pivot, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix2cd ua = svd.matrixU().adjoint();
  Eigen::Matrix2cd ub = svd.matrixV().transpose();

  Eigen::Matrix2cd r0 = ua * t0p * ub.transpose();
  Eigen::Matrix2cd r1 = ua * t1p * ub.transpose();

  // Diagonal phases: amplitude (c, a, b) picks up chi_c + alpha_a + beta_b,
  // with alpha_0 = beta_0 = 0, alpha_1 = da, beta_1 = db.
  auto nz = [eps](Amplitude z) { return std::abs(z) > eps; };
  const bool n100 = nz(r1(0, 0)), n101 = nz(r1(0, 1)), n110 = nz(r1(1, 0)), n111 = nz(r1(1, 1));
  const double p100 = std::arg(r1(0, 0)), p101 = std::arg(r1(0, 1));
  const double p110 = std::arg(r1(1, 0)), p111 = std::arg(r1(1, 1));
  double chi1 = 0.0, da = 0.0, db = 0.0;
  if (n101 && n110 && n111) {
    chi1 = p111 - p101 - p110;
    da = -p110 - chi1;
    db = -p101 - chi1;
  } else {
    // Fewer than three constraints: the |100> phase can be removed as well.
    chi1 = n100 ? -p100 : 0.0;
    bool has_da = false, has_db = false;
    if (n101) {
      db = -p101 - chi1;
      has_db = true;
    }
    if (n110) {
      da = -p110 - chi1;
      has_da = true;
    }
    if (n111) {
      if (has_db && !has_da) {
        da = -p111 - chi1 - db;
      } else if (has_da && !has_db) {
        db = -p111 - chi1 - da;
      } else if (!has_da && !has_db) {
        da = -p111 - chi1;
      }
    }
  }
  const double chi0 = nz(r0(0, 0)) ? -std::arg(r0(0, 0)) : 0.0;

  const Amplitude i{0.0, 1.0};
  uc.row(0) *= std::exp(i * chi0);
  uc.row(1) *= std::exp(i * chi1);
  ua.row(1) *= std::exp(i * da);
  ub.row(1) *= std::exp(i * db);
  r0(0, 0) *= std::exp(i * chi0);
  r1(0, 0) *= std::exp(i * chi1);
  r1(0, 1) *= std::exp(i * (chi1 + db));
  r1(1, 0) *= std::exp(i * (chi1 + da));
  r1(1, 1) *= std::exp(i * (chi1 + da + db));

  Candidate c;
  std::array<double, 5> a{std::abs(r0(0, 0)), std::abs(r1(0, 0)), std::abs(r1(0, 1)), std::abs(r1(1, 0)),
                          std::abs(r1(1, 1))};
  double sum = 0.0;
  for (double v : a) sum += v * v;
  for (double& v : a) v /= std::sqrt(sum);
  c.coeffs.a = a;

  double mu = 0.0;
  if (a[1] >= eps) {
    mu = wrap_two_pi(std::arg(r1(0, 0)));
    if (mu > 2.0 * kPi - eps) mu = 0.0;
  }
  c.mu_in_range = mu <= kPi + eps;
  c.coeffs.mu = std::clamp(mu, 0.0, kPi);
  c.uc = uc;
  c.ua = ua;
  c.ub = ub;
  return c;
}

bool second_singular_value_tiny(const Slices& s, double eps) {
  Eigen::Matrix<Amplitude, 2, 4> m;
  m.row(0) << s.t0(0, 0), s.t0(0, 1), s.t0(1, 0), s.t0(1, 1);
  m.row(1) << s.t1(0, 0), s.t1(0, 1), s.t1(1, 0), s.t1(1, 1);
  Eigen::JacobiSVD<Eigen::Matrix<Amplitude, 2, 4>> svd(m);
  return svd.singularValues()(1) < eps;
}

}  // namespace

void CanonicalCoefficients::validate(double norm_slack) const {
  double sum = 0.0;
  for (double v : a) {
    if (!std::isfinite(v) || v < -1e-12) throw Error(ErrorCode::InvalidCoefficients, "a_i must be non-negative");
    sum += v * v;
  }
  if (std::abs(sum - 1.0) > norm_slack) {
    throw Error(ErrorCode::InvalidCoefficients, "sum of a_i^2 is " + std::to_string(sum));
  }
  if (!std::isfinite(mu) || mu < 0.0 || mu > kPi) throw Error(ErrorCode::InvalidCoefficients, "mu must lie in [0, pi]");
}

CanonicalThreeQubit CanonicalThreeQubit::from_coefficients(const CanonicalCoefficients& coeffs) {
  coeffs.validate();
  CanonicalThreeQubit out;
  out.coeffs = coeffs;
  for (double& v : out.coeffs.a) v = std::max(v, 0.0);
  return out;
}

PureState canonical_state(const CanonicalCoefficients& coeffs, const std::vector<std::string>& wires) {
  coeffs.validate();
  if (wires.size() != 3) throw Error(ErrorCode::WireMismatch, "channel needs three wires");
  CVector amps = CVector::Zero(8);
  const auto& a = coeffs.a;
  amps(0b000) = std::max(a[0], 0.0);
  amps(0b100) = std::max(a[1], 0.0) * std::polar(1.0, coeffs.mu);
  amps(0b101) = std::max(a[2], 0.0);
  amps(0b110) = std::max(a[3], 0.0);
  amps(0b111) = std::max(a[4], 0.0);
  return PureState::normalized(wires, std::move(amps));
}

CanonicalThreeQubit acin_decompose(const PureState& state, const Tolerances& tol) {
  if (state.num_wires() != 3) throw Error(ErrorCode::WireMismatch, "canonical form needs a three-wire state");
  if (std::abs(state.amplitudes().squaredNorm() - 1.0) > tol.rank) {
    throw Error(ErrorCode::NotNormalized, "input state is not normalized");
  }
  const double eps = tol.rank;
  const Slices s = slices_of(state);
  const bool degenerate = second_singular_value_tiny(s, eps);

  std::vector<Candidate> candidates;
  if (degenerate) {
    // |g>_c (x) |phi>_ab: put |g> on |0> when phi is a product, on |1> otherwise.
    Eigen::Matrix<Amplitude, 2, 4> m;
    m.row(0) << s.t0(0, 0), s.t0(0, 1), s.t0(1, 0), s.t0(1, 1);
    m.row(1) << s.t1(0, 0), s.t1(0, 1), s.t1(1, 0), s.t1(1, 1);
    Eigen::JacobiSVD<Eigen::Matrix<Amplitude, 2, 4>> svd(m, Eigen::ComputeFullU);
    const Qubit g = svd.matrixU().col(0);
    const Qubit gc = g.conjugate();
    const Eigen::Matrix2cd phi = gc(0) * s.t0 + gc(1) * s.t1;
    const bool phi_product = Eigen::JacobiSVD<Eigen::Matrix2cd>(phi).singularValues()(1) < eps;
    Eigen::Matrix2cd mix;
    if (phi_product) {
      mix << gc(0), gc(1), -g(1), g(0);
    } else {
      mix << -g(1), g(0), gc(0), gc(1);
    }
    candidates.push_back(build_candidate(s, mix, eps));
  } else {
    for (const auto& root : mixing_roots(s, eps)) candidates.push_back(build_candidate(s, mixing_unitary(root), eps));
  }

  const bool any_in_range =
      std::any_of(candidates.begin(), candidates.end(), [](const Candidate& c) { return c.mu_in_range; });
  const Candidate* best = nullptr;
  for (const auto& c : candidates) {
    if (any_in_range && !c.mu_in_range) continue;
    if (best == nullptr) {
      best = &c;
      continue;
    }
    const double da0 = c.coeffs.a[0] - best->coeffs.a[0];
    if (da0 > eps || (std::abs(da0) <= eps && c.coeffs.mu < best->coeffs.mu - eps)) best = &c;
  }

  CanonicalThreeQubit out;
  out.coeffs = best->coeffs;
  out.u_c = LocalOperator(best->uc);
  out.u_a = LocalOperator(best->ua);
  out.u_b = LocalOperator(best->ub);
  out.degenerate = degenerate;
  out.source_fidelity = verify_canonical(state, out);
  return out;
}

double verify_canonical(const PureState& state, const CanonicalThreeQubit& result) {
  if (state.num_wires() != 3) throw Error(ErrorCode::WireMismatch, "canonical form needs a three-wire state");
  const auto& w = state.wires();
  PureState moved = apply_local(state, result.u_c, {w[0]});
  moved = apply_local(moved, result.u_a, {w[1]});
  moved = apply_local(moved, result.u_b, {w[2]});
  return fidelity(moved, canonical_state(result.coeffs, w));
}

}  // namespace crsp
