#pragma once

#include <cmath>
#include <numbers>

#include "crsp/canonical.hpp"
#include "crsp/protocols.hpp"

namespace crsp::testkit {

inline constexpr double kPi = std::numbers::pi;
inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
inline const double kInvSqrt3 = 1.0 / std::sqrt(3.0);

inline CanonicalCoefficients ghz_channel() { return {{kInvSqrt2, 0.0, 0.0, 0.0, kInvSqrt2}, 0.0}; }
inline CanonicalCoefficients product_channel() { return {{1.0, 0.0, 0.0, 0.0, 0.0}, 0.0}; }
// a0|000> + a1|100> + |111>/sqrt(2), a0^2 + a1^2 = 1/2.
inline CanonicalCoefficients unit_family(double a0, double a1) { return {{a0, a1, 0.0, 0.0, kInvSqrt2}, 0.0}; }

inline PureState w_state() {
  CVector v = CVector::Zero(8);
  v(1) = v(2) = v(4) = kInvSqrt3;
  return PureState(kChannelWires, v);
}

inline PureState ghz_state() { return canonical_state(ghz_channel()); }

// Haar-random 2x2 unitary from the QR of a complex Gaussian matrix.
inline LocalOperator random_unitary(Rng& rng) {
  CMatrix g(2, 2);
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 2; ++j) g(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < 2; ++k) q.col(k) *= r(k, k) / std::abs(r(k, k));
  return LocalOperator(q);
}

// Random coefficients with every a_i bounded away from zero and mu in (0, pi).
inline CanonicalCoefficients random_coefficients(Rng& rng) {
  CanonicalCoefficients c;
  double norm2 = 0.0;
  for (auto& x : c.a) {
    x = 0.1 + rng.uniform();
    norm2 += x * x;
  }
  for (auto& x : c.a) x /= std::sqrt(norm2);
  c.mu = kPi * (0.02 + 0.96 * rng.uniform());
  return c;
}

inline ControllerSetting random_setting(Rng& rng) { return {kPi * rng.uniform(), 2.0 * kPi * rng.uniform()}; }

inline double unitarity_error(const MeasurementBasis& basis) { return basis.as_operator().unitarity_error(); }

}  // namespace crsp::testkit
