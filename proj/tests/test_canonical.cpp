#include <gtest/gtest.h>

#include "crsp/canonical.hpp"
#include "test_support.hpp"

using namespace crsp;
using namespace crsp::testkit;

namespace {

PureState transformed(const PureState& s, const CanonicalThreeQubit& r) {
  PureState out = apply_local(s, r.u_c, {"c"});
  out = apply_local(out, r.u_a, {"a"});
  return apply_local(out, r.u_b, {"b"});
}

PureState scrambled(const CanonicalCoefficients& c, Rng& rng) {
  PureState s = canonical_state(c);
  for (const char* w : {"c", "a", "b"}) s = apply_local(s, random_unitary(rng), {w});
  return s;
}

void expect_coefficients(const CanonicalCoefficients& got, const std::array<double, 5>& a, double mu, double tol) {
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(got.a[i], a[i], tol) << "a" << i;
  EXPECT_NEAR(got.mu, mu, tol);
}

}  // namespace

TEST(CanonicalState, examples) {
  const PureState ghz = canonical_state(ghz_channel());
  EXPECT_NEAR(ghz.amplitude(0).real(), kInvSqrt2, 1e-15);
  EXPECT_NEAR(ghz.amplitude(7).real(), kInvSqrt2, 1e-15);
  EXPECT_EQ(canonical_state(product_channel()).amplitude(0), Amplitude(1.0));

  const PureState unit = canonical_state(unit_family(0.5, 0.5));
  EXPECT_NEAR(unit.amplitude(0b000).real(), 0.5, 1e-15);
  EXPECT_NEAR(unit.amplitude(0b100).real(), 0.5, 1e-15);
  EXPECT_NEAR(unit.amplitude(0b111).real(), kInvSqrt2, 1e-15);
}

TEST(CanonicalCoefficients, validation) {
  CanonicalCoefficients c = ghz_channel();
  EXPECT_NO_THROW(c.validate());
  c.mu = 3.5;
  EXPECT_THROW(c.validate(), Error);
  c = ghz_channel();
  c.a[2] = -0.1;
  EXPECT_THROW(c.validate(), Error);
  c = ghz_channel();
  c.a[0] = 0.8;
  EXPECT_THROW(c.validate(), Error);
}

TEST(AcinDecompose, ghz_is_already_canonical) {
  const CanonicalThreeQubit r = acin_decompose(ghz_state());
  expect_coefficients(r.coeffs, {kInvSqrt2, 0, 0, 0, kInvSqrt2}, 0.0, 1e-12);
  EXPECT_NEAR(r.source_fidelity, 1.0, 1e-12);
}

TEST(AcinDecompose, product_state) {
  const CanonicalThreeQubit r = acin_decompose(PureState::basis(kChannelWires, 0));
  expect_coefficients(r.coeffs, {1, 0, 0, 0, 0}, 0.0, 1e-12);
  EXPECT_TRUE(r.degenerate);
  EXPECT_NEAR(r.source_fidelity, 1.0, 1e-12);
}

TEST(AcinDecompose, w_state) {
  const CanonicalThreeQubit r = acin_decompose(w_state());
  expect_coefficients(r.coeffs, {kInvSqrt3, 0, kInvSqrt3, kInvSqrt3, 0}, 0.0, 1e-10);
  EXPECT_NEAR(r.source_fidelity, 1.0, 1e-12);
}

TEST(AcinDecompose, c_product_states_are_degenerate) {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const PureState s = tensor(haar_random_state({"c"}, rng), haar_random_state({"a", "b"}, rng));
    const CanonicalThreeQubit r = acin_decompose(s);
    EXPECT_TRUE(r.degenerate);
    EXPECT_GE(r.source_fidelity, 1.0 - 1e-9);
    // |g> (x) |phi> with phi entangled lands on a1|100> + a4|111>.
    EXPECT_NEAR(r.coeffs.a[0], 0.0, 1e-9);
    EXPECT_NEAR(r.coeffs.a[2], 0.0, 1e-9);
    EXPECT_NEAR(r.coeffs.a[3], 0.0, 1e-9);
  }
}

TEST(AcinDecompose, rejects_wrong_shape) {
  EXPECT_THROW(acin_decompose(haar_random_state(2, 1)), Error);
  EXPECT_THROW(acin_decompose(haar_random_state(4, 1)), Error);
}

TEST(VerifyCanonical, mismatched_coefficients) {
  const CanonicalThreeQubit wrong = CanonicalThreeQubit::from_coefficients(product_channel());
  EXPECT_NEAR(verify_canonical(ghz_state(), wrong), 0.5, 1e-15);
  EXPECT_NEAR(verify_canonical(ghz_state(), CanonicalThreeQubit::from_coefficients(ghz_channel())), 1.0, 1e-15);
}

TEST(AcinDecompose, haar_round_trip_and_support) {
  Rng rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    const PureState s = haar_random_state(kChannelWires, rng);
    const CanonicalThreeQubit r = acin_decompose(s);
    ASSERT_GE(r.source_fidelity, 1.0 - 1e-9) << "trial " << trial;
    EXPECT_LE(r.u_c.unitarity_error(), 1e-9);
    EXPECT_LE(r.u_a.unitarity_error(), 1e-9);
    EXPECT_LE(r.u_b.unitarity_error(), 1e-9);
    EXPECT_NO_THROW(r.coeffs.validate(1e-9));
    const PureState moved = transformed(s, r);
    for (std::size_t idx : {0b001u, 0b010u, 0b011u}) EXPECT_LE(std::abs(moved.amplitude(idx)), 1e-9);
  }
}

TEST(AcinDecompose, recovers_scrambled_coefficients) {
  Rng rng(404);
  for (int trial = 0; trial < 200; ++trial) {
    const CanonicalCoefficients c = random_coefficients(rng);
    const CanonicalThreeQubit r = acin_decompose(scrambled(c, rng));
    expect_coefficients(r.coeffs, c.a, c.mu, 1e-8);
  }
}

TEST(AcinDecompose, invariant_under_local_unitaries) {
  Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const PureState s = haar_random_state(kChannelWires, rng);
    PureState t = s;
    for (const char* w : {"c", "a", "b"}) t = apply_local(t, random_unitary(rng), {w});
    const CanonicalCoefficients a = acin_decompose(s).coeffs;
    const CanonicalCoefficients b = acin_decompose(t).coeffs;
    expect_coefficients(b, a.a, a.mu, 1e-8);
  }
}

TEST(AcinDecompose, respects_wire_labels) {
  Rng rng(15);
  const PureState s = haar_random_state({"x", "y", "z"}, rng);
  const CanonicalThreeQubit r = acin_decompose(s);
  EXPECT_GE(verify_canonical(s, r), 1.0 - 1e-9);
}
