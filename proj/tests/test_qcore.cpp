#include <gtest/gtest.h>

#include "crsp/qcore.hpp"
#include "test_support.hpp"

using namespace crsp;
using crsp::testkit::kInvSqrt2;

namespace {

PureState qubit(const std::string& wire, Amplitude a, Amplitude b) {
  CVector v(2);
  v << a, b;
  return PureState({wire}, v);
}

PureState bell(const std::string& l, const std::string& r) {
  CVector v = CVector::Zero(4);
  v(0) = v(3) = kInvSqrt2;
  return PureState({l, r}, v);
}

LocalOperator pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return LocalOperator(m);
}

}  // namespace

TEST(PureState, rejects_bad_input) {
  EXPECT_THROW(PureState({"a", "a"}, CVector::Zero(4)), Error);
  EXPECT_THROW(PureState({"a"}, CVector::Zero(4)), Error);
  EXPECT_THROW(PureState({"a"}, CVector::Zero(2)), Error);
  CVector nan(2);
  nan << std::nan(""), 0.0;
  EXPECT_THROW(PureState({"a"}, nan), Error);
  try {
    PureState({"a", "a"}, CVector::Zero(4));
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DuplicateWire);
  }
  EXPECT_THROW(PureState(default_wire_labels(6), CVector::Zero(64)), Error);
}

TEST(PureState, reorder_round_trip) {
  Rng rng(5);
  const PureState s = haar_random_state({"x", "y", "z"}, rng);
  const PureState r = s.reordered({"z", "x", "y"});
  EXPECT_EQ(r.wires(), (std::vector<std::string>{"z", "x", "y"}));
  // |xyz> = |011> sits at index 3 before and at index (z=1,x=0,y=1) = 5 after.
  EXPECT_EQ(r.amplitude(5), s.amplitude(3));
  EXPECT_LT((r.reordered(s.wires()).amplitudes() - s.amplitudes()).norm(), 1e-15);
}

TEST(Tensor, basis_products) {
  const PureState s = tensor(PureState::basis({"c"}, 0), PureState::basis({"a"}, 0));
  EXPECT_EQ(s.wires(), (std::vector<std::string>{"c", "a"}));
  EXPECT_EQ(s.amplitude(0), Amplitude(1.0));
  for (std::size_t i = 1; i < 4; ++i) EXPECT_EQ(s.amplitude(i), Amplitude(0.0));

  const PureState t = tensor(qubit("p", 0.6, 0.8), PureState::basis({"q"}, 1));
  EXPECT_NEAR(t.amplitude(0).real(), 0.0, 1e-15);
  EXPECT_NEAR(t.amplitude(1).real(), 0.6, 1e-15);
  EXPECT_NEAR(t.amplitude(2).real(), 0.0, 1e-15);
  EXPECT_NEAR(t.amplitude(3).real(), 0.8, 1e-15);
}

TEST(Tensor, ghz_with_bell_pair) {
  const PureState s = tensor(testkit::ghz_state(), bell("a'", "b'"));
  EXPECT_EQ(s.dim(), 32u);
  int nonzero = 0;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    if (std::abs(s.amplitude(i)) > 1e-12) {
      ++nonzero;
      EXPECT_NEAR(std::abs(s.amplitude(i)), 0.5, 1e-15);
    }
  }
  EXPECT_EQ(nonzero, 4);
  EXPECT_THROW(tensor(s, PureState::basis({"c"}, 0)), Error);
}

TEST(ApplyLocal, pauli_x_on_second_wire) {
  const PureState s = apply_local(PureState::basis({"a", "b"}, 0), pauli_x(), {"b"});
  EXPECT_NEAR(std::abs(s.amplitude(1)), 1.0, 1e-15);
}

TEST(ApplyLocal, identity_and_errors) {
  const PureState s = haar_random_state(4, 11);
  const PureState same = apply_local(s, LocalOperator::identity(4), {"q1", "q3"});
  EXPECT_LT((same.amplitudes() - s.amplitudes()).norm(), 1e-15);

  CMatrix not_unitary = CMatrix::Identity(2, 2);
  not_unitary(0, 1) = 0.1;
  EXPECT_THROW(apply_local(s, LocalOperator(not_unitary), {"q0"}), Error);
  EXPECT_THROW(apply_local(s, pauli_x(), {"nope"}), Error);
  EXPECT_THROW(apply_local(s, LocalOperator::identity(4), {"q0", "q0"}), Error);
  EXPECT_THROW(apply_local(s, LocalOperator::identity(4), {"q0"}), Error);
}

TEST(ApplyLocal, operator_ordering_follows_target_list) {
  // CNOT with the first target as control.
  CMatrix cnot = CMatrix::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
  const PureState s = PureState::basis({"a", "b"}, 1);  // a=0, b=1
  const PureState flipped = apply_local(s, LocalOperator(cnot), {"b", "a"});
  EXPECT_NEAR(std::abs(flipped.amplitude(3)), 1.0, 1e-15);
  const PureState kept = apply_local(s, LocalOperator(cnot), {"a", "b"});
  EXPECT_NEAR(std::abs(kept.amplitude(1)), 1.0, 1e-15);
}

TEST(ApplyLocal, preserves_norm_for_random_unitaries) {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const PureState s = haar_random_state(default_wire_labels(4), rng);
    const LocalOperator u = testkit::random_unitary(rng).kron(testkit::random_unitary(rng));
    const PureState out = apply_local(s, u, {"q3", "q1"});
    EXPECT_NEAR(out.amplitudes().squaredNorm(), 1.0, 1e-12);
  }
}

TEST(Measure, plus_state_in_computational_basis) {
  const auto out = measure(qubit("a", kInvSqrt2, kInvSqrt2), computational_basis(1), {"a"});
  ASSERT_EQ(out.size(), 2u);
  EXPECT_NEAR(out[0].probability, 0.5, 1e-15);
  EXPECT_NEAR(out[1].probability, 0.5, 1e-15);
}

TEST(Measure, ghz_charlie_in_hadamard_basis) {
  CVector plus(2), minus(2);
  plus << kInvSqrt2, kInvSqrt2;
  minus << kInvSqrt2, -kInvSqrt2;
  const auto out = measure(testkit::ghz_state(), MeasurementBasis({plus, minus}), {"c"});
  EXPECT_NEAR(out[0].probability, 0.5, 1e-15);
  ASSERT_TRUE(out[0].collapsed);
  EXPECT_EQ(out[0].collapsed->wires(), (std::vector<std::string>{"a", "b"}));
  EXPECT_NEAR(fidelity(*out[0].collapsed, bell("a", "b")), 1.0, 1e-15);
}

TEST(Measure, zero_probability_outcome_has_no_state) {
  const auto out = measure(PureState::basis(kChannelWires, 0), computational_basis(1), {"c"});
  EXPECT_NEAR(out[0].probability, 1.0, 1e-15);
  ASSERT_TRUE(out[0].collapsed);
  EXPECT_NEAR(std::abs(out[0].collapsed->amplitude(0)), 1.0, 1e-15);
  EXPECT_EQ(out[1].probability, 0.0);
  EXPECT_FALSE(out[1].collapsed);
}

TEST(Measure, probabilities_sum_to_one) {
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const PureState s = haar_random_state(default_wire_labels(5), rng);
    const auto out = measure(s, computational_basis(2), {"q4", "q1"});
    double total = 0.0;
    for (const auto& o : out) {
      total += o.probability;
      if (o.collapsed) EXPECT_EQ(o.collapsed->num_wires(), 3u);
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(MeasurementBasis, rejects_non_orthonormal) {
  CVector a(2), b(2);
  a << 1, 0;
  b << 1, 1;
  EXPECT_THROW(MeasurementBasis({a, b}), Error);
  EXPECT_THROW(MeasurementBasis({a}), Error);
}

TEST(Schmidt, examples) {
  const SchmidtPair bell_pair = bipartite_schmidt(bell("a", "b"), "a", "b");
  EXPECT_NEAR(bell_pair.lambda_small, 0.5, 1e-15);
  EXPECT_NEAR(bell_pair.lambda_large, 0.5, 1e-15);

  CVector v = CVector::Zero(4);
  v(0) = 0.6;
  v(3) = 0.8;
  const SchmidtPair diag = bipartite_schmidt(PureState({"a", "b"}, v), "a", "b");
  EXPECT_NEAR(diag.lambda_small, 0.36, 1e-15);
  EXPECT_NEAR(diag.lambda_large, 0.64, 1e-15);

  const SchmidtPair product = bipartite_schmidt(PureState::basis({"a", "b"}, 0), "a", "b");
  EXPECT_NEAR(product.lambda_small, 0.0, 1e-15);
  EXPECT_NEAR(product.lambda_large, 1.0, 1e-15);
}

TEST(Schmidt, reconstruction_is_exact) {
  Rng rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    const PureState s = haar_random_state({"a", "b"}, rng);
    const SchmidtPair sp = bipartite_schmidt(s, "a", "b");
    EXPECT_LE(sp.lambda_small, sp.lambda_large);
    EXPECT_NEAR(sp.lambda_small + sp.lambda_large, 1.0, 1e-12);
    EXPECT_LT((sp.reconstruct("a", "b").amplitudes() - s.amplitudes()).norm(), 1e-10);
    // Orthonormal Schmidt vectors.
    EXPECT_NEAR(std::abs(sp.basis_left[0].dot(sp.basis_left[1])), 0.0, 1e-12);
    EXPECT_NEAR(sp.basis_right[0].norm(), 1.0, 1e-12);
  }
}

TEST(Schmidt, wire_order_is_respected) {
  Rng rng(3);
  const PureState s = haar_random_state({"a", "b"}, rng);
  const SchmidtPair ab = bipartite_schmidt(s, "a", "b");
  const SchmidtPair ba = bipartite_schmidt(s, "b", "a");
  EXPECT_NEAR(ab.lambda_small, ba.lambda_small, 1e-12);
  EXPECT_LT((ba.reconstruct("b", "a").reordered({"a", "b"}).amplitudes() - s.amplitudes()).norm(), 1e-10);
}

TEST(Fidelity, examples) {
  const PureState s = haar_random_state(3, 4);
  EXPECT_NEAR(fidelity(s, s), 1.0, 1e-12);
  const PureState phased(s.wires(), s.amplitudes() * std::polar(1.0, testkit::kPi / 3.0));
  EXPECT_NEAR(fidelity(s, phased), 1.0, 1e-12);
  EXPECT_NEAR(fidelity(qubit("a", 0.6, 0.8), qubit("a", 0.6, -0.8)), 0.0784, 1e-15);
}

TEST(Haar, deterministic_and_normalized) {
  const PureState a = haar_random_state(3, 99);
  const PureState b = haar_random_state(3, 99);
  EXPECT_EQ(a.amplitudes(), b.amplitudes());
  EXPECT_NE(a.amplitudes(), haar_random_state(3, 100).amplitudes());
  EXPECT_NEAR(a.amplitudes().squaredNorm(), 1.0, 1e-12);
}

TEST(Haar, first_moment) {
  Rng rng(2024);
  double mean = 0.0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) mean += std::norm(haar_random_state({"x", "y"}, rng).amplitude(0));
  EXPECT_NEAR(mean / n, 0.25, 0.02);
}

TEST(Rng, uniform_range_and_stream) {
  Rng a(1), b(1);
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_EQ(u, b.uniform());
  }
}

TEST(PhaseGauge, first_component_real_positive) {
  CVector v(3);
  v << Amplitude(0, 0), Amplitude(0, -2), Amplitude(1, 1);
  const CVector g = phase_gauged(v);
  EXPECT_NEAR(g(1).imag(), 0.0, 1e-15);
  EXPECT_NEAR(g(1).real(), 2.0, 1e-15);
  EXPECT_NEAR(std::abs(g(2)), std::sqrt(2.0), 1e-15);
}
