#include "qrev/recovery.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qrev/entropy.hpp"
#include "qrev/random.hpp"

using namespace qrev;

namespace {

// ω^{it} through the Schur logarithm and exponential; ω must be full rank.
Matrix imag_power(const Matrix& w, double t) {
  const Matrix l = w.log();
  return (Complex(0.0, t) * l).exp();
}

// Direct-formula Petz (then rotated) map for full-rank σ and N(σ).
Matrix rotated_petz_oracle(const Matrix& sigma, const std::vector<Matrix>& kraus, double t,
                           const Matrix& q) {
  const Matrix ns = oracle::apply_kraus(kraus, sigma);
  const Matrix ns_inv_sqrt = ns.sqrt().inverse();
  const Matrix rot_in = imag_power(ns, t) * q * imag_power(ns, -t);
  const Matrix inner = oracle::apply_kraus_adjoint(kraus, ns_inv_sqrt * rot_in * ns_inv_sqrt);
  const Matrix petz = sigma.sqrt() * inner * sigma.sqrt();
  return imag_power(sigma, -t) * petz * imag_power(sigma, t);
}

Matrix dephasing_kraus_sum(const Matrix& x) {
  return 0.5 * (x + oracle::pauli_z() * x * oracle::pauli_z());
}

}  // namespace

TEST(petz, recovers_sigma_for_random_instances) {
  Rng r(1);
  for (int i = 0; i < 10; ++i) {
    const int d = 2 + i % 2;
    const Matrix sigma = random_density_matrix(d, i % 2 ? d : d - 1, r);
    const Channel n = random_channel(d, 2, d, r);
    const CPMap p = petz_map(sigma, n);
    EXPECT_LE(trace_distance(p(n(sigma)), sigma), 1e-9) << i;
    // Trace non-increasing: Σ K†K ≤ I.
    EXPECT_LE(p.trace_gain(), 1.0 + 1e-9);
  }
}

TEST(petz, identity_channel_gives_identity_on_support) {
  Rng r(2);
  const Matrix sigma = random_density_matrix(3, 3, r);
  const CPMap p = petz_map(sigma, Channel::identity(3));
  const Matrix x = random_density_matrix(3, 3, r);
  EXPECT_LT((p(x) - x).norm(), 1e-10);
}

TEST(petz, matches_direct_formula) {
  std::mt19937_64 gen(3);
  Rng r(3);
  const Matrix sigma = oracle::random_density(3, gen);
  const Channel n = random_channel(3, 2, 3, r);
  const Matrix q = random_density_matrix(2, 2, r);
  EXPECT_LT((petz_map(sigma, n)(q) - rotated_petz_oracle(sigma, n.kraus(), 0.0, q)).norm(), 1e-9);
}

TEST(petz, partial_trace_matches_explicit_formula) {
  Rng r(4);
  const Matrix rho_ac = random_density_matrix(4, 4, r);
  const std::vector<int> dims{2, 2};
  const Channel tr_a = Channel::partial_trace(dims, 0);
  const Matrix rho_c = oracle::trace_a(rho_ac, 2, 2);
  const Matrix w = random_density_matrix(2, 2, r);
  const Matrix ic = rho_c.sqrt().inverse();
  const Matrix expected =
      rho_ac.sqrt() * oracle::kron(oracle::eye(2), ic * w * ic) * rho_ac.sqrt();
  EXPECT_LT((petz_map(rho_ac, tr_a)(w) - expected).norm(), 1e-10);
}

TEST(rotated_petz, zero_angle_is_petz_and_rotation_matches_oracle) {
  std::mt19937_64 gen(5);
  Rng r(5);
  const Matrix sigma = oracle::random_density(2, gen);
  const Channel n = random_channel(2, 3, 2, r);
  EXPECT_LT((rotated_petz(sigma, n, 0.0).choi() - petz_map(sigma, n).choi()).norm(), 1e-10);
  const Matrix q = random_density_matrix(3, 3, r);
  for (double t : {-2.0, 0.37, 1.5}) {
    const RotatedPetzSpec spec{sigma, n, t};
    EXPECT_LT((rotated_petz(spec)(q) - rotated_petz_oracle(sigma, n.kraus(), t, q)).norm(),
              1e-9)
        << t;
    EXPECT_LE(trace_distance(rotated_petz(spec)(n(sigma)), sigma), 1e-9);
  }
}

TEST(rotated_petz, maximally_mixed_and_unital_has_no_rotation) {
  Rng r(6);
  const Channel n = random_mixed_unitary(3, 3, r);
  const Matrix sigma = Matrix::Identity(3, 3) / 3.0;
  const Matrix base = rotated_petz(sigma, n, 0.0).choi();
  for (double t : {-3.0, 0.5, 4.0})
    EXPECT_LT((rotated_petz(sigma, n, t).choi() - base).norm(), 1e-10) << t;
}

TEST(integrated_recovery, trace_preserving_and_recovers_sigma) {
  Rng r(7);
  for (int i = 0; i < 6; ++i) {
    const int d = 2 + i % 2;
    const Matrix sigma = random_density_matrix(d, i % 2 ? d : d - 1, r);
    const Channel n = random_channel(d, d, 1 + i % 2, r);
    const Matrix tau = random_density_matrix(d, d, r);
    const Channel rec = integrated_recovery(sigma, n, tau);
    EXPECT_TRUE(is_trace_preserving(rec, 1e-8)) << i;
    EXPECT_LE(trace_distance(rec(n(sigma)), sigma), 1e-8) << i;
    double min_eig = 1.0;
    for (double l : oracle::eigenvalues(rec.choi())) min_eig = std::min(min_eig, l);
    EXPECT_GE(min_eig, -1e-9);
  }
}

TEST(integrated_recovery, equals_weighted_rotated_maps_for_full_rank_output) {
  Rng r(8);
  const Matrix sigma = random_density_matrix(2, 2, r);
  const Channel n = random_channel(2, 2, 2, r);
  QuadratureSpec spec;
  spec.nodes = 21;
  const QuadratureRule rule = make_rule(spec);
  const Channel rec = integrated_recovery(sigma, n, Matrix::Identity(2, 2) / 2.0, rule);
  const Matrix q = random_density_matrix(2, 2, r);
  Matrix expected = Matrix::Zero(2, 2);
  for (std::size_t k = 0; k < rule.nodes.size(); ++k)
    expected += rule.weights[k] * rotated_petz(sigma, n, rule.nodes[k] / 2.0)(q);
  EXPECT_LT((rec(q) - expected).norm(), 1e-12);
}

TEST(integrated_recovery, complement_input_maps_to_tau) {
  // N = identity on a rank-one σ: N(σ) has a kernel, and inputs there go to τ.
  Matrix sigma = Matrix::Zero(2, 2);
  sigma(0, 0) = 1.0;
  Rng r(9);
  const Matrix tau = random_density_matrix(2, 2, r);
  const Channel rec = integrated_recovery(sigma, Channel::identity(2), tau);
  const Matrix one = oracle::ket_bra(oracle::basis(2, 1), oracle::basis(2, 1));
  EXPECT_LT((rec(one) - tau).norm(), 1e-12);
  EXPECT_LT((rec(sigma) - sigma).norm(), 1e-12);
}

TEST(cmi_recovery, matches_rotated_petz_at_half_angle) {
  Rng r(10);
  const DensityOperator rho(Systems{{"A", 2}, {"C", 2}}, random_density_matrix(4, 4, r));
  const std::vector<int> dims{2, 2};
  const Channel tr_a = Channel::partial_trace(dims, 0);
  const Matrix w = random_density_matrix(2, 2, r);
  for (double t : {0.0, 0.7, -1.9}) {
    const Matrix generic = rotated_petz(rho.matrix(), tr_a, t / 2.0)(w);
    EXPECT_LT((cmi_recovery(rho, "A", t)(w) - generic).norm(), 1e-10) << t;
  }
}

TEST(cmi_recovery, fixed_point_and_product_reference) {
  Rng r(11);
  const Matrix ra = random_density_matrix(2, 2, r);
  const Matrix rc = random_density_matrix(3, 3, r);
  const DensityOperator prod(Systems{{"A", 2}, {"C", 3}}, oracle::kron(ra, rc));
  const Matrix w = random_density_matrix(3, 3, r);
  EXPECT_LT((cmi_recovery(prod, "A", 0.9)(w) - oracle::kron(ra, w)).norm(), 1e-10);

  const DensityOperator rho(Systems{{"C", 2}, {"A", 3}}, random_density_matrix(6, 6, r));
  const Matrix rho_c = oracle::trace_b(rho.matrix(), 2, 3);
  EXPECT_LT((cmi_recovery(rho, "A", 1.3)(rho_c) - rho.matrix()).norm(), 1e-10);
}

TEST(adjoint_recovery, unitary_gives_inverse) {
  Rng r(12);
  const Matrix u = random_unitary(3, r);
  const Channel rec = adjoint_recovery(Channel::unitary(u), Matrix::Identity(3, 3) / 3.0);
  const Matrix y = random_density_matrix(3, 3, r);
  EXPECT_LT((rec(y) - u.adjoint() * y * u).norm(), 1e-12);
  EXPECT_EQ(rec.kraus().size(), 1u);
}

TEST(adjoint_recovery, dephasing_is_self_recovering) {
  const Channel deph(2, 2, {oracle::ket_bra(oracle::basis(2, 0), oracle::basis(2, 0)),
                            oracle::ket_bra(oracle::basis(2, 1), oracle::basis(2, 1))});
  const Channel rec = adjoint_recovery(deph, Matrix::Identity(2, 2) / 2.0);
  Rng r(13);
  const Matrix rho = random_density_matrix(2, 2, r);
  EXPECT_LT((rec(deph(rho)) - dephasing_kraus_sum(rho)).norm(), 1e-14);
}

TEST(adjoint_recovery, subunital_gives_cptp_dominating_adjoint) {
  Rng r(14);
  const Channel n = random_subunital_channel(2, 3, 2, r);
  const Matrix tau = random_density_matrix(2, 2, r);
  const Channel rec = adjoint_recovery(n, tau);
  EXPECT_TRUE(is_cptp(rec, 1e-10));
  const Matrix rho = random_density_matrix(2, 2, r);
  const Matrix gap = rec(n(rho)) - n.adjoint()(n(rho));
  for (double l : oracle::eigenvalues(gap)) EXPECT_GE(l, -1e-10);
  // The LinearMap construction agrees with the Kraus one.
  const LinearMap lin = adjoint_recovery(n.to_linear_map(), tau);
  EXPECT_LT((lin(n(rho)) - rec(n(rho))).norm(), 1e-12);
}

TEST(adjoint_recovery, superunital_throws_with_witness) {
  Matrix k0 = Matrix::Zero(2, 2), k1 = Matrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(0.6);
  k1(0, 1) = std::sqrt(0.4);
  const Channel damp(2, 2, {k0, k1});
  try {
    adjoint_recovery(damp, Matrix::Identity(2, 2) / 2.0);
    FAIL() << "expected NotCompletelyPositiveError";
  } catch (const NotCompletelyPositiveError& e) {
    EXPECT_NEAR(e.weight(), -0.4, 1e-12);
    EXPECT_NEAR(std::abs(e.witness()(0)), 1.0, 1e-12);
    const Matrix w = e.witness() * e.witness().adjoint();
    EXPECT_LT((Matrix::Identity(2, 2) - damp.image_of_identity()).cwiseProduct(w).sum().real(),
              0.0);
  }
  // The LinearMap form is still built and stays trace preserving.
  const LinearMap lin = adjoint_recovery(damp.to_linear_map(), Matrix::Identity(2, 2) / 2.0);
  EXPECT_TRUE(lin.is_trace_preserving());
}

TEST(uhlmann, same_purification_gives_identity) {
  Rng r(15);
  const DensityOperator rho("A", random_density_matrix(3, 3, r));
  const Purification phi = purify(rho);
  const UhlmannResult u = uhlmann_isometry(phi, phi);
  EXPECT_NEAR(u.value, 1.0, 1e-12);
  EXPECT_LT((u.isometry - oracle::eye(3)).norm(), 1e-10);
}

TEST(uhlmann, reference_gauge_is_undone) {
  Rng r(16);
  const DensityOperator rho("A", random_density_matrix(3, 3, r));
  const Purification phi = purify(rho);
  const Matrix v = random_unitary(3, r);
  Purification rotated = phi;
  rotated.vector = oracle::kron(v, oracle::eye(3)) * phi.vector;
  const UhlmannResult u = uhlmann_isometry(rotated, phi);
  EXPECT_NEAR(u.value, 1.0, 1e-12);
  EXPECT_LT((u.isometry - v.adjoint()).norm(), 1e-9);
}

TEST(uhlmann, value_equals_fidelity) {
  Rng r(17);
  for (int i = 0; i < 10; ++i) {
    const DensityOperator rho("A", random_density_matrix(3, 1 + i % 3, r));
    const DensityOperator sigma("A", random_density_matrix(3, 3, r));
    const UhlmannResult u = uhlmann_isometry(purify(rho), purify(sigma));
    EXPECT_NEAR(u.value, oracle::root_fidelity(rho.matrix(), sigma.matrix()) *
                             oracle::root_fidelity(rho.matrix(), sigma.matrix()),
                1e-8);
    EXPECT_LE(u.value, 1.0 + 1e-10);
    EXPECT_LT((u.isometry.adjoint() * u.isometry -
               oracle::eye(static_cast<int>(u.isometry.cols())))
                  .norm(),
              1e-10);
  }
}

TEST(uhlmann, rejects_incompatible_shapes) {
  const Vector a = Vector::Ones(6) / std::sqrt(6.0);
  const Vector b = Vector::Ones(4) / 2.0;
  EXPECT_THROW(uhlmann_isometry(a, 2, b, 2), DimensionError);
  EXPECT_THROW(uhlmann_isometry(a, 3, a, 2), DimensionError);
}
