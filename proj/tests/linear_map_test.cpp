#include "qrev/linear_map.hpp"

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace qrev;

namespace {

std::vector<Matrix> amplitude_damping(double g) {
  Matrix k0 = Matrix::Zero(2, 2), k1 = Matrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - g);
  k1(0, 1) = std::sqrt(g);
  return {k0, k1};
}

Matrix random_operator(int r, int c, std::mt19937_64& gen) {
  std::normal_distribution<double> n;
  Matrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = Complex(n(gen), n(gen));
  return m;
}

}  // namespace

TEST(cp_map, apply_and_adjoint_match_kraus_sums) {
  std::mt19937_64 gen(1);
  std::vector<Matrix> kraus{random_operator(3, 2, gen), random_operator(3, 2, gen)};
  const CPMap n(2, 3, kraus);
  const Matrix x = random_operator(2, 2, gen);
  const Matrix y = random_operator(3, 3, gen);
  EXPECT_LT((n(x) - oracle::apply_kraus(kraus, x)).norm(), 1e-13);
  EXPECT_LT((n.adjoint()(y) - oracle::apply_kraus_adjoint(kraus, y)).norm(), 1e-13);
  // ⟨Y, N(X)⟩ = ⟨N†(Y), X⟩
  const Complex lhs = (y.adjoint() * n(x)).trace();
  const Complex rhs = (n.adjoint()(y).adjoint() * x).trace();
  EXPECT_LT(std::abs(lhs - rhs), 1e-11);
}

TEST(cp_map, liouville_and_choi_agree_with_kraus) {
  std::mt19937_64 gen(2);
  std::vector<Matrix> kraus{random_operator(2, 3, gen), random_operator(2, 3, gen)};
  const CPMap n(3, 2, kraus);
  const LinearMap l = n.to_linear_map();
  const Matrix x = random_operator(3, 3, gen);
  EXPECT_LT((l(x) - n(x)).norm(), 1e-12);
  EXPECT_LT((l.adjoint()(oracle::eye(2)) - n.kraus_gram()).norm(), 1e-12);

  Matrix choi = Matrix::Zero(6, 6);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      choi += oracle::kron(oracle::ket_bra(oracle::basis(3, i), oracle::basis(3, j)),
                           oracle::apply_kraus(kraus, oracle::ket_bra(oracle::basis(3, i),
                                                                      oracle::basis(3, j))));
  EXPECT_LT((n.choi() - choi).norm(), 1e-12);
  EXPECT_LT((l.choi() - choi).norm(), 1e-12);
}

TEST(cp_map, classification_flags) {
  const CPMap ad(2, 2, amplitude_damping(0.3));
  EXPECT_EQ(ad.trace_class(), TraceClass::preserving);
  EXPECT_EQ(ad.unital_class(), UnitalClass::neither);
  EXPECT_NEAR(ad.identity_gain(), 1.3, 1e-12);

  const CPMap half(2, 2, {std::sqrt(0.5) * oracle::eye(2)});
  EXPECT_EQ(half.trace_class(), TraceClass::non_increasing);
  EXPECT_EQ(half.unital_class(), UnitalClass::subunital);

  const CPMap doubled(2, 2, {std::sqrt(2.0) * oracle::eye(2)});
  EXPECT_EQ(doubled.trace_class(), TraceClass::increasing);
  EXPECT_THROW(Channel{doubled}, DomainError);

  const Channel u = Channel::unitary(oracle::pauli_x());
  EXPECT_EQ(u.unital_class(), UnitalClass::unital);
  EXPECT_TRUE(is_cptp(u));
}

TEST(cp_map, composition_order) {
  // next ∘ this: damping then X flip sends |1⟩⟨1| partly to |1⟩⟨1|.
  const CPMap ad(2, 2, amplitude_damping(1.0));
  const CPMap x(2, 2, {oracle::pauli_x()});
  const Matrix one = oracle::ket_bra(oracle::basis(2, 1), oracle::basis(2, 1));
  EXPECT_NEAR(ad.then(x)(one)(1, 1).real(), 1.0, 1e-15);
  EXPECT_NEAR(x.then(ad)(one)(0, 0).real(), 1.0, 1e-15);
}

TEST(linear_map, transpose_is_positive_not_cp) {
  const LinearMap t = LinearMap::transpose(2);
  std::mt19937_64 gen(4);
  const Matrix rho = oracle::random_density(2, gen);
  EXPECT_LT((t(rho) - rho.transpose()).norm(), 1e-15);
  EXPECT_TRUE(t.is_trace_preserving());
  EXPECT_TRUE(t.is_unital());
  double min_eig = 1.0;
  for (double l : oracle::eigenvalues(t.choi())) min_eig = std::min(min_eig, l);
  EXPECT_NEAR(min_eig, -1.0, 1e-12);
}

TEST(channel, partial_trace_and_replacer) {
  std::mt19937_64 gen(6);
  const Matrix x = oracle::random_density(6, gen);
  const std::vector<int> dims{2, 3};
  const Channel tr_b = Channel::partial_trace(dims, 1);
  EXPECT_LT((tr_b(x) - oracle::trace_b(x, 2, 3)).norm(), 1e-14);
  EXPECT_TRUE(is_cptp(tr_b));

  const Matrix tau = oracle::random_density(3, gen);
  const Channel rep = Channel::replacer(2, tau);
  EXPECT_LT((rep(oracle::random_density(2, gen)) - tau).norm(), 1e-13);
  EXPECT_TRUE(is_cptp(rep));
}

TEST(channel, isometric_rejects_non_isometry) {
  Matrix v = Matrix::Zero(3, 2);
  v(0, 0) = 1.0;
  v(1, 1) = 1.0;
  EXPECT_NO_THROW(Channel::isometric(v));
  v(2, 1) = 1.0;
  EXPECT_THROW(Channel::isometric(v), DomainError);
}

TEST(channel, apply_on_matches_extended_kraus) {
  std::mt19937_64 gen(8);
  const CPMap ad(2, 2, amplitude_damping(0.4));
  const Matrix x = oracle::random_density(6, gen);
  const std::vector<int> dims{3, 2};
  const Matrix expected = oracle::apply_kraus(
      {oracle::kron(oracle::eye(3), amplitude_damping(0.4)[0]),
       oracle::kron(oracle::eye(3), amplitude_damping(0.4)[1])},
      x);
  EXPECT_LT((apply_on(ad, x, dims, 1) - expected).norm(), 1e-13);
  EXPECT_LT((extend(ad, dims, 1)(x) - expected).norm(), 1e-13);
  EXPECT_LT((apply_on(ad.to_linear_map(), x, dims, 1) - expected).norm(), 1e-13);
}
