#include "qrev/random.hpp"

#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qrev/entropy.hpp"
#include "qrev/matfun.hpp"

using namespace qrev;

TEST(rng, reproducible_and_stream_separated) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
  EXPECT_EQ(Rng::derive_seed(1, 2), Rng::derive_seed(1, 2));
  std::set<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 1000; ++i) seeds.insert(Rng::derive_seed(7, i));
  EXPECT_EQ(seeds.size(), 1000u);
  EXPECT_NE(Rng::stream(1, 0).next(), Rng::stream(1, 1).next());
}

TEST(rng, uniform_and_normal_moments) {
  Rng r(5);
  const int n = 200000;
  double su = 0, sn = 0, sn2 = 0;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    su += u;
    const double z = r.normal();
    sn += z;
    sn2 += z * z;
  }
  EXPECT_NEAR(su / n, 0.5, 0.005);
  EXPECT_NEAR(sn / n, 0.0, 0.01);
  EXPECT_NEAR(sn2 / n, 1.0, 0.02);
  for (int i = 0; i < 1000; ++i) {
    const int k = r.uniform_int(2, 4);
    ASSERT_GE(k, 2);
    ASSERT_LE(k, 4);
  }
}

TEST(random_objects, unitary_isometry_density) {
  Rng r(9);
  const Matrix u = random_unitary(4, r);
  EXPECT_LT((u.adjoint() * u - oracle::eye(4)).norm(), 1e-12);
  const Matrix v = random_isometry(2, 5, r);
  EXPECT_LT((v.adjoint() * v - oracle::eye(2)).norm(), 1e-12);
  EXPECT_THROW(random_isometry(3, 2, r), DimensionError);

  const Matrix rho = random_density_matrix(4, 2, r);
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-13);
  EXPECT_EQ(eig_hermitian(rho).rank(), 2);
  EXPECT_NEAR(random_pure_vector(3, r).norm(), 1.0, 1e-14);
}

TEST(random_objects, channels_are_cptp) {
  Rng r(10);
  for (int d = 2; d <= 4; ++d) {
    EXPECT_TRUE(is_cptp(random_channel(d, d, 2, r)));
    EXPECT_TRUE(is_cptp(random_channel(d, 2, d, r)));
    const Channel m = random_mixed_unitary(d, 3, r);
    EXPECT_TRUE(is_cptp(m));
    EXPECT_TRUE(is_unital(m));
    const Channel s = random_subunital_channel(d, d + 1, 2, r);
    EXPECT_TRUE(is_cptp(s));
    EXPECT_TRUE(is_subunital(s));
    EXPECT_FALSE(is_unital(s));
  }
  EXPECT_THROW(random_channel(3, 2, 1, r), DimensionError);
}

TEST(random_objects, instruments_respect_efficiency) {
  Rng r(11);
  const Instrument e = random_instrument(3, 4, true, r);
  EXPECT_TRUE(e.efficient());
  EXPECT_EQ(e.size(), 4u);
  const Instrument n = random_instrument(3, 2, false, r);
  EXPECT_FALSE(n.efficient());
  EXPECT_TRUE(is_cptp(n.sum_map()));
}

TEST(random_objects, markov_chain_has_zero_cmi) {
  Rng r(12);
  for (int i = 0; i < 5; ++i) {
    const DensityOperator rho = random_markov_chain(2, 2, 2, r);
    EXPECT_NEAR(cmi(rho, {"A"}, {"B"}, {"C"}), 0.0, 1e-10);
  }
}

TEST(random_objects, same_seed_same_objects) {
  Rng a(99), b(99);
  EXPECT_EQ(random_channel(3, 3, 2, a).choi(), random_channel(3, 3, 2, b).choi());
}
