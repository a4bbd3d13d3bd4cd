#include "qrev/serialize.hpp"

#include <gtest/gtest.h>

#include "qrev/random.hpp"

using namespace qrev;

TEST(serialize, density_round_trip_is_exact_through_text) {
  Rng r(1);
  const DensityOperator rho(Systems{{"A", 2}, {"B", 3}}, random_density_matrix(6, 4, r));
  const Json j = Json::parse(to_json(rho).dump());
  const DensityOperator back = density_from_json(j);
  EXPECT_EQ(back.systems(), rho.systems());
  EXPECT_EQ(back.matrix(), rho.matrix());
}

TEST(serialize, channel_round_trip) {
  Rng r(2);
  const Channel n = random_channel(3, 2, 2, r);
  const Channel back = channel_from_json(Json::parse(to_json(n).dump()));
  ASSERT_EQ(back.kraus().size(), n.kraus().size());
  for (std::size_t k = 0; k < n.kraus().size(); ++k) EXPECT_EQ(back.kraus()[k], n.kraus()[k]);
  EXPECT_EQ(back.in_dim(), 3);
  EXPECT_EQ(back.out_dim(), 2);
}

TEST(serialize, instrument_round_trip) {
  Rng r(3);
  const Instrument in = random_instrument(2, 3, false, r);
  const Instrument back = instrument_from_json(Json::parse(to_json(in).dump()));
  ASSERT_EQ(back.size(), in.size());
  EXPECT_EQ(back.efficient(), in.efficient());
  for (std::size_t x = 0; x < in.size(); ++x) {
    EXPECT_EQ(back.outcomes()[x].label, in.outcomes()[x].label);
    EXPECT_EQ(back.outcomes()[x].kraus, in.outcomes()[x].kraus);
  }
}

TEST(serialize, rejects_wrong_type_version_and_shape) {
  Rng r(4);
  Json j = to_json(random_channel(2, 2, 1, r));
  EXPECT_THROW(density_from_json(j), DimensionError);
  j["schema_version"] = 99;
  EXPECT_THROW(map_from_json(j), DimensionError);
  EXPECT_THROW(matrix_from_json(Json::parse("[[[1,0]],[[1,0],[0,0]]]")), DimensionError);
  EXPECT_THROW(matrix_from_json(Json::parse("[[1]]")), DimensionError);
  EXPECT_THROW(matrix_from_json(Json::array()), DimensionError);
}

TEST(serialize, invalid_physics_rejected_on_load) {
  Json j = to_json(DensityOperator("A", Matrix::Identity(2, 2) / 2.0));
  j["matrix"][0][0][0] = 2.0;
  EXPECT_THROW(density_from_json(j), DomainError);
}
