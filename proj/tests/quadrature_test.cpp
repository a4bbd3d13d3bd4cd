#include "qrev/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include <gtest/gtest.h>

#include "qrev/types.hpp"

using namespace qrev;

TEST(quadrature, p_weight_values) {
  EXPECT_NEAR(p_weight(0.0), std::numbers::pi / 4.0, 1e-15);
  EXPECT_NEAR(p_weight(0.0, PtForm::printed), std::numbers::pi / 4.0, 1e-15);
  EXPECT_DOUBLE_EQ(p_weight(0.3), p_weight(-0.3));
  EXPECT_NEAR(p_weight(1.0), (std::numbers::pi / 2.0) / (std::cosh(std::numbers::pi) + 1.0),
              1e-15);
  EXPECT_NEAR(p_weight(2.0, PtForm::printed), (std::numbers::pi / 2.0) / (std::cosh(2.0) + 1.0),
              1e-15);
}

TEST(quadrature, gauss_legendre_integrates_polynomials_exactly) {
  std::vector<double> x, w;
  gauss_legendre(7, x, w);
  ASSERT_EQ(x.size(), 7u);
  EXPECT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), 2.0, 1e-14);
  for (int deg = 0; deg <= 13; ++deg) {
    double s = 0.0;
    for (int k = 0; k < 7; ++k) s += w[k] * std::pow(x[k], deg);
    const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
    EXPECT_NEAR(s, exact, 1e-13) << deg;
  }
}

TEST(quadrature, default_rule_normalized_and_raw_mass_near_one) {
  const QuadratureRule rule = make_rule({});
  ASSERT_EQ(rule.nodes.size(), 101u);
  EXPECT_NEAR(std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0), 1.0, 1e-14);
  for (double w : rule.weights) EXPECT_GE(w, 0.0);
  // Tail mass beyond ±10 is negligible; what remains is Gauss–Legendre error.
  EXPECT_NEAR(rule.raw_mass, 1.0, 1e-6);
  EXPECT_LE(rule.nodes.front(), -9.9);
  EXPECT_GE(rule.nodes.back(), 9.9);
}

TEST(quadrature, rule_integrates_smooth_moments_of_p) {
  // ∫ p(t) t² dt = 1/3 for the normalized density.
  QuadratureSpec spec;
  spec.nodes = 201;
  const QuadratureRule rule = make_rule(spec);
  double m2 = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k)
    m2 += rule.weights[k] * rule.nodes[k] * rule.nodes[k];
  EXPECT_NEAR(m2, 1.0 / 3.0, 1e-6);
}

TEST(quadrature, printed_form_has_mass_pi) {
  QuadratureSpec spec;
  spec.nodes = 201;
  spec.half_width = 60.0;
  const QuadratureRule rule = make_rule(spec, PtForm::printed);
  EXPECT_NEAR(rule.raw_mass, std::numbers::pi, 1e-6);
}

TEST(quadrature, panels_match_single_rule) {
  QuadratureSpec one;
  QuadratureSpec many;
  many.nodes = 105;
  many.panels = 5;
  const QuadratureRule a = make_rule(one);
  const QuadratureRule b = make_rule(many);
  EXPECT_NEAR(a.raw_mass, b.raw_mass, 1e-6);
}

TEST(quadrature, validation) {
  QuadratureSpec s;
  s.nodes = 100;
  EXPECT_THROW(s.validate(), DimensionError);
  s = {};
  s.half_width = 0.0;
  EXPECT_THROW(s.validate(), DimensionError);
  s = {};
  s.scheme = "simpson";
  EXPECT_THROW(s.validate(), DimensionError);
  s = {};
  s.panels = 2;
  EXPECT_THROW(s.validate(), DimensionError);
}
