#include "qrev/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "qrev/types.hpp"

namespace qrev {

double p_weight(double t, PtForm form) {
  const double arg = form == PtForm::normalized ? std::numbers::pi * t : t;
  return 0.5 * std::numbers::pi / (std::cosh(arg) + 1.0);
}

void QuadratureSpec::validate() const {
  if (scheme != "gauss-legendre") {
    throw DimensionError("unknown quadrature scheme '" + scheme + "'");
  }
  if (nodes < 1 || nodes % 2 == 0) {
    throw DimensionError("quadrature node count must be odd and positive");
  }
  if (panels < 1 || nodes % panels != 0) {
    throw DimensionError("quadrature nodes must split evenly across panels");
  }
  if (!(half_width > 0.0)) {
    throw DimensionError("quadrature half-width must be positive");
  }
}

namespace {

// P_n(x) and P_{n-1}(x) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double prev = 1.0;
  double cur = x;
  for (int k = 2; k <= n; ++k) {
    const double next = ((2.0 * k - 1.0) * x * cur - (k - 1.0) * prev) / k;
    prev = cur;
    cur = next;
  }
  return {cur, prev};
}

}  // namespace

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw DimensionError("Gauss-Legendre needs at least one node");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  if (n == 1) {
    weights[0] = 2.0;
    return;
  }
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, q] = legendre(n, x);
      const double dp = n * (x * p - q) / (x * x - 1.0);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const auto [p, q] = legendre(n, x);
    const double dp = n * (x * p - q) / (x * x - 1.0);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
}

QuadratureRule make_rule(const QuadratureSpec& spec, PtForm form) {
  spec.validate();
  const int per_panel = spec.nodes / spec.panels;
  std::vector<double> x;
  std::vector<double> w;
  gauss_legendre(per_panel, x, w);
  const double width = 2.0 * spec.half_width / spec.panels;
  QuadratureRule rule;
  for (int p = 0; p < spec.panels; ++p) {
    const double lo = -spec.half_width + p * width;
    for (int k = 0; k < per_panel; ++k) {
      const double t = lo + 0.5 * width * (x[k] + 1.0);
      rule.nodes.push_back(t);
      rule.weights.push_back(0.5 * width * w[k] * p_weight(t, form));
    }
  }
  double total = 0.0;
  for (double v : rule.weights) total += v;
  rule.raw_mass = total;
  for (double& v : rule.weights) v /= total;
  return rule;
}

}  // namespace qrev
