#pragma once

#include <string>
#include <vector>

namespace qrev {

/// Density weighting the rotated Petz maps.
enum class PtForm {
  /// (π/2)[cosh(πt) + 1]⁻¹, integrates to 1.
  normalized,
  /// (π/2)[cosh(t) + 1]⁻¹ as typeset in the source; integrates to π.
  printed,
};

double p_weight(double t, PtForm form = PtForm::normalized);

struct QuadratureSpec {
  int nodes = 101;
  double half_width = 10.0;
  /// Equal-width Gauss–Legendre panels; `nodes` must be divisible by it.
  int panels = 1;
  std::string scheme = "gauss-legendre";

  void validate() const;
};

/// Nodes t_k and weights w_k ≥ 0 with Σ w_k = 1 for ∫ p(t) f(t) dt.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  /// Σ GL-weight · p(t_k) before renormalization.
  double raw_mass = 0.0;
};

QuadratureRule make_rule(const QuadratureSpec& spec,
                         PtForm form = PtForm::normalized);

/// Gauss–Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace qrev
