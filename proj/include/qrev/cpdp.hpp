#pragma once

#include "qrev/quadrature.hpp"
#include "qrev/report.hpp"

// Reduced dynamics of a system Q correlated with a reference R and an
// environment E, all three labeled "R", "Q", "E".
namespace qrev {

struct TripartiteConfiguration {
  explicit TripartiteConfiguration(DensityOperator rho);
  DensityOperator rho;  // factors in the order R, Q, E
  int r_dim() const { return rho.dims()[0]; }
  int q_dim() const { return rho.dims()[1]; }
  int e_dim() const { return rho.dims()[2]; }
};

/// Isometry V: QE → Q′E′, output factor order Q′ ⊗ E′.
struct Interaction {
  Interaction(Matrix v, int q_out, int e_out, double tol = 1e-10);
  Matrix v;
  int q_out;
  int e_out;
};

/// σ_RQ′E′ = (I_R ⊗ V) ρ (I_R ⊗ V)†.
DensityOperator evolve(const TripartiteConfiguration& config, const Interaction& v);

/// I(R;Q′)_σ − I(R;Q)_ρ.
double dp_slack(const TripartiteConfiguration& config, const Interaction& v);

/// I(R;E|Q)_ρ.
double cmi_bound(const TripartiteConfiguration& config);

struct ReducedDynamics {
  /// E_{Q→Q′}(X) = Tr_E′{V R_{Q→QE}(X) V†}.
  Channel map;
  /// −log F(σ_RQ′, E(ρ_RQ)) ≤ I(R;E|Q) first, then trace preservation.
  Checks checks;
  double fidelity = 0.0;
  /// ½‖σ_RQ′ − E(ρ_RQ)‖₁
  double epsilon = 0.0;
};

ReducedDynamics reduced_dynamics(const TripartiteConfiguration& config,
                                 const Interaction& v, const QuadratureSpec& quad = {});

/// 2ε log|R| + (1+ε) h₂(ε/(1+ε)).
double afw_bound(double epsilon, int r_dim);

/// I(R;Q′)_σ ≤ I(R;Q)_ρ + AFW(ε) whenever ½‖σ_RQ′ − E(ρ_RQ)‖₁ ≤ ε. A
/// violated premise yields a holding report marked vacuous.
Checks converse_bound(const TripartiteConfiguration& config, const Interaction& v,
                      const CPMap& map, double epsilon, double tol = 1e-8);

/// The converse for I(R;E|Q) itself, via the evolution Q′ = QE with E′
/// trivial and its own reduced dynamics and measured ε.
Checks converse_cmi_bound(const TripartiteConfiguration& config,
                          const QuadratureSpec& quad = {}, double tol = 1e-8);

/// V = I with Q′ = QE and E′ trivial.
Interaction special_evolution(const TripartiteConfiguration& config);

}  // namespace qrev
