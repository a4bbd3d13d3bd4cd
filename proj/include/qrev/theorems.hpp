#pragma once

#include <cstdint>

#include "qrev/entropy.hpp"
#include "qrev/quadrature.hpp"
#include "qrev/recovery.hpp"
#include "qrev/report.hpp"

// Every check returns its headline inequality first, followed by the side
// conditions it verified. Each entry has its own tolerance.
namespace qrev {

inline constexpr double kGainTol = 1e-8;
inline constexpr double kRecoveryTol = 1e-6;
inline constexpr double kQuadratureTol = 1e-5;
/// Outcomes with smaller probability are dropped from all sums.
inline constexpr double kOutcomeFloor = 1e-12;

/// H(N(ρ)) − H(ρ) ≥ D(ρ‖(N†∘N)(ρ)) for positive trace-preserving N.
Checks check_entropy_gain(const Matrix& rho, const LinearMap& map, double tol = kGainTol);
Checks check_entropy_gain(const Matrix& rho, const CPMap& map, double tol = kGainTol);

/// H(N(ρ)) − H(ρ) ≥ D(ρ‖(R∘N)(ρ)) with R = adjoint_recovery(N, τ), plus
/// Klein (rhs ≥ 0) and dominance by D(ρ‖(N†∘N)(ρ)).
Checks check_entropy_gain_recovery(const Matrix& rho, const CPMap& map, const Matrix& tau,
                                   double tol = kGainTol);
Checks check_entropy_gain_recovery(const Matrix& rho, const LinearMap& map,
                                   const Matrix& tau, double tol = kGainTol);

struct SearchBudget {
  int restarts = 20;
  int evaluations = 2000;
  std::uint64_t seed = 0;
};

struct MinimalGain {
  /// Best H(N(ρ)) − H(ρ) found; an upper bound on the infimum.
  double value = 0.0;
  Matrix argmin;
  /// Best D(ρ‖(N†∘N)(ρ)) found by the same search.
  double lower_bound = 0.0;
  Matrix lower_argmin;
  /// Every restart of both searches met the simplex tolerance.
  bool converged = false;
  long evaluations = 0;
};

MinimalGain minimal_entropy_gain(const CPMap& channel, const SearchBudget& budget = {});
/// −log d ≤ value ≤ 0 for an equal-dimension channel.
Checks check_minimal_entropy_gain(const CPMap& channel, const SearchBudget& budget = {},
                                  double tol = kGainTol);

/// H(A′|B)_σ − H(A|B)_ρ ≥ D(ρ_AB‖(N†∘N ⊗ id)(ρ_AB)) with N acting on `a_label`.
Checks check_cond_entropy_gain(const DensityOperator& rho, const CPMap& map,
                               const std::string& a_label, double tol = kGainTol);

/// H(ρ) − Σ_x p(x) H(ρ^x).
double groenewold_gain(const Instrument& instrument, const Matrix& rho);

/// H(X)_σ − D(ρ‖(N†∘N)(ρ)) ≥ I_G for the instrument channel N.
Checks check_info_gain_upper(const Instrument& instrument, const Matrix& rho,
                             double tol = kGainTol);

/// H(X|R)_σ ≥ D(ρ‖(R∘N)(ρ)) on the purified input, with R the adjoint
/// recovery of the instrument channel. Also checks I_G = I(R;X).
Checks check_efficient_second_law(const Instrument& instrument, const Matrix& rho,
                                  double tol = kGainTol);

/// I(R;X) ≥ −log F(σ_RX, σ_R ⊗ σ_X), and for efficient instruments the
/// Uhlmann-witnessed form with per-outcome correction isometries.
Checks check_info_gain_no_qsi(const Instrument& instrument, const Matrix& rho,
                              double tol = kGainTol);

/// I(R;X|B)_ω ≥ −2 Σ_t w_t log Σ_x p(x) √F(ω^x_RB, R_B^{x,t/2}(ω_RB)) for an
/// instrument on `a_label` of ρ, plus trace preservation of the B-side
/// recovery instrument and, if efficient, the Uhlmann-corrected form.
Checks check_info_gain_qsi(const Instrument& instrument, const DensityOperator& rho,
                           const std::string& a_label, const QuadratureSpec& quad = {},
                           double tol = kQuadratureTol);

/// χ(E) − χ(N(E)) ≥ −2 log Σ_x p(x) √F(ρ^x, (R∘N)(ρ^x)) with R the
/// integrated recovery for the average state.
Checks check_entropic_disturbance(const Ensemble& ensemble, const CPMap& channel,
                                  const QuadratureSpec& quad = {},
                                  double tol = kRecoveryTol);

/// D(ρ‖σ) − D(N(ρ)‖N(σ)) ≥ −log F(ρ, (R∘N)(ρ)) with R the integrated
/// recovery, the per-t strengthened form, and the Petz fixed point.
Checks check_recoverability(const Matrix& rho, const Matrix& sigma, const CPMap& channel,
                            const QuadratureSpec& quad = {}, double tol = kRecoveryTol);

/// I(A;B|C) ≥ −log F(ρ_ABC, R_{C→AC}(ρ_BC)).
Checks check_cmi_recovery(const DensityOperator& rho, const std::string& a,
                          const std::string& b, const std::string& c,
                          const QuadratureSpec& quad = {}, double tol = kRecoveryTol);

}  // namespace qrev
