#pragma once

#include "qrev/linear_map.hpp"
#include "qrev/qcore.hpp"
#include "qrev/quadrature.hpp"

namespace qrev {

/// Q ↦ σ^{1/2} N†(N(σ)^{-1/2} Q N(σ)^{-1/2}) σ^{1/2}, inverses on the support.
CPMap petz_map(const Matrix& sigma, const CPMap& channel);

struct RotatedPetzSpec {
  Matrix sigma;
  CPMap channel;
  double t = 0.0;
};

/// U_{σ,−t} ∘ P_{σ,N} ∘ U_{N(σ),t} with U_{ω,t}(X) = ω^{it} X ω^{−it}.
CPMap rotated_petz(const RotatedPetzSpec& spec);
CPMap rotated_petz(const Matrix& sigma, const CPMap& channel, double t);

/// Tr{(I − Π_{N(σ)})Q} τ + Σ_k w_k R^{t_k/2}_{σ,N}(Q) with the p(t)
/// quadrature rule. Trace preserving and recovers σ exactly.
Channel integrated_recovery(const Matrix& sigma, const CPMap& channel,
                            const Matrix& tau, const QuadratureRule& rule);
Channel integrated_recovery(const Matrix& sigma, const CPMap& channel,
                            const Matrix& tau, const QuadratureSpec& quad = {});

/// The explicit form of R^{t/2}_{ρ_AC, Tr_A}:
/// ω_C ↦ ρ_AC^{(1−it)/2} [I_A ⊗ ρ_C^{−(1−it)/2} ω_C ρ_C^{−(1+it)/2}] ρ_AC^{(1+it)/2}.
/// Input is the remaining factors of `rho` after removing `a_label`; output
/// uses the factor order of `rho`.
CPMap cmi_recovery(const DensityOperator& rho, const std::string& a_label, double t);

/// Raised when the completion weight I − N(I) has a negative direction.
class NotCompletelyPositiveError : public std::domain_error {
 public:
  NotCompletelyPositiveError(Vector witness, double weight);
  /// Input |w⟩ with Tr{(id − N†)(|w⟩⟨w|)} < 0.
  const Vector& witness() const { return witness_; }
  double weight() const { return weight_; }

 private:
  Vector witness_;
  double weight_;
};

/// R(Y) = N†(Y) + Tr{(id − N†)(Y)} τ. CP iff N is subunital.
Channel adjoint_recovery(const CPMap& channel, const Matrix& tau);
/// Same construction for a general (e.g. positive, non-CP) map.
LinearMap adjoint_recovery(const LinearMap& channel, const Matrix& tau);

struct UhlmannResult {
  /// Isometry from the first purification's reference to the second's.
  Matrix isometry;
  /// |⟨φ^σ| U ⊗ I |φ^ρ⟩|
  double overlap = 0.0;
  /// overlap², which equals F(ρ, σ) at the optimum.
  double value = 0.0;
};

UhlmannResult uhlmann_isometry(const Purification& phi_rho,
                               const Purification& phi_sigma);
/// Raw form: both vectors laid out as reference ⊗ shared, shared dimension
/// inferred from the lengths.
UhlmannResult uhlmann_isometry(const Vector& from, int from_ref_dim,
                               const Vector& to, int to_ref_dim);

}  // namespace qrev
