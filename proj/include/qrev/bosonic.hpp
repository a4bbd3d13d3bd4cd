#pragma once

#include <string>

#include "qrev/report.hpp"

// Pure-loss and quantum-limited amplifier channels on a truncated Fock space.
namespace qrev {

struct FockTruncation {
  /// Highest retained level; matrices are (n_max + 1)-dimensional.
  int n_max = 40;
  /// Identity checks only look at levels n ≤ n_max − guard.
  int guard = 15;
  int dim() const { return n_max + 1; }
  int guarded_max() const { return n_max - guard; }
  void validate() const;
};

enum class GaussianKind { loss, amplifier, composition };

struct GaussianChannelSpec {
  GaussianKind kind = GaussianKind::loss;
  /// Transmissivity of the loss stage.
  double eta = 1.0;
  /// Gain of the amplifier stage.
  double gain = 1.0;
  FockTruncation trunc;
  double trunc_tol = 1e-6;
  void validate() const;
  std::string kind_name() const;
  /// "eta=0.8", "G=1.1" or "eta=0.8;G=1.1".
  std::string parameter() const;
};

/// ⟨n−k|K_k|n⟩ = √(C(n,k) η^{n−k} (1−η)^k). Exactly trace preserving.
Channel loss_channel(double eta, const FockTruncation& trunc);
/// ⟨n+k|A_k|n⟩ = √(C(n+k,k) (1−1/G)^k G^{−(n+1)}), cut at n_max, so trace
/// is lost from the top levels.
Channel amp_channel(double gain, const FockTruncation& trunc);

/// A_G ∘ B_η for a composition spec; the single stage otherwise.
Matrix apply_gaussian(const GaussianChannelSpec& spec, const Matrix& rho);

Matrix fock_state(int n, const FockTruncation& trunc);
/// Geometric populations with parameter `mean`, cut at `top` (default: the
/// guarded level) and renormalized.
Matrix thermal_state(double mean, const FockTruncation& trunc, int top = -1);

/// Σ_{n > n_max} ⟨m|B_η(|n⟩⟨n|)|m⟩: the part of B_η(I) on level m that
/// the truncation cannot see.
double loss_identity_tail(double eta, int m, int n_max);

/// B_η(I) = η⁻¹I, A_G(I) = G⁻¹I, or (A_G∘B_η)(I) = (ηG)⁻¹I on guarded levels.
Checks check_almost_unital(const GaussianChannelSpec& spec);

/// B_η† = η⁻¹A_{1/η}, A_G† = G⁻¹B_{1/G}, or (A_G∘B_η)† = (ηG)⁻¹A_{1/η}∘B_{1/G},
/// compared through Choi matrices restricted to guarded levels.
Checks check_adjoint_relation(const GaussianChannelSpec& spec);

/// H(N(ρ)) − H(ρ) ≥ D(ρ‖(N′∘N)(ρ)) + log c with the reversal N′ and
/// constant c ∈ {η, G, ηG} matching spec.kind.
Checks check_bosonic_entropy_gain(const GaussianChannelSpec& spec, const Matrix& rho);

/// B_η ∘ B_η′ = B_{ηη′} on guarded levels.
Checks check_loss_semigroup(double eta1, double eta2, const FockTruncation& trunc,
                            double tol = 1e-6);

}  // namespace qrev
