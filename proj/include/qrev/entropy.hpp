#pragma once

#include <limits>
#include <string>
#include <vector>

#include "qrev/qcore.hpp"

// All entropic quantities are in bits.

namespace qrev {

inline constexpr double kSupportTol = 1e-9;

struct RelEntropyResult {
  /// +inf when the support condition fails.
  double value = 0.0;
  bool infinite = false;
  /// Mass of P on ker(Q).
  double support_violation = 0.0;
};

double entropy(const Matrix& rho);
double entropy(const DensityOperator& rho);

/// D(P‖Q) = Tr{P[log P − log Q]} for positive semi-definite P ≠ 0 and Q.
RelEntropyResult rel_entropy(const Matrix& p, const Matrix& q,
                             double support_tol = kSupportTol);
/// Finite value or +inf.
double rel_entropy_value(const Matrix& p, const Matrix& q,
                         double support_tol = kSupportTol);

using Labels = std::vector<std::string>;

/// H(A|B) = H(AB) − H(B).
double cond_entropy(const DensityOperator& rho, const Labels& a, const Labels& b);
/// I(A;B) = H(A) + H(B) − H(AB).
double mutual_info(const DensityOperator& rho, const Labels& a, const Labels& b);
/// I(A;B|C) = H(AC) + H(BC) − H(ABC) − H(C).
double cmi(const DensityOperator& rho, const Labels& a, const Labels& b,
           const Labels& c);

/// χ = H(Σ p ρ^x) − Σ p H(ρ^x).
double holevo_chi(const Ensemble& ensemble);

/// ‖X‖₁, the sum of singular values.
double trace_norm(const Matrix& x);
/// ‖ρ − σ‖₁ (no factor 1/2).
double trace_distance(const Matrix& rho, const Matrix& sigma);
/// ‖√P √Q‖₁ for positive semi-definite P, Q.
double root_fidelity(const Matrix& p, const Matrix& q);
double fidelity(const Matrix& p, const Matrix& q);

/// h₂(x) = −x log x − (1−x) log(1−x).
double binary_entropy(double x);

}  // namespace qrev
