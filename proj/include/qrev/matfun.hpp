#pragma once

#include <functional>

#include "qrev/types.hpp"

namespace qrev {

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kRankTol = 1e-12;

class NotHermitianError : public std::invalid_argument {
 public:
  NotHermitianError(double asymmetry, double tol);
  double asymmetry() const { return asymmetry_; }

 private:
  double asymmetry_;
};

/// Eigenvalues in ascending order with the matching orthonormal eigenvectors
/// as columns.
struct Spectrum {
  RealVector values;
  Matrix vectors;

  Eigen::Index dim() const { return values.size(); }
  /// Eigenvalues with |λ| at or below this are treated as exact zeros.
  double cutoff() const;
  bool in_kernel(Eigen::Index i) const;
  Eigen::Index rank() const;
};

/// max|H − H†| divided by the largest entry magnitude (0 for the zero matrix).
double hermiticity_defect(const Matrix& h);

Spectrum eig_hermitian(const Matrix& h, double tol = kHermitianTol);

/// f applied on the support; kernel eigenvalues map to zero. A non-finite
/// f(λ) on a support eigenvalue raises DomainError.
Matrix mat_func(const Spectrum& s, const std::function<double(double)>& f);
Matrix mat_func(const Matrix& h, const std::function<double(double)>& f);

/// λ ↦ exp(z ln λ) on the support of a positive semi-definite matrix.
Matrix complex_power(const Spectrum& s, Complex z);
Matrix complex_power(const Matrix& h, Complex z);

Matrix support_projector(const Spectrum& s);
Matrix support_projector(const Matrix& h);

// Shorthands used throughout the entropy and recovery code.
Matrix sqrt_psd(const Matrix& h);
Matrix inv_sqrt_psd(const Matrix& h);
Matrix pinv(const Matrix& h);
/// Binary logarithm on the support.
Matrix log2_psd(const Matrix& h);

/// Hermitian part (H + H†)/2; used to strip round-off before eigensolves.
Matrix hermitian_part(const Matrix& h);

}  // namespace qrev
