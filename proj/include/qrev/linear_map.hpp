#pragma once

#include <span>
#include <vector>

#include "qrev/types.hpp"

namespace qrev {

inline constexpr double kFlagTol = 1e-9;
inline constexpr double kChannelTol = 1e-10;

/// A general linear map L(C^in) → L(C^out), stored as its matrix on
/// column-stacked operators: vec(N(X)) = liouville · vec(X).
class LinearMap {
 public:
  LinearMap(int in_dim, int out_dim, Matrix liouville);

  static LinearMap identity(int dim);
  /// X ↦ Xᵀ. Positive but not completely positive.
  static LinearMap transpose(int dim);

  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  const Matrix& liouville() const { return liouville_; }

  Matrix apply(const Matrix& x) const;
  Matrix operator()(const Matrix& x) const { return apply(x); }
  /// Hilbert–Schmidt adjoint.
  LinearMap adjoint() const;
  /// `next ∘ this`.
  LinearMap then(const LinearMap& next) const;
  LinearMap scaled(double c) const;
  /// Σ_ij |i⟩⟨j| ⊗ N(|i⟩⟨j|), input factor first.
  Matrix choi() const;

  bool is_trace_preserving(double tol = kFlagTol) const;
  bool is_unital(double tol = kFlagTol) const;
  bool is_subunital(double tol = kFlagTol) const;

 private:
  int in_dim_;
  int out_dim_;
  Matrix liouville_;
};

enum class TraceClass { preserving, non_increasing, increasing };
enum class UnitalClass { unital, subunital, neither };

/// A completely positive map in Kraus form, X ↦ Σ K X K†.
class CPMap {
 public:
  CPMap(int in_dim, int out_dim, std::vector<Matrix> kraus);

  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }

  Matrix apply(const Matrix& x) const;
  Matrix operator()(const Matrix& x) const { return apply(x); }
  /// Kraus operators K†.
  CPMap adjoint() const;
  /// `next ∘ this`.
  CPMap then(const CPMap& next) const;
  CPMap scaled(double c) const;
  Matrix choi() const;
  LinearMap to_linear_map() const;

  /// Σ K†K; equals I iff trace preserving.
  Matrix kraus_gram() const;
  /// N(I) = Σ K K†.
  Matrix image_of_identity() const;

  TraceClass trace_class() const { return trace_class_; }
  UnitalClass unital_class() const { return unital_class_; }
  /// Largest eigenvalue of Σ K†K.
  double trace_gain() const { return trace_gain_; }
  /// Largest eigenvalue of N(I).
  double identity_gain() const { return identity_gain_; }

 private:
  int in_dim_;
  int out_dim_;
  std::vector<Matrix> kraus_;
  TraceClass trace_class_ = TraceClass::increasing;
  UnitalClass unital_class_ = UnitalClass::neither;
  double trace_gain_ = 0.0;
  double identity_gain_ = 0.0;
};

/// A CP map whose Kraus operators satisfy Σ K†K ≤ I.
class Channel : public CPMap {
 public:
  Channel(int in_dim, int out_dim, std::vector<Matrix> kraus,
          double tol = kChannelTol);
  explicit Channel(CPMap map, double tol = kChannelTol);

  static Channel identity(int dim);
  static Channel unitary(const Matrix& u);
  /// X ↦ V X V† for an isometry V.
  static Channel isometric(const Matrix& v, double tol = kChannelTol);
  /// Trace over factor `index` of a register with factor dimensions `dims`.
  static Channel partial_trace(std::span<const int> dims, int index);
  /// X ↦ Tr{X} τ.
  static Channel replacer(int in_dim, const Matrix& tau);

  bool is_trace_preserving() const {
    return trace_class() == TraceClass::preserving;
  }
};

bool is_cptp(const CPMap& map, double tol = kFlagTol);
bool is_trace_preserving(const CPMap& map, double tol = kFlagTol);
bool is_unital(const CPMap& map, double tol = kFlagTol);
bool is_subunital(const CPMap& map, double tol = kFlagTol);

/// Applies a map to factor `index` of an operator on factors `dims`; the
/// output factor takes the place of the input one.
Matrix apply_on(const LinearMap& map, const Matrix& x, std::span<const int> dims,
                int index);
Matrix apply_on(const CPMap& map, const Matrix& x, std::span<const int> dims,
                int index);
/// id ⊗ N ⊗ id as a Kraus map.
CPMap extend(const CPMap& map, std::span<const int> dims, int index);

}  // namespace qrev
