#pragma once

#include <span>
#include <string>
#include <vector>

#include "qrev/types.hpp"

namespace qrev {

/// One labeled tensor factor.
struct System {
  std::string label;
  int dim = 1;

  bool operator==(const System&) const = default;
};

using Systems = std::vector<System>;

int total_dim(const Systems& systems);
int total_dim(std::span<const int> dims);
std::vector<int> dims_of(const Systems& systems);
/// Position of `label` in `systems`; DimensionError if absent.
int index_of(const Systems& systems, const std::string& label);
/// Human-readable "A:2,B:3".
std::string describe(const Systems& systems);

Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);

/// Reorders tensor factors: factor k of the result is factor perm[k] of the
/// input.
Matrix permute_systems(const Matrix& x, std::span<const int> dims,
                       std::span<const int> perm);
Vector permute_systems(const Vector& v, std::span<const int> dims,
                       std::span<const int> perm);

/// Traces out the factors at positions `discard`; the remaining factors keep
/// their relative order.
Matrix partial_trace(const Matrix& x, std::span<const int> dims,
                     std::span<const int> discard);

}  // namespace qrev
