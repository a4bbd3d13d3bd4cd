#include "qrev/systems.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace qrev {

namespace {

void check_permutation(std::span<const int> dims, std::span<const int> perm) {
  if (perm.size() != dims.size()) {
    throw DimensionError("permutation length does not match factor count");
  }
  std::vector<int> sorted(perm.begin(), perm.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != static_cast<int>(i)) {
      throw DimensionError("invalid factor permutation");
    }
  }
}

// new_index[old] for a factor permutation.
std::vector<Eigen::Index> permuted_indices(std::span<const int> dims,
                                           std::span<const int> perm) {
  check_permutation(dims, perm);
  const std::size_t n = dims.size();
  const int total = total_dim(dims);
  // Strides of the new layout, addressed by old factor position.
  std::vector<Eigen::Index> new_stride(n);
  Eigen::Index s = 1;
  for (std::size_t k = n; k-- > 0;) {
    new_stride[perm[k]] = s;
    s *= dims[perm[k]];
  }
  std::vector<Eigen::Index> map(total);
  std::vector<int> digit(n, 0);
  for (int old = 0; old < total; ++old) {
    Eigen::Index idx = 0;
    for (std::size_t f = 0; f < n; ++f) idx += digit[f] * new_stride[f];
    map[old] = idx;
    for (std::size_t f = n; f-- > 0;) {
      if (++digit[f] < dims[f]) break;
      digit[f] = 0;
    }
  }
  return map;
}

}  // namespace

int total_dim(const Systems& systems) {
  int d = 1;
  for (const auto& s : systems) d *= s.dim;
  return d;
}

int total_dim(std::span<const int> dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

std::vector<int> dims_of(const Systems& systems) {
  std::vector<int> dims;
  dims.reserve(systems.size());
  for (const auto& s : systems) dims.push_back(s.dim);
  return dims;
}

int index_of(const Systems& systems, const std::string& label) {
  for (std::size_t i = 0; i < systems.size(); ++i) {
    if (systems[i].label == label) return static_cast<int>(i);
  }
  throw DimensionError("unknown system label '" + label + "' in [" +
                       describe(systems) + "]");
}

std::string describe(const Systems& systems) {
  std::ostringstream os;
  for (std::size_t i = 0; i < systems.size(); ++i) {
    if (i) os << ',';
    os << systems[i].label << ':' << systems[i].dim;
  }
  return os.str();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

Matrix permute_systems(const Matrix& x, std::span<const int> dims,
                       std::span<const int> perm) {
  if (x.rows() != total_dim(dims) || x.cols() != x.rows()) {
    throw DimensionError("operator shape does not match factor dimensions");
  }
  const auto map = permuted_indices(dims, perm);
  Matrix y(x.rows(), x.cols());
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    for (Eigen::Index r = 0; r < x.rows(); ++r) y(map[r], map[c]) = x(r, c);
  }
  return y;
}

Vector permute_systems(const Vector& v, std::span<const int> dims,
                       std::span<const int> perm) {
  if (v.size() != total_dim(dims)) {
    throw DimensionError("vector length does not match factor dimensions");
  }
  const auto map = permuted_indices(dims, perm);
  Vector w(v.size());
  for (Eigen::Index r = 0; r < v.size(); ++r) w(map[r]) = v(r);
  return w;
}

Matrix partial_trace(const Matrix& x, std::span<const int> dims,
                     std::span<const int> discard) {
  std::vector<bool> drop(dims.size(), false);
  for (int i : discard) {
    if (i < 0 || i >= static_cast<int>(dims.size()) || drop[i]) {
      throw DimensionError("invalid factor index in partial trace");
    }
    drop[i] = true;
  }
  std::vector<int> perm;
  int kept = 1;
  int traced = 1;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (!drop[i]) {
      perm.push_back(static_cast<int>(i));
      kept *= dims[i];
    }
  }
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (drop[i]) {
      perm.push_back(static_cast<int>(i));
      traced *= dims[i];
    }
  }
  const Matrix y = permute_systems(x, dims, perm);
  Matrix out = Matrix::Zero(kept, kept);
  for (int a = 0; a < kept; ++a) {
    for (int b = 0; b < kept; ++b) {
      Complex acc = 0.0;
      for (int e = 0; e < traced; ++e) acc += y(a * traced + e, b * traced + e);
      out(a, b) = acc;
    }
  }
  return out;
}

}  // namespace qrev
