#pragma once

// Reference implementations used only by the tests. They take different
// numerical routes from the library (Schur-based matrix functions, explicit
// index loops, general eigensolvers) so agreement is meaningful.

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "qrev/types.hpp"

namespace oracle {

using qrev::Complex;
using qrev::Matrix;
using qrev::Vector;

inline Matrix eye(int d) { return Matrix::Identity(d, d); }

inline Matrix ket_bra(const Vector& a, const Vector& b) { return a * b.adjoint(); }

inline Vector basis(int d, int i) {
  Vector v = Vector::Zero(d);
  v(i) = 1.0;
  return v;
}

inline Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

inline Vector plus_state() {
  Vector v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return v;
}

// Kronecker product by explicit blocks.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (int i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

// Tr_B of an operator on A ⊗ B.
inline Matrix trace_b(const Matrix& x, int da, int db) {
  Matrix out = Matrix::Zero(da, da);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      for (int k = 0; k < db; ++k) out(i, j) += x(i * db + k, j * db + k);
  return out;
}

// Tr_A of an operator on A ⊗ B.
inline Matrix trace_a(const Matrix& x, int da, int db) {
  Matrix out = Matrix::Zero(db, db);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k) out(i, j) += x(k * db + i, k * db + j);
  return out;
}

// Swaps the two factors of an operator on A ⊗ B.
inline Matrix swap_ab(const Matrix& x, int da, int db) {
  Matrix out(x.rows(), x.cols());
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b)
      for (int a2 = 0; a2 < da; ++a2)
        for (int b2 = 0; b2 < db; ++b2)
          out(b * da + a, b2 * da + a2) = x(a * db + b, a2 * db + b2);
  return out;
}

inline Matrix apply_kraus(const std::vector<Matrix>& kraus, const Matrix& x) {
  Matrix out = Matrix::Zero(kraus.at(0).rows(), kraus.at(0).rows());
  for (const auto& k : kraus) out += k * x * k.adjoint();
  return out;
}

inline Matrix apply_kraus_adjoint(const std::vector<Matrix>& kraus, const Matrix& y) {
  Matrix out = Matrix::Zero(kraus.at(0).cols(), kraus.at(0).cols());
  for (const auto& k : kraus) out += k.adjoint() * y * k;
  return out;
}

// Eigenvalues via the general (non-Hermitian) complex solver.
inline std::vector<double> eigenvalues(const Matrix& h) {
  Eigen::ComplexEigenSolver<Matrix> solver(h);
  std::vector<double> out;
  for (int i = 0; i < h.rows(); ++i) out.push_back(solver.eigenvalues()(i).real());
  return out;
}

inline double entropy(const Matrix& rho) {
  double h = 0.0;
  for (double l : eigenvalues(rho))
    if (l > 1e-14) h -= l * std::log2(l);
  return h;
}

// Relative entropy for full-rank q via the Schur-Parlett logarithm.
inline double rel_entropy_full_rank(const Matrix& p, const Matrix& q) {
  const Matrix logq = q.log() / std::log(2.0);
  return -entropy(p) - (p * logq).trace().real();
}

inline double trace_norm(const Matrix& x) {
  Eigen::JacobiSVD<Matrix> svd(x);
  return svd.singularValues().sum();
}

// ‖√p √q‖₁ with the Schur square root.
inline double root_fidelity(const Matrix& p, const Matrix& q) {
  const Matrix sp = p.sqrt();
  const Matrix sq = q.sqrt();
  return trace_norm(sp * sq);
}

// Haar-ish random unitary from the QR of a Gaussian matrix, using std RNG.
template <typename Gen>
Matrix random_unitary(int d, Gen& gen) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = Complex(n(gen), n(gen));
  Eigen::HouseholderQR<Matrix> qr(g);
  return qr.householderQ() * Matrix::Identity(d, d);
}

template <typename Gen>
Matrix random_density(int d, Gen& gen) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = Complex(n(gen), n(gen));
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

inline double binom(int n, int k) { return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)); }

}  // namespace oracle
