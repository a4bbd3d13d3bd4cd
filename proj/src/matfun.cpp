#include "qrev/matfun.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qrev {

namespace {

std::string asymmetry_message(double asymmetry, double tol) {
  std::ostringstream os;
  os << "matrix is not Hermitian: relative asymmetry " << asymmetry
     << " exceeds " << tol;
  return os.str();
}

}  // namespace

NotHermitianError::NotHermitianError(double asymmetry, double tol)
    : std::invalid_argument(asymmetry_message(asymmetry, tol)),
      asymmetry_(asymmetry) {}

double Spectrum::cutoff() const {
  if (values.size() == 0) return 0.0;
  const double lmax = values.cwiseAbs().maxCoeff();
  return static_cast<double>(values.size()) * lmax * kRankTol;
}

bool Spectrum::in_kernel(Eigen::Index i) const {
  return std::abs(values(i)) <= cutoff();
}

Eigen::Index Spectrum::rank() const {
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < values.size(); ++i) r += in_kernel(i) ? 0 : 1;
  return r;
}

double hermiticity_defect(const Matrix& h) {
  if (h.rows() != h.cols()) {
    throw DimensionError("Hermitian matrix must be square");
  }
  const double scale = h.size() ? h.cwiseAbs().maxCoeff() : 0.0;
  if (scale == 0.0) return 0.0;
  return (h - h.adjoint()).cwiseAbs().maxCoeff() / scale;
}

Matrix hermitian_part(const Matrix& h) { return 0.5 * (h + h.adjoint()); }

Spectrum eig_hermitian(const Matrix& h, double tol) {
  const double defect = hermiticity_defect(h);
  if (defect > tol) throw NotHermitianError(defect, tol);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(h));
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("Hermitian eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix mat_func(const Spectrum& s, const std::function<double(double)>& f) {
  RealVector mapped = RealVector::Zero(s.dim());
  for (Eigen::Index i = 0; i < s.dim(); ++i) {
    if (s.in_kernel(i)) continue;
    const double v = f(s.values(i));
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "function undefined at support eigenvalue " << s.values(i);
      throw DomainError(os.str());
    }
    mapped(i) = v;
  }
  return s.vectors * mapped.cast<Complex>().asDiagonal() * s.vectors.adjoint();
}

Matrix mat_func(const Matrix& h, const std::function<double(double)>& f) {
  return mat_func(eig_hermitian(h), f);
}

Matrix complex_power(const Spectrum& s, Complex z) {
  Vector mapped = Vector::Zero(s.dim());
  for (Eigen::Index i = 0; i < s.dim(); ++i) {
    if (s.in_kernel(i)) continue;
    const double lambda = s.values(i);
    if (lambda < 0.0) {
      std::ostringstream os;
      os << "complex power of negative support eigenvalue " << lambda;
      throw DomainError(os.str());
    }
    mapped(i) = std::exp(z * std::log(lambda));
  }
  return s.vectors * mapped.asDiagonal() * s.vectors.adjoint();
}

Matrix complex_power(const Matrix& h, Complex z) {
  return complex_power(eig_hermitian(h), z);
}

Matrix support_projector(const Spectrum& s) {
  return mat_func(s, [](double) { return 1.0; });
}

Matrix support_projector(const Matrix& h) {
  return support_projector(eig_hermitian(h));
}

Matrix sqrt_psd(const Matrix& h) { return complex_power(h, 0.5); }

Matrix inv_sqrt_psd(const Matrix& h) { return complex_power(h, -0.5); }

Matrix pinv(const Matrix& h) {
  return mat_func(h, [](double x) { return 1.0 / x; });
}

Matrix log2_psd(const Matrix& h) {
  return mat_func(h, [](double x) { return x > 0.0 ? std::log2(x) : NAN; });
}

}  // namespace qrev
