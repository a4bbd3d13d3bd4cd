#include "qrev/entropy.hpp"

#include <cmath>
#include <sstream>

#include "qrev/matfun.hpp"

namespace qrev {

namespace {

double entropy_of(const Spectrum& s) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < s.dim(); ++i) {
    if (s.in_kernel(i) || s.values(i) <= 0.0) continue;
    h -= s.values(i) * std::log2(s.values(i));
  }
  return h;
}

Labels concat(const Labels& a, const Labels& b) {
  Labels out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

double marginal_entropy(const DensityOperator& rho, const Labels& keep) {
  if (keep.empty()) return 0.0;
  return entropy(marginal(rho, keep));
}

}  // namespace

double entropy(const Matrix& rho) { return entropy_of(eig_hermitian(rho)); }

double entropy(const DensityOperator& rho) { return entropy(rho.matrix()); }

RelEntropyResult rel_entropy(const Matrix& p, const Matrix& q, double support_tol) {
  if (p.rows() != q.rows() || p.rows() != p.cols() || q.rows() != q.cols()) {
    throw DimensionError("relative entropy arguments have different shapes");
  }
  const Spectrum sp = eig_hermitian(p);
  if (sp.rank() == 0) throw DomainError("relative entropy needs P != 0");
  const Spectrum sq = eig_hermitian(q);

  RelEntropyResult out;
  double cross = 0.0;
  for (Eigen::Index i = 0; i < sq.dim(); ++i) {
    const auto v = sq.vectors.col(i);
    const double weight = (v.adjoint() * p * v)(0, 0).real();
    if (sq.in_kernel(i)) {
      out.support_violation += weight;
      continue;
    }
    if (sq.values(i) < 0.0) {
      std::ostringstream os;
      os << "relative entropy: Q has negative eigenvalue " << sq.values(i);
      throw DomainError(os.str());
    }
    cross += weight * std::log2(sq.values(i));
  }
  if (out.support_violation > support_tol) {
    out.infinite = true;
    out.value = std::numeric_limits<double>::infinity();
    return out;
  }
  out.value = -entropy_of(sp) - cross;
  return out;
}

double rel_entropy_value(const Matrix& p, const Matrix& q, double support_tol) {
  return rel_entropy(p, q, support_tol).value;
}

double cond_entropy(const DensityOperator& rho, const Labels& a, const Labels& b) {
  return marginal_entropy(rho, concat(a, b)) - marginal_entropy(rho, b);
}

double mutual_info(const DensityOperator& rho, const Labels& a, const Labels& b) {
  return marginal_entropy(rho, a) + marginal_entropy(rho, b) -
         marginal_entropy(rho, concat(a, b));
}

double cmi(const DensityOperator& rho, const Labels& a, const Labels& b,
           const Labels& c) {
  return marginal_entropy(rho, concat(a, c)) + marginal_entropy(rho, concat(b, c)) -
         marginal_entropy(rho, concat(concat(a, b), c)) - marginal_entropy(rho, c);
}

double holevo_chi(const Ensemble& ensemble) {
  double avg = 0.0;
  for (std::size_t x = 0; x < ensemble.size(); ++x) {
    avg += ensemble.probs[x] * entropy(ensemble.states[x]);
  }
  return entropy(ensemble.average()) - avg;
}

double trace_norm(const Matrix& x) {
  Eigen::JacobiSVD<Matrix> svd(x);
  return svd.singularValues().sum();
}

double trace_distance(const Matrix& rho, const Matrix& sigma) {
  const Matrix diff = hermitian_part(rho - sigma);
  return eig_hermitian(diff).values.cwiseAbs().sum();
}

double root_fidelity(const Matrix& p, const Matrix& q) {
  if (p.rows() != q.rows()) throw DimensionError("fidelity arguments differ in size");
  return trace_norm(sqrt_psd(p) * sqrt_psd(q));
}

double fidelity(const Matrix& p, const Matrix& q) {
  const double f = root_fidelity(p, q);
  return f * f;
}

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    std::ostringstream os;
    os << "binary entropy argument " << x << " outside [0, 1]";
    throw DomainError(os.str());
  }
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

}  // namespace qrev
