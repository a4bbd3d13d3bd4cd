#include "qrev/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "qrev/matfun.hpp"

namespace qrev {

namespace {

void check_labels(const Systems& systems) {
  std::set<std::string> seen;
  for (const auto& s : systems) {
    if (s.dim < 1) throw DimensionError("system '" + s.label + "' has dim < 1");
    if (!seen.insert(s.label).second) {
      throw DimensionError("duplicate system label '" + s.label + "'");
    }
  }
}

std::vector<int> indices_of(const Systems& systems,
                            const std::vector<std::string>& labels) {
  std::vector<int> idx;
  for (const auto& l : labels) idx.push_back(index_of(systems, l));
  return idx;
}

}  // namespace

DensityOperator::DensityOperator(Systems systems, Matrix matrix, double tol)
    : systems_(std::move(systems)), matrix_(std::move(matrix)) {
  check_labels(systems_);
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() != total_dim(systems_)) {
    throw DimensionError("density matrix shape does not match systems [" +
                         describe(systems_) + "]");
  }
  const double defect = hermiticity_defect(matrix_);
  if (defect > 1e-9) throw NotHermitianError(defect, 1e-9);
  matrix_ = hermitian_part(matrix_);
  const double trace = matrix_.trace().real();
  if (std::abs(trace - 1.0) > tol) {
    std::ostringstream os;
    os << "density matrix trace " << trace << " differs from 1";
    throw DomainError(os.str());
  }
  const double min_eig = eig_hermitian(matrix_).values.minCoeff();
  if (min_eig < -tol) {
    std::ostringstream os;
    os << "density matrix has negative eigenvalue " << min_eig;
    throw DomainError(os.str());
  }
}

DensityOperator::DensityOperator(std::string label, Matrix matrix, double tol)
    : systems_{{std::move(label), static_cast<int>(matrix.rows())}} {
  *this = DensityOperator(systems_, std::move(matrix), tol);
}

DensityOperator pure_state(std::string label, const Vector& psi) {
  const Vector n = psi / psi.norm();
  return DensityOperator(std::move(label), n * n.adjoint());
}

DensityOperator maximally_mixed(std::string label, int dim) {
  return DensityOperator(std::move(label),
                         Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  Systems systems = a.systems();
  systems.insert(systems.end(), b.systems().begin(), b.systems().end());
  return DensityOperator(std::move(systems), kron(a.matrix(), b.matrix()));
}

Matrix tensor(const Matrix& a, const Matrix& b) { return kron(a, b); }

DensityOperator partial_trace(const DensityOperator& rho,
                              const std::vector<std::string>& discard) {
  const auto idx = indices_of(rho.systems(), discard);
  Systems kept;
  for (std::size_t i = 0; i < rho.systems().size(); ++i) {
    if (std::find(idx.begin(), idx.end(), static_cast<int>(i)) == idx.end()) {
      kept.push_back(rho.systems()[i]);
    }
  }
  const auto dims = rho.dims();
  return DensityOperator(std::move(kept), partial_trace(rho.matrix(), dims, idx));
}

DensityOperator marginal(const DensityOperator& rho,
                         const std::vector<std::string>& keep) {
  const auto keep_idx = indices_of(rho.systems(), keep);
  std::vector<std::string> discard;
  for (std::size_t i = 0; i < rho.systems().size(); ++i) {
    if (std::find(keep_idx.begin(), keep_idx.end(), static_cast<int>(i)) ==
        keep_idx.end()) {
      discard.push_back(rho.systems()[i].label);
    }
  }
  return partial_trace(rho, discard);
}

DensityOperator reorder(const DensityOperator& rho,
                        const std::vector<std::string>& order) {
  const auto perm = indices_of(rho.systems(), order);
  Systems systems;
  for (int i : perm) systems.push_back(rho.systems()[i]);
  const auto dims = rho.dims();
  return DensityOperator(std::move(systems),
                         permute_systems(rho.matrix(), dims, perm));
}

DensityOperator apply_to(const CPMap& map, const DensityOperator& rho,
                         const std::string& label, const std::string& out_label) {
  const int idx = rho.index_of(label);
  const auto dims = rho.dims();
  Systems systems = rho.systems();
  systems[idx] = {out_label, map.out_dim()};
  return DensityOperator(std::move(systems), apply_on(map, rho.matrix(), dims, idx));
}

Systems Purification::all_systems() const {
  Systems all{{reference_label, reference_dim}};
  all.insert(all.end(), systems.begin(), systems.end());
  return all;
}

DensityOperator Purification::reduced() const {
  const Systems all = all_systems();
  const auto dims = dims_of(all);
  const std::vector<int> discard{0};
  return DensityOperator(systems,
                         partial_trace(vector * vector.adjoint(), dims, discard));
}

Purification purify(const DensityOperator& rho, const std::string& reference_label) {
  const Spectrum s = eig_hermitian(rho.matrix());
  const int d = rho.dim();
  std::vector<Eigen::Index> support;
  // Descending eigenvalue order so reference |0⟩ carries the largest weight.
  for (Eigen::Index i = s.dim(); i-- > 0;) {
    if (!s.in_kernel(i)) support.push_back(i);
  }
  const int r = static_cast<int>(support.size());
  Vector phi = Vector::Zero(static_cast<Eigen::Index>(r) * d);
  for (int k = 0; k < r; ++k) {
    const double lambda = std::max(s.values(support[k]), 0.0);
    phi.segment(static_cast<Eigen::Index>(k) * d, d) =
        std::sqrt(lambda) * s.vectors.col(support[k]);
  }
  phi /= phi.norm();
  for (const auto& sys : rho.systems()) {
    if (sys.label == reference_label) {
      throw DimensionError("reference label '" + reference_label +
                           "' collides with a purified system");
    }
  }
  return Purification{reference_label, r, rho.systems(), std::move(phi)};
}

Instrument::Instrument(int in_dim, int out_dim, std::vector<Outcome> outcomes,
                       double tol)
    : in_dim_(in_dim), out_dim_(out_dim), outcomes_(std::move(outcomes)) {
  if (outcomes_.empty()) throw DimensionError("instrument has no outcomes");
  Matrix gram = Matrix::Zero(in_dim, in_dim);
  for (const auto& o : outcomes_) {
    if (o.kraus.empty()) {
      throw DimensionError("outcome '" + o.label + "' has no Kraus operators");
    }
    if (o.kraus.size() != 1) efficient_ = false;
    for (const auto& k : o.kraus) {
      if (k.rows() != out_dim || k.cols() != in_dim) {
        throw DimensionError("Kraus operator shape does not match instrument");
      }
      gram += k.adjoint() * k;
    }
  }
  const double defect = (gram - Matrix::Identity(in_dim, in_dim)).cwiseAbs().maxCoeff();
  if (defect > tol) {
    std::ostringstream os;
    os << "instrument sum map is not trace preserving (defect " << defect << ")";
    throw DomainError(os.str());
  }
}

CPMap Instrument::outcome_map(std::size_t x) const {
  return CPMap(in_dim_, out_dim_, outcomes_.at(x).kraus);
}

Channel Instrument::sum_map() const {
  std::vector<Matrix> all;
  for (const auto& o : outcomes_) all.insert(all.end(), o.kraus.begin(), o.kraus.end());
  return Channel(in_dim_, out_dim_, std::move(all));
}

Channel instrument_channel(const Instrument& instrument) {
  const int n = static_cast<int>(instrument.size());
  const int out = instrument.out_dim() * n;
  std::vector<Matrix> kraus;
  for (int x = 0; x < n; ++x) {
    Vector ket = Vector::Zero(n);
    ket(x) = 1.0;
    for (const auto& k : instrument.outcomes()[x].kraus) {
      kraus.push_back(kron(k, Matrix(ket)));
    }
  }
  return Channel(instrument.in_dim(), out, std::move(kraus));
}

Ensemble::Ensemble(std::vector<double> p, std::vector<DensityOperator> s)
    : probs(std::move(p)), states(std::move(s)) {
  if (probs.size() != states.size() || probs.empty()) {
    throw DimensionError("ensemble needs one state per probability");
  }
  double total = 0.0;
  for (double q : probs) {
    if (q < 0.0) throw DomainError("ensemble probability is negative");
    total += q;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw DomainError("ensemble probabilities do not sum to 1");
  }
  for (const auto& st : states) {
    if (st.systems() != states.front().systems()) {
      throw DimensionError("ensemble states live on different systems");
    }
  }
}

Matrix Ensemble::average() const {
  Matrix avg = Matrix::Zero(states.front().dim(), states.front().dim());
  for (std::size_t x = 0; x < probs.size(); ++x) avg += probs[x] * states[x].matrix();
  return avg;
}

DensityOperator ClassicalQuantumState::assemble() const {
  if (blocks.empty()) throw DimensionError("classical-quantum state has no blocks");
  const int n = static_cast<int>(blocks.size());
  const int d = blocks.front().second.dim();
  Matrix m = Matrix::Zero(n * d, n * d);
  for (int x = 0; x < n; ++x) {
    if (blocks[x].second.systems() != blocks.front().second.systems()) {
      throw DimensionError("classical-quantum blocks live on different systems");
    }
    m.block(x * d, x * d, d, d) = blocks[x].first * blocks[x].second.matrix();
  }
  Systems systems{{classical_label, n}};
  const auto& rest = blocks.front().second.systems();
  systems.insert(systems.end(), rest.begin(), rest.end());
  return DensityOperator(std::move(systems), std::move(m));
}

}  // namespace qrev
