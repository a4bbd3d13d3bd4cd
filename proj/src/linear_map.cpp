#include "qrev/linear_map.hpp"

#include <sstream>

#include "qrev/matfun.hpp"
#include "qrev/systems.hpp"

namespace qrev {

namespace {

Matrix vec(const Matrix& x) {
  return Eigen::Map<const Matrix>(x.data(), x.size(), 1);
}

Matrix unvec(const Matrix& v, int rows, int cols) {
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

double max_eigenvalue(const Matrix& h) {
  return eig_hermitian(hermitian_part(h)).values.maxCoeff();
}

double min_eigenvalue(const Matrix& h) {
  return eig_hermitian(hermitian_part(h)).values.minCoeff();
}

// Applies a map block-by-block to factor `index`; `f` maps one d_in×d_in
// block to a d_out×d_out block.
template <class F>
Matrix apply_blockwise(const F& f, int in_dim, int out_dim, const Matrix& x,
                       std::span<const int> dims, int index) {
  if (index < 0 || index >= static_cast<int>(dims.size()) ||
      dims[index] != in_dim) {
    throw DimensionError("map input does not match the addressed factor");
  }
  if (x.rows() != total_dim(dims) || x.cols() != x.rows()) {
    throw DimensionError("operator shape does not match factor dimensions");
  }
  int pre = 1;
  int post = 1;
  for (int i = 0; i < index; ++i) pre *= dims[i];
  for (int i = index + 1; i < static_cast<int>(dims.size()); ++i) {
    post *= dims[i];
  }
  const int out_total = pre * out_dim * post;
  Matrix y = Matrix::Zero(out_total, out_total);
  Matrix block(in_dim, in_dim);
  for (int p = 0; p < pre; ++p) {
    for (int q = 0; q < post; ++q) {
      for (int pp = 0; pp < pre; ++pp) {
        for (int qq = 0; qq < post; ++qq) {
          for (int a = 0; a < in_dim; ++a) {
            for (int b = 0; b < in_dim; ++b) {
              block(a, b) = x((p * in_dim + a) * post + q,
                              (pp * in_dim + b) * post + qq);
            }
          }
          const Matrix out = f(block);
          for (int a = 0; a < out_dim; ++a) {
            for (int b = 0; b < out_dim; ++b) {
              y((p * out_dim + a) * post + q, (pp * out_dim + b) * post + qq) =
                  out(a, b);
            }
          }
        }
      }
    }
  }
  return y;
}

}  // namespace

LinearMap::LinearMap(int in_dim, int out_dim, Matrix liouville)
    : in_dim_(in_dim), out_dim_(out_dim), liouville_(std::move(liouville)) {
  if (in_dim < 1 || out_dim < 1 || liouville_.rows() != out_dim * out_dim ||
      liouville_.cols() != in_dim * in_dim) {
    throw DimensionError("Liouville matrix shape does not match dimensions");
  }
}

LinearMap LinearMap::identity(int dim) {
  return LinearMap(dim, dim, Matrix::Identity(dim * dim, dim * dim));
}

LinearMap LinearMap::transpose(int dim) {
  Matrix l = Matrix::Zero(dim * dim, dim * dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) l(j + i * dim, i + j * dim) = 1.0;
  }
  return LinearMap(dim, dim, std::move(l));
}

Matrix LinearMap::apply(const Matrix& x) const {
  if (x.rows() != in_dim_ || x.cols() != in_dim_) {
    throw DimensionError("operator does not match map input dimension");
  }
  return unvec(liouville_ * vec(x), out_dim_, out_dim_);
}

LinearMap LinearMap::adjoint() const {
  return LinearMap(out_dim_, in_dim_, liouville_.adjoint());
}

LinearMap LinearMap::then(const LinearMap& next) const {
  if (next.in_dim_ != out_dim_) {
    throw DimensionError("composed maps have mismatched dimensions");
  }
  return LinearMap(in_dim_, next.out_dim_, next.liouville_ * liouville_);
}

LinearMap LinearMap::scaled(double c) const {
  return LinearMap(in_dim_, out_dim_, c * liouville_);
}

Matrix LinearMap::choi() const {
  const int d = in_dim_;
  const int e = out_dim_;
  Matrix j = Matrix::Zero(d * e, d * e);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      Matrix unit = Matrix::Zero(d, d);
      unit(a, b) = 1.0;
      j.block(a * e, b * e, e, e) = apply(unit);
    }
  }
  return j;
}

bool LinearMap::is_trace_preserving(double tol) const {
  return (adjoint().apply(Matrix::Identity(out_dim_, out_dim_)) -
          Matrix::Identity(in_dim_, in_dim_))
             .cwiseAbs()
             .maxCoeff() <= tol;
}

bool LinearMap::is_unital(double tol) const {
  return (apply(Matrix::Identity(in_dim_, in_dim_)) -
          Matrix::Identity(out_dim_, out_dim_))
             .cwiseAbs()
             .maxCoeff() <= tol;
}

bool LinearMap::is_subunital(double tol) const {
  const Matrix image = apply(Matrix::Identity(in_dim_, in_dim_));
  if (hermiticity_defect(image) > 1e-9) return false;
  return max_eigenvalue(image) <= 1.0 + tol;
}

CPMap::CPMap(int in_dim, int out_dim, std::vector<Matrix> kraus)
    : in_dim_(in_dim), out_dim_(out_dim), kraus_(std::move(kraus)) {
  if (in_dim < 1 || out_dim < 1) {
    throw DimensionError("map dimensions must be positive");
  }
  for (const auto& k : kraus_) {
    if (k.rows() != out_dim || k.cols() != in_dim) {
      throw DimensionError("Kraus operator shape does not match dimensions");
    }
  }
  const Matrix gram = kraus_gram();
  trace_gain_ = max_eigenvalue(gram);
  const double trace_defect =
      (gram - Matrix::Identity(in_dim, in_dim)).cwiseAbs().maxCoeff();
  if (trace_defect <= kFlagTol) {
    trace_class_ = TraceClass::preserving;
  } else if (trace_gain_ <= 1.0 + kFlagTol) {
    trace_class_ = TraceClass::non_increasing;
  }
  const Matrix image = image_of_identity();
  identity_gain_ = max_eigenvalue(image);
  const double unital_defect =
      (image - Matrix::Identity(out_dim, out_dim)).cwiseAbs().maxCoeff();
  if (unital_defect <= kFlagTol) {
    unital_class_ = UnitalClass::unital;
  } else if (identity_gain_ <= 1.0 + kFlagTol) {
    unital_class_ = UnitalClass::subunital;
  }
}

Matrix CPMap::apply(const Matrix& x) const {
  if (x.rows() != in_dim_ || x.cols() != in_dim_) {
    throw DimensionError("operator does not match map input dimension");
  }
  Matrix y = Matrix::Zero(out_dim_, out_dim_);
  for (const auto& k : kraus_) y.noalias() += k * x * k.adjoint();
  return y;
}

CPMap CPMap::adjoint() const {
  std::vector<Matrix> adj;
  adj.reserve(kraus_.size());
  for (const auto& k : kraus_) adj.push_back(k.adjoint());
  return CPMap(out_dim_, in_dim_, std::move(adj));
}

CPMap CPMap::then(const CPMap& next) const {
  if (next.in_dim_ != out_dim_) {
    throw DimensionError("composed maps have mismatched dimensions");
  }
  std::vector<Matrix> composed;
  composed.reserve(kraus_.size() * next.kraus_.size());
  for (const auto& b : next.kraus_) {
    for (const auto& a : kraus_) composed.push_back(b * a);
  }
  return CPMap(in_dim_, next.out_dim_, std::move(composed));
}

CPMap CPMap::scaled(double c) const {
  if (c < 0.0) throw DomainError("CP maps can only be scaled by c >= 0");
  std::vector<Matrix> scaled = kraus_;
  for (auto& k : scaled) k *= std::sqrt(c);
  return CPMap(in_dim_, out_dim_, std::move(scaled));
}

Matrix CPMap::choi() const {
  // Choi = Σ_k |K_k⟩⟩⟨⟨K_k| with |K⟩⟩ = Σ_i |i⟩ ⊗ K|i⟩.
  const int n = in_dim_ * out_dim_;
  Matrix stacked(n, static_cast<Eigen::Index>(kraus_.size()));
  for (std::size_t k = 0; k < kraus_.size(); ++k) {
    for (int i = 0; i < in_dim_; ++i) {
      stacked.col(k).segment(i * out_dim_, out_dim_) = kraus_[k].col(i);
    }
  }
  return stacked * stacked.adjoint();
}

LinearMap CPMap::to_linear_map() const {
  Matrix l = Matrix::Zero(out_dim_ * out_dim_, in_dim_ * in_dim_);
  for (const auto& k : kraus_) l += kron(Matrix(k.conjugate()), k);
  return LinearMap(in_dim_, out_dim_, std::move(l));
}

Matrix CPMap::kraus_gram() const {
  Matrix g = Matrix::Zero(in_dim_, in_dim_);
  for (const auto& k : kraus_) g.noalias() += k.adjoint() * k;
  return g;
}

Matrix CPMap::image_of_identity() const {
  Matrix g = Matrix::Zero(out_dim_, out_dim_);
  for (const auto& k : kraus_) g.noalias() += k * k.adjoint();
  return g;
}

Channel::Channel(int in_dim, int out_dim, std::vector<Matrix> kraus, double tol)
    : Channel(CPMap(in_dim, out_dim, std::move(kraus)), tol) {}

Channel::Channel(CPMap map, double tol) : CPMap(std::move(map)) {
  if (trace_gain() > 1.0 + tol) {
    std::ostringstream os;
    os << "Kraus operators are trace increasing: largest eigenvalue of "
          "sum K^dag K is "
       << trace_gain();
    throw DomainError(os.str());
  }
}

Channel Channel::identity(int dim) {
  return Channel(dim, dim, {Matrix::Identity(dim, dim)});
}

Channel Channel::unitary(const Matrix& u) { return isometric(u); }

Channel Channel::isometric(const Matrix& v, double tol) {
  const double defect =
      (v.adjoint() * v - Matrix::Identity(v.cols(), v.cols())).cwiseAbs().maxCoeff();
  if (defect > tol) {
    std::ostringstream os;
    os << "operator is not an isometry: |V^dag V - I| = " << defect;
    throw DomainError(os.str());
  }
  return Channel(static_cast<int>(v.cols()), static_cast<int>(v.rows()), {v});
}

Channel Channel::partial_trace(std::span<const int> dims, int index) {
  if (index < 0 || index >= static_cast<int>(dims.size())) {
    throw DimensionError("partial trace index out of range");
  }
  int pre = 1;
  int post = 1;
  for (int i = 0; i < index; ++i) pre *= dims[i];
  for (int i = index + 1; i < static_cast<int>(dims.size()); ++i) {
    post *= dims[i];
  }
  const int d = dims[index];
  std::vector<Matrix> kraus;
  for (int e = 0; e < d; ++e) {
    Matrix k = Matrix::Zero(pre * post, pre * d * post);
    for (int p = 0; p < pre; ++p) {
      for (int q = 0; q < post; ++q) k(p * post + q, (p * d + e) * post + q) = 1.0;
    }
    kraus.push_back(std::move(k));
  }
  return Channel(pre * d * post, pre * post, std::move(kraus));
}

Channel Channel::replacer(int in_dim, const Matrix& tau) {
  const Spectrum s = eig_hermitian(tau);
  std::vector<Matrix> kraus;
  for (Eigen::Index k = 0; k < s.dim(); ++k) {
    if (s.in_kernel(k)) continue;
    if (s.values(k) < 0.0) throw DomainError("replacement state is not positive");
    for (int m = 0; m < in_dim; ++m) {
      Matrix op = Matrix::Zero(tau.rows(), in_dim);
      op.col(m) = std::sqrt(s.values(k)) * s.vectors.col(k);
      kraus.push_back(std::move(op));
    }
  }
  return Channel(in_dim, static_cast<int>(tau.rows()), std::move(kraus));
}

bool is_trace_preserving(const CPMap& map, double tol) {
  return (map.kraus_gram() - Matrix::Identity(map.in_dim(), map.in_dim()))
             .cwiseAbs()
             .maxCoeff() <= tol;
}

bool is_cptp(const CPMap& map, double tol) {
  // Kraus form is CP by construction; the Choi check guards against
  // numerically broken operators.
  return is_trace_preserving(map, tol) && min_eigenvalue(map.choi()) >= -tol;
}

bool is_unital(const CPMap& map, double tol) {
  return (map.image_of_identity() - Matrix::Identity(map.out_dim(), map.out_dim()))
             .cwiseAbs()
             .maxCoeff() <= tol;
}

bool is_subunital(const CPMap& map, double tol) {
  return max_eigenvalue(map.image_of_identity()) <= 1.0 + tol;
}

Matrix apply_on(const LinearMap& map, const Matrix& x, std::span<const int> dims,
                int index) {
  return apply_blockwise([&](const Matrix& b) { return map.apply(b); },
                         map.in_dim(), map.out_dim(), x, dims, index);
}

Matrix apply_on(const CPMap& map, const Matrix& x, std::span<const int> dims,
                int index) {
  return extend(map, dims, index).apply(x);
}

CPMap extend(const CPMap& map, std::span<const int> dims, int index) {
  if (index < 0 || index >= static_cast<int>(dims.size()) ||
      dims[index] != map.in_dim()) {
    throw DimensionError("map input does not match the addressed factor");
  }
  int pre = 1;
  int post = 1;
  for (int i = 0; i < index; ++i) pre *= dims[i];
  for (int i = index + 1; i < static_cast<int>(dims.size()); ++i) {
    post *= dims[i];
  }
  const Matrix ipre = Matrix::Identity(pre, pre);
  const Matrix ipost = Matrix::Identity(post, post);
  std::vector<Matrix> kraus;
  kraus.reserve(map.kraus().size());
  for (const auto& k : map.kraus()) kraus.push_back(kron(kron(ipre, k), ipost));
  return CPMap(pre * map.in_dim() * post, pre * map.out_dim() * post,
               std::move(kraus));
}

}  // namespace qrev
