#include "qrev/recovery.hpp"

#include <cmath>
#include <sstream>

#include "qrev/matfun.hpp"
#include "qrev/systems.hpp"

namespace qrev {

namespace {

using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void check_sigma(const Matrix& sigma, const CPMap& channel) {
  if (sigma.rows() != channel.in_dim() || sigma.cols() != channel.in_dim()) {
    throw DimensionError("reference operator does not match channel input");
  }
}

// Kraus operators of R^t: σ^{1/2 − it} K† N(σ)^{−1/2 + it}.
std::vector<Matrix> rotated_kraus(const Spectrum& sigma, const Spectrum& image,
                                  const CPMap& channel, double t) {
  const Matrix left = complex_power(sigma, Complex(0.5, -t));
  const Matrix right = complex_power(image, Complex(-0.5, t));
  std::vector<Matrix> kraus;
  kraus.reserve(channel.kraus().size());
  for (const auto& k : channel.kraus()) kraus.push_back(left * k.adjoint() * right);
  return kraus;
}

Matrix permutation_matrix(std::span<const int> dims, std::span<const int> perm) {
  const int d = total_dim(dims);
  Matrix p(d, d);
  for (int i = 0; i < d; ++i) {
    Vector e = Vector::Zero(d);
    e(i) = 1.0;
    p.col(i) = permute_systems(e, dims, perm);
  }
  return p;
}

std::string cp_message(double weight) {
  std::ostringstream os;
  os << "adjoint recovery is not completely positive: completion weight "
     << weight << " on the witness input";
  return os.str();
}

}  // namespace

CPMap petz_map(const Matrix& sigma, const CPMap& channel) {
  return rotated_petz(sigma, channel, 0.0);
}

CPMap rotated_petz(const RotatedPetzSpec& spec) {
  return rotated_petz(spec.sigma, spec.channel, spec.t);
}

CPMap rotated_petz(const Matrix& sigma, const CPMap& channel, double t) {
  check_sigma(sigma, channel);
  const Spectrum s = eig_hermitian(sigma);
  const Spectrum image = eig_hermitian(channel.apply(sigma));
  return CPMap(channel.out_dim(), channel.in_dim(), rotated_kraus(s, image, channel, t));
}

Channel integrated_recovery(const Matrix& sigma, const CPMap& channel,
                            const Matrix& tau, const QuadratureRule& rule) {
  check_sigma(sigma, channel);
  if (tau.rows() != channel.in_dim()) {
    throw DimensionError("completion state does not match channel input");
  }
  const Spectrum s = eig_hermitian(sigma);
  const Spectrum image = eig_hermitian(channel.apply(sigma));
  std::vector<Matrix> kraus;
  kraus.reserve(rule.nodes.size() * channel.kraus().size());
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double w = std::sqrt(rule.weights[k]);
    for (auto& op : rotated_kraus(s, image, channel, 0.5 * rule.nodes[k])) {
      kraus.push_back(w * op);
    }
  }
  // Completion on ker N(σ): √τ_j |τ_j⟩⟨m| for every kernel vector |m⟩.
  const Spectrum ts = eig_hermitian(tau);
  for (Eigen::Index m = 0; m < image.dim(); ++m) {
    if (!image.in_kernel(m)) continue;
    for (Eigen::Index j = 0; j < ts.dim(); ++j) {
      if (ts.in_kernel(j) || ts.values(j) <= 0.0) continue;
      kraus.push_back(std::sqrt(ts.values(j)) * ts.vectors.col(j) *
                      image.vectors.col(m).adjoint());
    }
  }
  return Channel(channel.out_dim(), channel.in_dim(), std::move(kraus), 1e-8);
}

Channel integrated_recovery(const Matrix& sigma, const CPMap& channel,
                            const Matrix& tau, const QuadratureSpec& quad) {
  return integrated_recovery(sigma, channel, tau, make_rule(quad));
}

CPMap cmi_recovery(const DensityOperator& rho, const std::string& a_label, double t) {
  const int a = rho.index_of(a_label);
  const auto dims = rho.dims();
  // Work with A moved to the front, then map the output back.
  std::vector<int> perm{a};
  for (int i = 0; i < static_cast<int>(dims.size()); ++i) {
    if (i != a) perm.push_back(i);
  }
  std::vector<int> front_dims;
  for (int i : perm) front_dims.push_back(dims[i]);
  const Matrix rho_ac = permute_systems(rho.matrix(), dims, perm);
  const int da = dims[a];
  const int dc = rho.dim() / da;
  const std::vector<int> discard{0};
  const Matrix rho_c = partial_trace(rho_ac, front_dims, discard);

  const Complex half_minus(0.5, -0.5 * t);
  const Matrix outer = complex_power(rho_ac, half_minus);
  const Matrix inner = complex_power(rho_c, -half_minus);
  const Matrix m = outer * kron(Matrix(Matrix::Identity(da, da)), inner);

  // Output order of `rho` from the A-first layout.
  std::vector<int> back(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) back[perm[k]] = static_cast<int>(k);
  const Matrix p = permutation_matrix(front_dims, back);

  std::vector<Matrix> kraus;
  for (int i = 0; i < da; ++i) {
    Matrix embed = Matrix::Zero(da * dc, dc);
    embed.block(i * dc, 0, dc, dc) = Matrix::Identity(dc, dc);
    kraus.push_back(p * m * embed);
  }
  return CPMap(dc, da * dc, std::move(kraus));
}

NotCompletelyPositiveError::NotCompletelyPositiveError(Vector witness, double weight)
    : std::domain_error(cp_message(weight)),
      witness_(std::move(witness)),
      weight_(weight) {}

Channel adjoint_recovery(const CPMap& channel, const Matrix& tau) {
  if (tau.rows() != channel.in_dim()) {
    throw DimensionError("completion state does not match channel input");
  }
  const int out = channel.out_dim();
  const Matrix slack = Matrix::Identity(out, out) - channel.image_of_identity();
  const Spectrum gap = eig_hermitian(hermitian_part(slack));
  const double tol = 1e-10 * std::max(1.0, gap.values.cwiseAbs().maxCoeff());
  if (gap.values(0) < -tol) {
    throw NotCompletelyPositiveError(gap.vectors.col(0), gap.values(0));
  }
  std::vector<Matrix> kraus = channel.adjoint().kraus();
  const Spectrum ts = eig_hermitian(tau);
  for (Eigen::Index m = 0; m < gap.dim(); ++m) {
    if (gap.values(m) <= tol) continue;
    for (Eigen::Index j = 0; j < ts.dim(); ++j) {
      if (ts.in_kernel(j) || ts.values(j) <= 0.0) continue;
      kraus.push_back(std::sqrt(gap.values(m) * ts.values(j)) * ts.vectors.col(j) *
                      gap.vectors.col(m).adjoint());
    }
  }
  return Channel(out, channel.in_dim(), std::move(kraus));
}

LinearMap adjoint_recovery(const LinearMap& channel, const Matrix& tau) {
  if (tau.rows() != channel.in_dim()) {
    throw DimensionError("completion state does not match channel input");
  }
  const int out = channel.out_dim();
  const Matrix slack = Matrix::Identity(out, out) -
                       channel.apply(Matrix::Identity(channel.in_dim(), channel.in_dim()));
  const Matrix vt = Eigen::Map<const Matrix>(tau.data(), tau.size(), 1);
  const Matrix vs = Eigen::Map<const Matrix>(slack.data(), slack.size(), 1);
  return LinearMap(out, channel.in_dim(), channel.adjoint().liouville() + vt * vs.adjoint());
}

UhlmannResult uhlmann_isometry(const Purification& phi_rho,
                               const Purification& phi_sigma) {
  if (phi_rho.systems != phi_sigma.systems) {
    throw DimensionError("purifications do not share the purified systems");
  }
  return uhlmann_isometry(phi_rho.vector, phi_rho.reference_dim, phi_sigma.vector,
                          phi_sigma.reference_dim);
}

UhlmannResult uhlmann_isometry(const Vector& from, int from_ref_dim, const Vector& to,
                               int to_ref_dim) {
  if (from_ref_dim < 1 || to_ref_dim < 1 || from.size() % from_ref_dim != 0 ||
      to.size() % to_ref_dim != 0 ||
      from.size() / from_ref_dim != to.size() / to_ref_dim) {
    throw DimensionError("purifications have incompatible shapes");
  }
  if (from_ref_dim > to_ref_dim) {
    throw DimensionError("no isometry from a larger into a smaller reference");
  }
  const Eigen::Index shared = from.size() / from_ref_dim;
  const RowMajor psi1 = Eigen::Map<const RowMajor>(from.data(), from_ref_dim, shared);
  const RowMajor psi2 = Eigen::Map<const RowMajor>(to.data(), to_ref_dim, shared);
  const Matrix overlap = psi1 * psi2.adjoint();
  Eigen::JacobiSVD<Matrix> svd(overlap, Eigen::ComputeThinU | Eigen::ComputeThinV);
  UhlmannResult out;
  out.isometry = svd.matrixV() * svd.matrixU().adjoint();
  // Evaluate the achieved overlap directly rather than trusting Σ s.
  const Vector moved = kron(out.isometry, Matrix(Matrix::Identity(shared, shared))) * from;
  out.overlap = std::abs(to.dot(moved));
  out.value = out.overlap * out.overlap;
  return out;
}

}  // namespace qrev
