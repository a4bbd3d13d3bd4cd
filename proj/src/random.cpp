#include "qrev/random.hpp"

#include <cmath>
#include <numbers>

#include "qrev/matfun.hpp"

namespace qrev {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t Rng::derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

Rng Rng::stream(std::uint64_t master, std::uint64_t index) {
  return Rng(derive_seed(master, index));
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return Complex(re, im) * std::numbers::sqrt2 * 0.5;
}

int Rng::uniform_int(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(static_cast<std::uint64_t>(uniform() * span) % span);
}

Matrix ginibre(int rows, int cols, Rng& rng) {
  Matrix g(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) g(i, j) = rng.complex_normal();
  }
  return g;
}

Matrix random_isometry(int in_dim, int out_dim, Rng& rng) {
  if (in_dim < 1 || out_dim < in_dim) {
    throw DimensionError("isometry needs 1 <= in_dim <= out_dim");
  }
  const Matrix g = ginibre(out_dim, in_dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(out_dim, in_dim);
  const Matrix r = qr.matrixQR().topLeftCorner(in_dim, in_dim);
  // Fix the phase of R's diagonal so the distribution is Haar.
  for (int j = 0; j < in_dim; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

Matrix random_unitary(int dim, Rng& rng) { return random_isometry(dim, dim, rng); }

Vector random_pure_vector(int dim, Rng& rng) {
  Vector v = ginibre(dim, 1, rng).col(0);
  return v / v.norm();
}

Matrix random_density_matrix(int dim, int rank, Rng& rng) {
  if (dim < 1 || rank < 1 || rank > dim) {
    throw DimensionError("random density needs 1 <= rank <= dim");
  }
  const Matrix g = ginibre(dim, rank, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return hermitian_part(rho);
}

DensityOperator random_density(int dim, int rank, Rng& rng, const std::string& label) {
  return DensityOperator(label, random_density_matrix(dim, rank, rng));
}

Channel random_channel(int in_dim, int out_dim, int env_dim, Rng& rng) {
  if (in_dim < 1 || out_dim < 1 || env_dim < 1) {
    throw DimensionError("channel dimensions must be positive");
  }
  if (out_dim * env_dim < in_dim) {
    throw DimensionError("out_dim * env_dim must be at least in_dim");
  }
  const Matrix v = random_isometry(in_dim, out_dim * env_dim, rng);
  std::vector<Matrix> kraus;
  for (int e = 0; e < env_dim; ++e) {
    Matrix k(out_dim, in_dim);
    for (int o = 0; o < out_dim; ++o) k.row(o) = v.row(o * env_dim + e);
    kraus.push_back(std::move(k));
  }
  return Channel(in_dim, out_dim, std::move(kraus));
}

Channel random_mixed_unitary(int dim, int terms, Rng& rng) {
  std::vector<double> w(terms);
  double total = 0.0;
  for (auto& x : w) {
    x = -std::log(1.0 - rng.uniform());
    total += x;
  }
  std::vector<Matrix> kraus;
  for (int k = 0; k < terms; ++k) {
    kraus.push_back(std::sqrt(w[k] / total) * random_unitary(dim, rng));
  }
  return Channel(dim, dim, std::move(kraus));
}

Instrument random_instrument(int dim, int n_outcomes, bool efficient, Rng& rng) {
  if (dim < 1 || n_outcomes < 1) {
    throw DimensionError("instrument needs dim >= 1 and at least one outcome");
  }
  std::vector<Outcome> outcomes;
  if (efficient) {
    std::vector<Matrix> parts;
    Matrix total = Matrix::Zero(dim, dim);
    for (int x = 0; x < n_outcomes; ++x) {
      const Matrix g = ginibre(dim, dim, rng);
      parts.push_back(g * g.adjoint());
      total += parts.back();
    }
    const Matrix norm = inv_sqrt_psd(total);
    for (int x = 0; x < n_outcomes; ++x) {
      const Matrix povm = hermitian_part(norm * parts[x] * norm);
      const Matrix v = random_unitary(dim, rng);
      outcomes.push_back({std::to_string(x), {v * sqrt_psd(povm)}});
    }
  } else {
    // Two Kraus operators per outcome, sliced from one Stinespring isometry.
    const int per = 2;
    const Channel c = random_channel(dim, dim, per * n_outcomes, rng);
    for (int x = 0; x < n_outcomes; ++x) {
      outcomes.push_back(
          {std::to_string(x), {c.kraus()[per * x], c.kraus()[per * x + 1]}});
    }
  }
  return Instrument(dim, dim, std::move(outcomes));
}

Channel random_subunital_channel(int in_dim, int out_dim, int terms, Rng& rng) {
  const Matrix v = random_isometry(in_dim, out_dim, rng);
  const Channel mix = random_mixed_unitary(out_dim, terms, rng);
  return Channel(Channel::isometric(v).then(mix));
}

DensityOperator random_markov_chain(int da, int db, int dc, Rng& rng) {
  const Matrix rho_bc = random_density_matrix(db * dc, db * dc, rng);
  const int d = da * db * dc;
  Matrix out = Matrix::Zero(d, d);
  for (int c = 0; c < dc; ++c) {
    // ⟨c|_C ρ_BC |c⟩_C
    Matrix block(db, db);
    for (int i = 0; i < db; ++i) {
      for (int j = 0; j < db; ++j) block(i, j) = rho_bc(i * dc + c, j * dc + c);
    }
    Matrix proj = Matrix::Zero(dc, dc);
    proj(c, c) = 1.0;
    out += kron(kron(random_density_matrix(da, 1 + c % da, rng), block), proj);
  }
  return DensityOperator({{"A", da}, {"B", db}, {"C", dc}}, out);
}

}  // namespace qrev
