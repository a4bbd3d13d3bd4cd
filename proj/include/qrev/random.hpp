#pragma once

#include <cstdint>
#include <random>

#include "qrev/qcore.hpp"

namespace qrev {

/// Seedable generator with platform-independent output: mt19937_64 words
/// are turned into doubles and normals by fixed formulas instead of the
/// implementation-defined standard distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for trial `index` of a campaign seeded with `master`.
  static Rng stream(std::uint64_t master, std::uint64_t index);
  static std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform();
  double normal();
  /// Standard complex Gaussian, E|z|² = 1.
  Complex complex_normal();
  int uniform_int(int lo, int hi);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

Matrix ginibre(int rows, int cols, Rng& rng);
Matrix random_unitary(int dim, Rng& rng);
/// Haar-distributed isometry C^in → C^out.
Matrix random_isometry(int in_dim, int out_dim, Rng& rng);
Vector random_pure_vector(int dim, Rng& rng);

/// Normalized G G† with G a dim × rank Ginibre matrix.
DensityOperator random_density(int dim, int rank, Rng& rng,
                               const std::string& label = "A");
Matrix random_density_matrix(int dim, int rank, Rng& rng);
/// Kraus operators sliced from a random Stinespring isometry into out ⊗ env.
Channel random_channel(int in_dim, int out_dim, int env_dim, Rng& rng);
/// Convex mixture of `terms` Haar unitaries.
Channel random_mixed_unitary(int dim, int terms, Rng& rng);
Instrument random_instrument(int dim, int n_outcomes, bool efficient, Rng& rng);

/// Random mixed unitary on C^out after a Haar isometric embedding of C^in.
/// Subunital, and non-unital when out > in.
Channel random_subunital_channel(int in_dim, int out_dim, int terms, Rng& rng);

/// ρ_ABC = Σ_c ⟨c|ρ_BC|c⟩ ⊗ ρ_A^c ⊗ |c⟩⟨c|: a random B–C state whose C is
/// read out by a measure-and-prepare channel C → AC. I(A;B|C) = 0.
DensityOperator random_markov_chain(int da, int db, int dc, Rng& rng);

}  // namespace qrev
