#pragma once

#include <string>
#include <vector>

#include "qrev/linear_map.hpp"
#include "qrev/systems.hpp"
#include "qrev/types.hpp"

namespace qrev {

inline constexpr double kStateTol = 1e-10;

/// Unit-trace positive semi-definite operator on labeled tensor factors.
class DensityOperator {
 public:
  DensityOperator(Systems systems, Matrix matrix, double tol = kStateTol);
  /// Single-factor state.
  DensityOperator(std::string label, Matrix matrix, double tol = kStateTol);

  const Systems& systems() const { return systems_; }
  const Matrix& matrix() const { return matrix_; }
  std::vector<int> dims() const { return dims_of(systems_); }
  int dim() const { return static_cast<int>(matrix_.rows()); }
  int index_of(const std::string& label) const {
    return qrev::index_of(systems_, label);
  }

 private:
  Systems systems_;
  Matrix matrix_;
};

DensityOperator pure_state(std::string label, const Vector& psi);
DensityOperator maximally_mixed(std::string label, int dim);

/// Kronecker product; labels must be distinct.
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);
Matrix tensor(const Matrix& a, const Matrix& b);

DensityOperator partial_trace(const DensityOperator& rho,
                              const std::vector<std::string>& discard);
/// Marginal on `keep`, factors in their original relative order.
DensityOperator marginal(const DensityOperator& rho,
                         const std::vector<std::string>& keep);
/// Reorders factors to `order` (a permutation of the labels).
DensityOperator reorder(const DensityOperator& rho,
                        const std::vector<std::string>& order);
/// Applies `map` to the factor `label`; the output factor is relabeled
/// `out_label` and keeps its position.
DensityOperator apply_to(const CPMap& map, const DensityOperator& rho,
                         const std::string& label, const std::string& out_label);

/// |φ⟩ on reference ⊗ systems, stored in that factor order.
struct Purification {
  std::string reference_label;
  int reference_dim = 1;
  Systems systems;
  Vector vector;

  Systems all_systems() const;
  DensityOperator reduced() const;
};

/// Reference dimension equals the numerical rank of ρ.
Purification purify(const DensityOperator& rho,
                    const std::string& reference_label = "R");

/// One outcome of an instrument: a CP trace-non-increasing map in Kraus form.
struct Outcome {
  std::string label;
  std::vector<Matrix> kraus;
};

class Instrument {
 public:
  Instrument(int in_dim, int out_dim, std::vector<Outcome> outcomes,
             double tol = kChannelTol);

  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  const std::vector<Outcome>& outcomes() const { return outcomes_; }
  std::size_t size() const { return outcomes_.size(); }
  /// Every outcome has a single Kraus operator.
  bool efficient() const { return efficient_; }
  CPMap outcome_map(std::size_t x) const;
  Channel sum_map() const;

 private:
  int in_dim_;
  int out_dim_;
  std::vector<Outcome> outcomes_;
  bool efficient_ = true;
};

/// P ↦ Σ_x N^x(P) ⊗ |x⟩⟨x|, quantum factor first.
Channel instrument_channel(const Instrument& instrument);

struct Ensemble {
  Ensemble(std::vector<double> probs, std::vector<DensityOperator> states);

  std::vector<double> probs;
  std::vector<DensityOperator> states;

  Matrix average() const;
  std::size_t size() const { return probs.size(); }
};

/// Σ_x w_x |x⟩⟨x|_X ⊗ ρ^x, with weights absorbed into the blocks' trace.
struct ClassicalQuantumState {
  std::string classical_label = "X";
  std::vector<std::pair<double, DensityOperator>> blocks;

  DensityOperator assemble() const;
};

}  // namespace qrev
