#include "qrev/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "qrev/matfun.hpp"
#include "qrev/random.hpp"
#include "qrev/systems.hpp"

namespace qrev {

namespace {

Matrix identity(int d) { return Matrix::Identity(d, d); }

double min_eigenvalue(const Matrix& h) {
  return eig_hermitian(hermitian_part(h)).values(0);
}

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

double shannon(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p) {
    if (x > kOutcomeFloor) h -= x * std::log2(x);
  }
  return h;
}

void require_square_state(const Matrix& rho, int dim) {
  if (rho.rows() != dim || rho.cols() != dim) {
    throw DimensionError("state does not match the map input");
  }
}

// Shared tail of both entropy-gain-with-recovery overloads.
Checks gain_recovery_reports(const Matrix& rho, const Matrix& image, const Matrix& adj_back,
                             const Matrix& rec_back, double recovery_tp_defect,
                             double tol) {
  const double gain = entropy(image) - entropy(rho);
  const double d_rec = rel_entropy_value(rho, hermitian_part(rec_back));
  const double d_adj = rel_entropy_value(rho, hermitian_part(adj_back));
  Checks out;
  out.push_back(make_report("entropy-gain-recovery", gain, d_rec, tol,
                            Json{{"d_adjoint", d_adj}}));
  out.push_back(make_report("entropy-gain-recovery/klein", d_rec, 0.0, 1e-9));
  out.push_back(make_report("entropy-gain-recovery/dominance", d_adj, d_rec, tol));
  out.push_back(make_report("entropy-gain-recovery/operator-order",
                            min_eigenvalue(rec_back - adj_back), 0.0, 1e-10));
  out.push_back(make_report("entropy-gain-recovery/trace-preserving",
                            -recovery_tp_defect, 0.0, 1e-10));
  return out;
}

// Probabilities and unnormalized post-measurement operators on R ⊗ A′ ⊗ rest
// for an instrument acting on the factor right after the reference.
struct PostMeasurement {
  std::vector<double> probs;
  std::vector<Matrix> joint;  // p(x) times the post-measurement state
};

PostMeasurement measure_purification(const Instrument& instrument, const Vector& phi,
                                     int ref_dim, int rest_dim) {
  PostMeasurement pm;
  const Matrix ir = identity(ref_dim);
  const Matrix irest = identity(rest_dim);
  for (const auto& outcome : instrument.outcomes()) {
    const int out_dim = instrument.out_dim();
    Matrix joint = Matrix::Zero(static_cast<Eigen::Index>(ref_dim) * out_dim * rest_dim,
                                static_cast<Eigen::Index>(ref_dim) * out_dim * rest_dim);
    for (const auto& k : outcome.kraus) {
      const Vector psi = kron(kron(ir, k), irest) * phi;
      joint += psi * psi.adjoint();
    }
    pm.probs.push_back(joint.trace().real());
    pm.joint.push_back(std::move(joint));
  }
  return pm;
}

// Block-diagonal Σ_x B_x ⊗ |x⟩⟨x| with the quantum factor first.
Matrix classical_join(const std::vector<Matrix>& blocks) {
  const int n = static_cast<int>(blocks.size());
  Matrix out;
  for (int x = 0; x < n; ++x) {
    Matrix ket = Matrix::Zero(n, n);
    ket(x, x) = 1.0;
    const Matrix term = kron(blocks[x], ket);
    if (x == 0) out = term; else out += term;
  }
  return out;
}

struct SimplexResult {
  RealVector x;
  double value = 0.0;
  long evaluations = 0;
  bool converged = false;
};

// Derivative-free Nelder–Mead with the standard coefficients.
SimplexResult nelder_mead(const std::function<double(const RealVector&)>& f,
                          const RealVector& x0, double step, int max_evals,
                          double ftol = 1e-11) {
  const Eigen::Index n = x0.size();
  std::vector<RealVector> pts(n + 1, x0);
  std::vector<double> vals(n + 1);
  for (Eigen::Index i = 0; i < n; ++i) pts[i + 1](i) += step;
  long evals = 0;
  auto eval = [&](const RealVector& x) {
    ++evals;
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };
  for (Eigen::Index i = 0; i <= n; ++i) vals[i] = eval(pts[i]);

  std::vector<Eigen::Index> order(n + 1);
  bool converged = false;
  while (evals < max_evals) {
    for (Eigen::Index i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](Eigen::Index a, Eigen::Index b) { return vals[a] < vals[b]; });
    const Eigen::Index best = order.front();
    const Eigen::Index worst = order.back();
    const Eigen::Index second = order[n - 1];
    if (std::abs(vals[worst] - vals[best]) <= ftol * (1.0 + std::abs(vals[best]))) {
      converged = true;
      break;
    }
    RealVector centroid = RealVector::Zero(n);
    for (Eigen::Index i = 0; i <= n; ++i) {
      if (i != worst) centroid += pts[i];
    }
    centroid /= static_cast<double>(n);

    const RealVector reflected = centroid + (centroid - pts[worst]);
    const double fr = eval(reflected);
    if (fr < vals[best]) {
      const RealVector expanded = centroid + 2.0 * (centroid - pts[worst]);
      const double fe = eval(expanded);
      if (fe < fr) {
        pts[worst] = expanded;
        vals[worst] = fe;
      } else {
        pts[worst] = reflected;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = reflected;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const RealVector contracted = outside ? centroid + 0.5 * (reflected - centroid)
                                          : centroid + 0.5 * (pts[worst] - centroid);
    const double fc = eval(contracted);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = contracted;
      vals[worst] = fc;
      continue;
    }
    for (Eigen::Index i = 0; i <= n; ++i) {
      if (i == best) continue;
      pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
      vals[i] = eval(pts[i]);
    }
  }
  const auto it = std::min_element(vals.begin(), vals.end());
  SimplexResult r;
  r.x = pts[it - vals.begin()];
  r.value = *it;
  r.evaluations = evals;
  r.converged = converged;
  return r;
}

Matrix state_from_params(const RealVector& x, int d) {
  Matrix l(d, d);
  for (int i = 0; i < d * d; ++i) l(i % d, i / d) = Complex(x(2 * i), x(2 * i + 1));
  const Matrix g = l * l.adjoint();
  return g / g.trace().real();
}

RealVector params_from_factor(const Matrix& l) {
  const int d = static_cast<int>(l.rows());
  RealVector x(2 * d * d);
  for (int i = 0; i < d * d; ++i) {
    x(2 * i) = l(i % d, i / d).real();
    x(2 * i + 1) = l(i % d, i / d).imag();
  }
  return x;
}

struct Search {
  double value = std::numeric_limits<double>::infinity();
  Matrix argmin;
  long evaluations = 0;
  bool converged = true;
};

Search restart_search(const std::function<double(const Matrix&)>& objective, int d,
                      const SearchBudget& budget) {
  Rng rng(budget.seed);
  Search s;
  for (int r = 0; r < budget.restarts; ++r) {
    // The first start is the maximally mixed state.
    const Matrix l = r == 0 ? identity(d) : ginibre(d, d, rng);
    const auto res = nelder_mead(
        [&](const RealVector& x) { return objective(state_from_params(x, d)); },
        params_from_factor(l), 0.5, budget.evaluations);
    s.evaluations += res.evaluations;
    s.converged = s.converged && res.converged;
    if (res.value < s.value) {
      s.value = res.value;
      s.argmin = state_from_params(res.x, d);
    }
  }
  return s;
}

}  // namespace

Checks check_entropy_gain(const Matrix& rho, const LinearMap& map, double tol) {
  require_square_state(rho, map.in_dim());
  if (!map.is_trace_preserving()) {
    throw DomainError("entropy gain needs a trace-preserving map");
  }
  const Matrix image = hermitian_part(map.apply(rho));
  const Matrix back = hermitian_part(map.adjoint().apply(image));
  const double gain = entropy(image) - entropy(rho);
  return {make_report("entropy-gain", gain, rel_entropy_value(rho, back), tol)};
}

Checks check_entropy_gain(const Matrix& rho, const CPMap& map, double tol) {
  require_square_state(rho, map.in_dim());
  if (!is_trace_preserving(map)) {
    throw DomainError("entropy gain needs a trace-preserving map");
  }
  const Matrix image = hermitian_part(map.apply(rho));
  const Matrix back = hermitian_part(map.adjoint().apply(image));
  const double gain = entropy(image) - entropy(rho);
  return {make_report("entropy-gain", gain, rel_entropy_value(rho, back), tol)};
}

Checks check_entropy_gain_recovery(const Matrix& rho, const CPMap& map, const Matrix& tau,
                                   double tol) {
  require_square_state(rho, map.in_dim());
  if (!is_trace_preserving(map)) {
    throw DomainError("entropy gain needs a trace-preserving map");
  }
  if (!is_subunital(map)) {
    std::ostringstream os;
    os << "map is not subunital: largest eigenvalue of N(I) is " << map.identity_gain();
    throw DomainError(os.str());
  }
  const Channel rec = adjoint_recovery(map, tau);
  const Matrix image = map.apply(rho);
  const double tp = max_abs(rec.kraus_gram() - identity(rec.in_dim()));
  return gain_recovery_reports(rho, image, map.adjoint().apply(image), rec.apply(image), tp,
                               tol);
}

Checks check_entropy_gain_recovery(const Matrix& rho, const LinearMap& map,
                                   const Matrix& tau, double tol) {
  require_square_state(rho, map.in_dim());
  if (!map.is_trace_preserving()) {
    throw DomainError("entropy gain needs a trace-preserving map");
  }
  const Matrix image_of_identity = map.apply(identity(map.in_dim()));
  const double top = eig_hermitian(hermitian_part(image_of_identity)).values.maxCoeff();
  if (top > 1.0 + kFlagTol) {
    std::ostringstream os;
    os << "map is not subunital: largest eigenvalue of N(I) is " << top;
    throw DomainError(os.str());
  }
  const LinearMap rec = adjoint_recovery(map, tau);
  const Matrix image = hermitian_part(map.apply(rho));
  const Matrix unit = identity(rec.out_dim());
  const double tp = max_abs(rec.adjoint().apply(unit) - identity(rec.in_dim()));
  return gain_recovery_reports(rho, image, map.adjoint().apply(image), rec.apply(image), tp,
                               tol);
}

MinimalGain minimal_entropy_gain(const CPMap& channel, const SearchBudget& budget) {
  if (channel.in_dim() != channel.out_dim()) {
    throw DimensionError("minimal entropy gain needs equal input and output dimension");
  }
  if (budget.restarts < 1 || budget.evaluations < 1) {
    throw DomainError("search budget must be positive");
  }
  const int d = channel.in_dim();
  const CPMap adj = channel.adjoint();
  const Search gain = restart_search(
      [&](const Matrix& rho) { return entropy(channel.apply(rho)) - entropy(rho); }, d,
      budget);
  SearchBudget lower_budget = budget;
  lower_budget.seed = Rng::derive_seed(budget.seed, 1);
  const Search lower = restart_search(
      [&](const Matrix& rho) {
        return rel_entropy_value(rho, hermitian_part(adj.apply(channel.apply(rho))));
      },
      d, lower_budget);
  MinimalGain out;
  out.value = gain.value;
  out.argmin = gain.argmin;
  out.lower_bound = lower.value;
  out.lower_argmin = lower.argmin;
  out.converged = gain.converged && lower.converged;
  out.evaluations = gain.evaluations + lower.evaluations;
  return out;
}

Checks check_minimal_entropy_gain(const CPMap& channel, const SearchBudget& budget,
                                  double tol) {
  const MinimalGain g = minimal_entropy_gain(channel, budget);
  const double log_d = std::log2(static_cast<double>(channel.in_dim()));
  Json aux{{"value", g.value},
           {"lower_bound", g.lower_bound},
           {"converged", g.converged},
           {"evaluations", g.evaluations}};
  return {make_report("minimal-entropy-gain/upper", 0.0, g.value, tol, aux),
          make_report("minimal-entropy-gain/lower", g.value, -log_d, tol, aux)};
}

Checks check_cond_entropy_gain(const DensityOperator& rho, const CPMap& map,
                               const std::string& a_label, double tol) {
  const int a = rho.index_of(a_label);
  Labels rest;
  for (const auto& s : rho.systems()) {
    if (s.label != a_label) rest.push_back(s.label);
  }
  if (rest.empty()) throw DimensionError("conditional entropy gain needs a side system");
  const DensityOperator sigma = apply_to(map, rho, a_label, a_label);
  const double lhs = cond_entropy(sigma, {a_label}, rest) - cond_entropy(rho, {a_label}, rest);
  const Matrix back = hermitian_part(apply_on(map.adjoint(), sigma.matrix(), sigma.dims(), a));
  return {make_report("cond-entropy-gain", lhs, rel_entropy_value(rho.matrix(), back), tol)};
}

double groenewold_gain(const Instrument& instrument, const Matrix& rho) {
  require_square_state(rho, instrument.in_dim());
  double post = 0.0;
  for (std::size_t x = 0; x < instrument.size(); ++x) {
    const Matrix out = instrument.outcome_map(x).apply(rho);
    const double p = out.trace().real();
    if (p < kOutcomeFloor) continue;
    post += p * entropy(hermitian_part(out / p));
  }
  return entropy(rho) - post;
}

Checks check_info_gain_upper(const Instrument& instrument, const Matrix& rho, double tol) {
  require_square_state(rho, instrument.in_dim());
  const Channel n = instrument_channel(instrument);
  std::vector<double> probs;
  for (std::size_t x = 0; x < instrument.size(); ++x) {
    probs.push_back(instrument.outcome_map(x).apply(rho).trace().real());
  }
  const Matrix back = hermitian_part(n.adjoint().apply(n.apply(rho)));
  const double h_x = shannon(probs);
  const double d = rel_entropy_value(rho, back);
  const double gain = groenewold_gain(instrument, rho);
  return {make_report("info-gain-upper", h_x - d, gain, tol,
                      Json{{"groenewold", gain}, {"h_x", h_x}, {"d_adjoint", d}})};
}

Checks check_efficient_second_law(const Instrument& instrument, const Matrix& rho,
                                  double tol) {
  if (!instrument.efficient()) {
    throw DomainError("second-law check needs an efficient instrument");
  }
  require_square_state(rho, instrument.in_dim());
  const Purification phi = purify(DensityOperator("A", rho));
  const int r = phi.reference_dim;
  const PostMeasurement pm = measure_purification(instrument, phi.vector, r, 1);
  const std::vector<int> ra{r, instrument.out_dim()};
  const std::vector<int> discard{1};
  std::vector<Matrix> blocks;
  for (const auto& j : pm.joint) blocks.push_back(partial_trace(j, ra, discard));
  const Matrix sigma_rx = hermitian_part(classical_join(blocks));
  Matrix sigma_r = Matrix::Zero(r, r);
  for (const auto& b : blocks) sigma_r += b;
  const double h_r = entropy(hermitian_part(sigma_r));
  const double h_rx = entropy(sigma_rx);
  const double h_x = shannon(pm.probs);
  const double h_x_given_r = h_rx - h_r;
  const double mutual = h_r + h_x - h_rx;

  const Channel n = instrument_channel(instrument);
  const Matrix tau = identity(instrument.in_dim()) / instrument.in_dim();
  const Channel rec = adjoint_recovery(n, tau);
  const double d = rel_entropy_value(rho, hermitian_part(rec.apply(n.apply(rho))));
  const double gain = groenewold_gain(instrument, rho);
  return {make_report("efficient-second-law", h_x_given_r, d, tol,
                      Json{{"h_x", h_x}, {"mutual_info", mutual}}),
          equality_report("efficient-second-law/groenewold-equals-mutual-info", gain,
                          mutual, tol)};
}

Checks check_info_gain_no_qsi(const Instrument& instrument, const Matrix& rho, double tol) {
  require_square_state(rho, instrument.in_dim());
  const Purification phi = purify(DensityOperator("A", rho));
  const int r = phi.reference_dim;
  const int da = instrument.in_dim();
  const int dout = instrument.out_dim();
  const PostMeasurement pm = measure_purification(instrument, phi.vector, r, 1);
  const std::vector<int> ra{r, dout};
  const std::vector<int> discard{1};
  const std::vector<int> swap{1, 0};

  Matrix sigma_r = Matrix::Zero(r, r);
  std::vector<Matrix> blocks;
  for (const auto& j : pm.joint) {
    blocks.push_back(hermitian_part(partial_trace(j, ra, discard)));
    sigma_r += blocks.back();
  }
  sigma_r = hermitian_part(sigma_r);
  const int n = static_cast<int>(blocks.size());
  Matrix sigma_x = Matrix::Zero(n, n);
  for (int x = 0; x < n; ++x) sigma_x(x, x) = pm.probs[x];

  const Matrix sigma_rx = classical_join(blocks);
  const double h_r = entropy(sigma_r);
  const double mutual = h_r + shannon(pm.probs) - entropy(hermitian_part(sigma_rx));
  const double direct = -std::log2(fidelity(sigma_rx, kron(sigma_r, sigma_x)));

  double avg = 0.0;
  std::vector<double> per_outcome;
  for (int x = 0; x < n; ++x) {
    if (pm.probs[x] < kOutcomeFloor) continue;
    const double f = root_fidelity(blocks[x] / pm.probs[x], sigma_r);
    per_outcome.push_back(f);
    avg += pm.probs[x] * f;
  }
  const double direct_sum = -2.0 * std::log2(avg);

  Checks out;
  out.push_back(make_report("info-gain-no-qsi", mutual, direct, tol,
                            Json{{"root_fidelities", per_outcome}}));
  out.push_back(equality_report("info-gain-no-qsi/direct-sum", direct, direct_sum, 1e-9));

  if (instrument.efficient() && dout <= da) {
    // Correction isometries A′ → A between pure post-measurement states and φ^ρ.
    const Vector target = permute_systems(phi.vector, std::vector<int>{r, da}, swap);
    double corrected = 0.0;
    double witness = 0.0;
    std::vector<double> overlaps;
    std::size_t k = 0;
    for (int x = 0; x < n; ++x) {
      if (pm.probs[x] < kOutcomeFloor) continue;
      const Matrix& kx = instrument.outcomes()[x].kraus.front();
      const Vector post = kron(identity(r), kx) * phi.vector / std::sqrt(pm.probs[x]);
      const UhlmannResult u =
          uhlmann_isometry(permute_systems(post, ra, swap), dout, target, da);
      overlaps.push_back(u.overlap);
      corrected += pm.probs[x] * u.overlap;
      witness = std::max(witness, std::abs(u.overlap - per_outcome[k++]));
    }
    out.push_back(make_report("info-gain-no-qsi/uhlmann", mutual,
                              -2.0 * std::log2(corrected), tol,
                              Json{{"overlaps", overlaps}}));
    out.push_back(make_report("info-gain-no-qsi/uhlmann-witness", -witness, 0.0, 1e-8));
  }
  return out;
}

Checks check_info_gain_qsi(const Instrument& instrument, const DensityOperator& rho,
                           const std::string& a_label, const QuadratureSpec& quad,
                           double tol) {
  const int a = rho.index_of(a_label);
  if (rho.dims()[a] != instrument.in_dim()) {
    throw DimensionError("instrument does not act on the addressed factor");
  }
  std::vector<std::string> order{a_label};
  for (const auto& s : rho.systems()) {
    if (s.label != a_label) order.push_back(s.label);
  }
  const DensityOperator rho_ab = reorder(rho, order);
  const int da = instrument.in_dim();
  const int dout = instrument.out_dim();
  const int db = rho.dim() / da;
  const Purification phi = purify(rho_ab);
  const int r = phi.reference_dim;
  const PostMeasurement pm = measure_purification(instrument, phi.vector, r, db);

  const std::vector<int> rab{r, dout, db};
  const std::vector<int> drop_a{1};
  const std::vector<int> rb{r, db};
  const std::vector<int> drop_r{0};
  std::vector<int> kept;
  std::vector<Matrix> omega_x_rb;
  std::vector<Matrix> omega_x_b;
  for (std::size_t x = 0; x < pm.joint.size(); ++x) {
    if (pm.probs[x] < kOutcomeFloor) continue;
    kept.push_back(static_cast<int>(x));
    omega_x_rb.push_back(
        hermitian_part(partial_trace(pm.joint[x], rab, drop_a) / pm.probs[x]));
    omega_x_b.push_back(hermitian_part(partial_trace(omega_x_rb.back(), rb, drop_r)));
  }
  const Matrix phi_op = phi.vector * phi.vector.adjoint();
  const Matrix omega_rb =
      hermitian_part(partial_trace(phi_op, std::vector<int>{r, da, db}, drop_a));
  const Matrix omega_b = hermitian_part(partial_trace(omega_rb, rb, drop_r));

  // I(R;X|B) = H(RB) − H(B) − Σ p [H(RB|x) − H(B|x)] for a cq extension.
  double mutual = entropy(omega_rb) - entropy(omega_b);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    mutual -= pm.probs[kept[i]] * (entropy(omega_x_rb[i]) - entropy(omega_x_b[i]));
  }

  const QuadratureRule rule = make_rule(quad);
  const Spectrum sb = eig_hermitian(omega_b);
  std::vector<Spectrum> sbx;
  for (const auto& m : omega_x_b) sbx.push_back(eig_hermitian(m));
  const Matrix pi_b = support_projector(sb);
  const Matrix ir = identity(r);
  const bool efficient = instrument.efficient() && dout >= da;
  const std::vector<int> rab_in{r, da, db};
  const std::vector<int> front_a{1, 0, 2};

  double rhs = 0.0;
  double rhs_uhlmann = 0.0;
  double tp_defect = 0.0;
  double witness = 0.0;
  double min_fid = std::numeric_limits<double>::infinity();
  int flagged = 0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double t = rule.nodes[k];
    const Complex z(0.5, -0.5 * t);
    const Matrix base = complex_power(sb, -z);
    Matrix tp = Matrix::Zero(db, db);
    double inner = 0.0;
    double inner_u = 0.0;
    bool low = false;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      const double p = pm.probs[kept[i]];
      const Matrix m = complex_power(sbx[i], z) * base;
      tp += p * m.adjoint() * m;
      const Matrix lifted = kron(ir, m);
      const Matrix recovered = hermitian_part(lifted * omega_rb * lifted.adjoint());
      const double f = root_fidelity(omega_x_rb[i], recovered);
      min_fid = std::min(min_fid, f * f);
      if (f * f < 1e-14) low = true;
      inner += p * f;
      if (efficient) {
        const Matrix& kx = instrument.outcomes()[kept[i]].kraus.front();
        const Vector moved =
            kron(kron(ir, identity(da)), m) * phi.vector;
        const Vector post =
            kron(kron(ir, kx), identity(db)) * phi.vector / std::sqrt(p);
        const UhlmannResult u =
            uhlmann_isometry(permute_systems(moved, rab_in, front_a), da,
                             permute_systems(post, rab, front_a), dout);
        inner_u += p * u.overlap;
        witness = std::max(witness, std::abs(u.overlap - f));
      }
    }
    if (low) ++flagged;
    tp_defect = std::max(tp_defect, max_abs(tp - pi_b));
    rhs -= 2.0 * rule.weights[k] * std::log2(inner);
    if (efficient) rhs_uhlmann -= 2.0 * rule.weights[k] * std::log2(inner_u);
  }

  Json aux{{"low_confidence", flagged > 0},
           {"flagged_nodes", flagged},
           {"min_node_fidelity", min_fid},
           {"raw_mass", rule.raw_mass}};
  Checks out;
  out.push_back(make_report("info-gain-qsi", mutual, rhs, tol, aux));
  out.push_back(make_report("info-gain-qsi/trace-preserving", -tp_defect, 0.0, 1e-8));
  if (efficient) {
    out.push_back(make_report("info-gain-qsi/uhlmann", mutual, rhs_uhlmann, tol));
    out.push_back(make_report("info-gain-qsi/uhlmann-witness", -witness, 0.0, 1e-8));
  }
  return out;
}

Checks check_entropic_disturbance(const Ensemble& ensemble, const CPMap& channel,
                                  const QuadratureSpec& quad, double tol) {
  const Matrix avg = ensemble.average();
  require_square_state(avg, channel.in_dim());
  const Matrix tau = identity(channel.in_dim()) / channel.in_dim();
  const Channel rec = integrated_recovery(avg, channel, tau, quad);

  double chi_out = entropy(hermitian_part(channel.apply(avg)));
  double mean = 0.0;
  for (std::size_t x = 0; x < ensemble.size(); ++x) {
    const double p = ensemble.probs[x];
    if (p < kOutcomeFloor) continue;
    const Matrix& rx = ensemble.states[x].matrix();
    const Matrix image = hermitian_part(channel.apply(rx));
    chi_out -= p * entropy(image);
    mean += p * root_fidelity(rx, hermitian_part(rec.apply(image)));
  }
  const double loss = holevo_chi(ensemble) - chi_out;
  Json aux{{"average_root_fidelity", mean}};
  return {make_report("entropic-disturbance", loss, -2.0 * std::log2(mean), tol, aux),
          make_report("entropic-disturbance/holevo-monotone", loss, 0.0, 1e-9)};
}

Checks check_recoverability(const Matrix& rho, const Matrix& sigma, const CPMap& channel,
                            const QuadratureSpec& quad, double tol) {
  require_square_state(rho, channel.in_dim());
  require_square_state(sigma, channel.in_dim());
  const Matrix n_rho = hermitian_part(channel.apply(rho));
  const Matrix n_sigma = hermitian_part(channel.apply(sigma));
  const double drop = rel_entropy_value(rho, sigma) - rel_entropy_value(n_rho, n_sigma);

  const QuadratureRule rule = make_rule(quad);
  const Matrix tau = identity(channel.in_dim()) / channel.in_dim();
  const Channel rec = integrated_recovery(sigma, channel, tau, rule);
  const double f = fidelity(rho, hermitian_part(rec.apply(n_rho)));

  double strong = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const CPMap rt = rotated_petz(sigma, channel, 0.5 * rule.nodes[k]);
    strong -= rule.weights[k] * std::log2(fidelity(rho, hermitian_part(rt.apply(n_rho))));
  }
  const CPMap petz = petz_map(sigma, channel);
  const double petz_defect = trace_distance(hermitian_part(petz.apply(n_sigma)), sigma);
  const double rec_defect = trace_distance(hermitian_part(rec.apply(n_sigma)), sigma);
  const double tp = max_abs(rec.kraus_gram() - identity(rec.in_dim()));

  Checks out;
  out.push_back(make_report("recoverability", drop, -std::log2(f), tol,
                            Json{{"fidelity", f}, {"raw_mass", rule.raw_mass}}));
  out.push_back(make_report("recoverability/rotated", drop, strong, kQuadratureTol));
  out.push_back(make_report("recoverability/petz-fixed-point", -petz_defect, 0.0, 1e-9));
  out.push_back(make_report("recoverability/integrated-fixed-point", -rec_defect, 0.0, 1e-8));
  out.push_back(make_report("recoverability/trace-preserving", -tp, 0.0, 1e-8));
  return out;
}

Checks check_cmi_recovery(const DensityOperator& rho, const std::string& a,
                          const std::string& b, const std::string& c,
                          const QuadratureSpec& quad, double tol) {
  const DensityOperator abc = reorder(rho, {a, b, c});
  const auto dims = abc.dims();
  const int da = dims[0];
  const int db = dims[1];
  const int dc = dims[2];
  const DensityOperator rho_ac = marginal(abc, {a, c});
  const Matrix rho_bc = marginal(abc, {b, c}).matrix();
  const std::vector<int> bc{db, dc};
  const std::vector<int> bac{db, da, dc};
  const std::vector<int> to_abc{1, 0, 2};

  const QuadratureRule rule = make_rule(quad);
  const Matrix tau = identity(da * dc) / (da * dc);
  const Channel trace_a = Channel::partial_trace(std::vector<int>{da, dc}, 0);
  const Channel rec = integrated_recovery(rho_ac.matrix(), trace_a, tau, rule);
  const Matrix recovered =
      hermitian_part(permute_systems(apply_on(rec, rho_bc, bc, 1), bac, to_abc));
  const double f = fidelity(abc.matrix(), recovered);
  const double i_abc = cmi(abc, {a}, {b}, {c});

  // Per-t form through the explicit ρ_AC^{(1−it)/2}(I ⊗ ρ_C^{−(1−it)/2}) route.
  double strong = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const CPMap rt = cmi_recovery(rho_ac, a, rule.nodes[k]);
    const Matrix out =
        hermitian_part(permute_systems(apply_on(rt, rho_bc, bc, 1), bac, to_abc));
    strong -= rule.weights[k] * std::log2(fidelity(abc.matrix(), out));
  }
  return {make_report("cmi-recovery", i_abc, -std::log2(f), tol, Json{{"fidelity", f}}),
          make_report("cmi-recovery/rotated", i_abc, strong, kQuadratureTol)};
}

}  // namespace qrev
