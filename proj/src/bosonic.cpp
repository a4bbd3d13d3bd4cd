#include "qrev/bosonic.hpp"

#include <cmath>
#include <sstream>

#include "qrev/entropy.hpp"
#include "qrev/matfun.hpp"

namespace qrev {

namespace {

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double binomial_amplitude(int n, int k, double a, int pa, double b, int pb) {
  // √(C(n,k) a^pa b^pb) with 0⁰ = 1.
  return std::exp(0.5 * log_binomial(n, k)) * std::sqrt(std::pow(a, pa) * std::pow(b, pb));
}

std::string format(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// Kraus operators restricted to levels ≤ g on both sides, stacked as
// vectorized columns; their outer product is the restricted Choi matrix.
Matrix restricted_choi(const std::vector<Matrix>& kraus, int g) {
  const int d = g + 1;
  std::vector<Vector> cols;
  for (const auto& k : kraus) {
    const Matrix block = k.topLeftCorner(d, d);
    if (block.cwiseAbs().maxCoeff() == 0.0) continue;
    cols.emplace_back(Eigen::Map<const Vector>(Matrix(block).data(), d * d));
  }
  Matrix v(d * d, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) v.col(static_cast<Eigen::Index>(i)) = cols[i];
  return v * v.adjoint();
}

std::vector<Matrix> adjoint_kraus(const std::vector<Matrix>& kraus) {
  std::vector<Matrix> out;
  out.reserve(kraus.size());
  for (const auto& k : kraus) out.push_back(k.adjoint());
  return out;
}

std::vector<Matrix> restrict_to(const std::vector<Matrix>& kraus, int g) {
  std::vector<Matrix> out;
  out.reserve(kraus.size());
  for (const auto& k : kraus) out.push_back(k.topLeftCorner(g + 1, g + 1));
  return out;
}

// Kraus of `second ∘ first`, each scaled by √c.
std::vector<Matrix> compose(const std::vector<Matrix>& first,
                            const std::vector<Matrix>& second, double c = 1.0) {
  std::vector<Matrix> out;
  out.reserve(first.size() * second.size());
  const double s = std::sqrt(c);
  for (const auto& b : second) {
    for (const auto& a : first) out.push_back(s * b * a);
  }
  return out;
}

std::vector<Matrix> scaled(const std::vector<Matrix>& kraus, double c) {
  std::vector<Matrix> out;
  out.reserve(kraus.size());
  for (const auto& k : kraus) out.push_back(std::sqrt(c) * k);
  return out;
}

// Largest trace lost by an amplifier on a guarded input level.
double amp_trace_loss(double gain, const FockTruncation& trunc) {
  if (gain <= 1.0) return 0.0;
  const Channel a = amp_channel(gain, trunc);
  const Matrix gram = a.kraus_gram();
  double worst = 0.0;
  for (int n = 0; n <= trunc.guarded_max(); ++n) worst = std::max(worst, 1.0 - gram(n, n).real());
  return worst;
}

Json spec_aux(const GaussianChannelSpec& spec) {
  return Json{{"kind", spec.kind_name()},
              {"parameter", spec.parameter()},
              {"n_max", spec.trunc.n_max},
              {"guard", spec.trunc.guard}};
}

}  // namespace

void FockTruncation::validate() const {
  if (n_max < 1) throw DomainError("n_max must be at least 1");
  if (guard < 0 || guard >= n_max) throw DomainError("guard must lie in [0, n_max)");
}

void GaussianChannelSpec::validate() const {
  trunc.validate();
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("eta must lie in [0, 1]");
  if (!(gain >= 1.0) || !std::isfinite(gain)) throw DomainError("gain must be at least 1");
  if (!(trunc_tol >= 0.0)) throw DomainError("trunc_tol must be nonnegative");
}

std::string GaussianChannelSpec::kind_name() const {
  switch (kind) {
    case GaussianKind::loss: return "loss";
    case GaussianKind::amplifier: return "amplifier";
    case GaussianKind::composition: return "composition";
  }
  return "";
}

std::string GaussianChannelSpec::parameter() const {
  switch (kind) {
    case GaussianKind::loss: return "eta=" + format(eta);
    case GaussianKind::amplifier: return "G=" + format(gain);
    case GaussianKind::composition: return "eta=" + format(eta) + ";G=" + format(gain);
  }
  return "";
}

Channel loss_channel(double eta, const FockTruncation& trunc) {
  trunc.validate();
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("eta must lie in [0, 1]");
  const int d = trunc.dim();
  std::vector<Matrix> kraus;
  for (int k = 0; k <= trunc.n_max; ++k) {
    Matrix m = Matrix::Zero(d, d);
    for (int n = k; n <= trunc.n_max; ++n) {
      m(n - k, n) = binomial_amplitude(n, k, eta, n - k, 1.0 - eta, k);
    }
    if (m.cwiseAbs().maxCoeff() > 0.0) kraus.push_back(std::move(m));
  }
  return Channel(d, d, std::move(kraus));
}

Channel amp_channel(double gain, const FockTruncation& trunc) {
  trunc.validate();
  if (!(gain >= 1.0) || !std::isfinite(gain)) throw DomainError("gain must be at least 1");
  const int d = trunc.dim();
  const double x = 1.0 - 1.0 / gain;
  std::vector<Matrix> kraus;
  for (int k = 0; k <= trunc.n_max; ++k) {
    Matrix m = Matrix::Zero(d, d);
    for (int n = 0; n + k <= trunc.n_max; ++n) {
      m(n + k, n) = binomial_amplitude(n + k, k, x, k, 1.0 / gain, n + 1);
    }
    if (m.cwiseAbs().maxCoeff() > 0.0) kraus.push_back(std::move(m));
  }
  return Channel(d, d, std::move(kraus));
}

Matrix apply_gaussian(const GaussianChannelSpec& spec, const Matrix& rho) {
  switch (spec.kind) {
    case GaussianKind::loss: return loss_channel(spec.eta, spec.trunc).apply(rho);
    case GaussianKind::amplifier: return amp_channel(spec.gain, spec.trunc).apply(rho);
    case GaussianKind::composition:
      return amp_channel(spec.gain, spec.trunc)
          .apply(loss_channel(spec.eta, spec.trunc).apply(rho));
  }
  return rho;
}

Matrix fock_state(int n, const FockTruncation& trunc) {
  if (n < 0 || n > trunc.n_max) throw DimensionError("Fock level outside the truncation");
  Matrix m = Matrix::Zero(trunc.dim(), trunc.dim());
  m(n, n) = 1.0;
  return m;
}

Matrix thermal_state(double mean, const FockTruncation& trunc, int top) {
  if (!(mean >= 0.0)) throw DomainError("mean photon number must be nonnegative");
  if (top < 0) top = trunc.guarded_max();
  if (top > trunc.n_max) throw DimensionError("cut level outside the truncation");
  Matrix m = Matrix::Zero(trunc.dim(), trunc.dim());
  const double q = mean / (1.0 + mean);
  double total = 0.0;
  for (int n = 0; n <= top; ++n) {
    const double p = std::pow(q, n) / (1.0 + mean);
    m(n, n) = p;
    total += p;
  }
  return m / total;
}

double loss_identity_tail(double eta, int m, int n_max) {
  // Terms C(n,m) η^m (1−η)^{n−m} for n > n_max until they stop mattering.
  if (eta <= 0.0 || eta >= 1.0) return 0.0;
  double tail = 0.0;
  for (int n = n_max + 1; n < n_max + 200000; ++n) {
    const double term = std::exp(log_binomial(n, m) + m * std::log(eta) +
                                 (n - m) * std::log1p(-eta));
    tail += term;
    if (term < 1e-18 * tail && n > 2 * m) break;
  }
  return tail;
}

Checks check_almost_unital(const GaussianChannelSpec& spec) {
  spec.validate();
  const auto& tr = spec.trunc;
  const int g = tr.guarded_max();
  const Matrix unit = Matrix::Identity(tr.dim(), tr.dim());
  double expected = 1.0;
  double leakage = 0.0;
  switch (spec.kind) {
    case GaussianKind::loss:
    case GaussianKind::composition:
      if (spec.eta <= 0.0) throw DomainError("almost-unital check needs eta > 0");
      expected = 1.0 / spec.eta;
      for (int m = 0; m <= g; ++m) {
        leakage = std::max(leakage, loss_identity_tail(spec.eta, m, tr.n_max));
      }
      if (spec.kind == GaussianKind::composition) {
        expected /= spec.gain;
        leakage /= spec.gain;
      }
      break;
    case GaussianKind::amplifier:
      expected = 1.0 / spec.gain;
      break;
  }
  const Matrix image = apply_gaussian(spec, unit);
  const double dev =
      (image.topLeftCorner(g + 1, g + 1) - expected * Matrix::Identity(g + 1, g + 1))
          .cwiseAbs()
          .maxCoeff();
  Json aux = spec_aux(spec);
  aux["deviation"] = dev;
  aux["leakage"] = leakage;
  aux["truncation_dominated"] = leakage > spec.trunc_tol;
  aux["deviation_minus_leakage"] = dev - leakage;
  return {make_report("almost-unital/" + spec.kind_name(), -dev, 0.0, spec.trunc_tol, aux)};
}

Checks check_adjoint_relation(const GaussianChannelSpec& spec) {
  spec.validate();
  const auto& tr = spec.trunc;
  const int g = tr.guarded_max();
  std::vector<Matrix> lhs;
  std::vector<Matrix> rhs;
  double leakage = 0.0;
  switch (spec.kind) {
    case GaussianKind::loss:
      if (spec.eta <= 0.0) throw DomainError("adjoint relation needs eta > 0");
      lhs = adjoint_kraus(loss_channel(spec.eta, tr).kraus());
      rhs = scaled(amp_channel(1.0 / spec.eta, tr).kraus(), 1.0 / spec.eta);
      leakage = amp_trace_loss(1.0 / spec.eta, tr);
      break;
    case GaussianKind::amplifier:
      lhs = adjoint_kraus(amp_channel(spec.gain, tr).kraus());
      rhs = scaled(loss_channel(1.0 / spec.gain, tr).kraus(), 1.0 / spec.gain);
      leakage = amp_trace_loss(spec.gain, tr);
      break;
    case GaussianKind::composition: {
      if (spec.eta <= 0.0) throw DomainError("adjoint relation needs eta > 0");
      // Loss only lowers and amplification only raises levels, so each
      // guarded block of a product is the product of the guarded blocks.
      const auto loss = restrict_to(loss_channel(spec.eta, tr).kraus(), g);
      const auto amp = restrict_to(amp_channel(spec.gain, tr).kraus(), g);
      lhs = compose(adjoint_kraus(amp), adjoint_kraus(loss));
      rhs = compose(restrict_to(loss_channel(1.0 / spec.gain, tr).kraus(), g),
                    restrict_to(amp_channel(1.0 / spec.eta, tr).kraus(), g),
                    1.0 / (spec.eta * spec.gain));
      leakage = std::max(amp_trace_loss(spec.gain, tr), amp_trace_loss(1.0 / spec.eta, tr));
      break;
    }
  }
  const double dev = (restricted_choi(lhs, g) - restricted_choi(rhs, g)).cwiseAbs().maxCoeff();
  Json aux = spec_aux(spec);
  aux["deviation"] = dev;
  aux["leakage"] = leakage;
  return {make_report("adjoint-relation/" + spec.kind_name(), -dev, 0.0, spec.trunc_tol, aux)};
}

Checks check_bosonic_entropy_gain(const GaussianChannelSpec& spec, const Matrix& rho) {
  spec.validate();
  const auto& tr = spec.trunc;
  if (rho.rows() != tr.dim() || rho.cols() != tr.dim()) {
    throw DimensionError("state does not match the Fock truncation");
  }
  const int g = tr.guarded_max();
  const double above = rho.diagonal().real().tail(tr.n_max - g).sum();
  double mean = 0.0;
  for (int n = 0; n <= tr.n_max; ++n) mean += n * rho(n, n).real();
  if (above > 1e-12 || mean > tr.n_max / 4.0) {
    std::ostringstream os;
    os << "input is not low-energy: mass " << above << " above level " << g
       << ", mean photon number " << mean;
    throw DomainError(os.str());
  }
  if (spec.eta <= 0.0) throw DomainError("entropy gain bound needs eta > 0");

  Matrix out;
  Matrix back;
  double c = 1.0;
  switch (spec.kind) {
    case GaussianKind::loss:
      out = loss_channel(spec.eta, tr).apply(rho);
      back = amp_channel(1.0 / spec.eta, tr).apply(out);
      c = spec.eta;
      break;
    case GaussianKind::amplifier:
      out = amp_channel(spec.gain, tr).apply(rho);
      back = loss_channel(1.0 / spec.gain, tr).apply(out);
      c = spec.gain;
      break;
    case GaussianKind::composition:
      out = apply_gaussian(spec, rho);
      back = amp_channel(1.0 / spec.eta, tr).apply(loss_channel(1.0 / spec.gain, tr).apply(out));
      c = spec.eta * spec.gain;
      break;
  }
  out = hermitian_part(out);
  back = hermitian_part(back);
  const double lhs = entropy(out) - entropy(rho);
  const double rhs = rel_entropy_value(rho, back) + std::log2(c);
  Json aux = spec_aux(spec);
  aux["leakage"] = 1.0 - back.trace().real();
  aux["output_mass_above_guard"] = out.diagonal().real().tail(tr.n_max - g).sum();
  return {make_report("entropy-gain/" + spec.kind_name(), lhs, rhs, spec.trunc_tol + 1e-6,
                      aux)};
}

Checks check_loss_semigroup(double eta1, double eta2, const FockTruncation& trunc,
                            double tol) {
  const auto two = compose(loss_channel(eta1, trunc).kraus(), loss_channel(eta2, trunc).kraus());
  const auto one = loss_channel(eta1 * eta2, trunc).kraus();
  const int g = trunc.guarded_max();
  const double dev = (restricted_choi(two, g) - restricted_choi(one, g)).cwiseAbs().maxCoeff();
  return {make_report("loss-semigroup", -dev, 0.0, tol,
                      Json{{"eta1", eta1}, {"eta2", eta2}, {"deviation", dev}})};
}

}  // namespace qrev
