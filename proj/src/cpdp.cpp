#include "qrev/cpdp.hpp"

#include <cmath>

#include "qrev/entropy.hpp"
#include "qrev/matfun.hpp"
#include "qrev/recovery.hpp"
#include "qrev/systems.hpp"

namespace qrev {

namespace {

Matrix identity(int d) { return Matrix::Identity(d, d); }

DensityOperator ordered(DensityOperator rho) {
  if (rho.systems().size() != 3) {
    throw DimensionError("configuration needs exactly the factors R, Q, E");
  }
  return reorder(rho, {"R", "Q", "E"});
}

Matrix rho_rq(const TripartiteConfiguration& config) {
  return marginal(config.rho, {"R", "Q"}).matrix();
}

Matrix sigma_rq(const TripartiteConfiguration& config, const Interaction& v) {
  return marginal(evolve(config, v), {"R", "Q'"}).matrix();
}

}  // namespace

TripartiteConfiguration::TripartiteConfiguration(DensityOperator state)
    : rho(ordered(std::move(state))) {}

Interaction::Interaction(Matrix iso, int q, int e, double tol)
    : v(std::move(iso)), q_out(q), e_out(e) {
  if (q_out < 1 || e_out < 1 || v.rows() != static_cast<Eigen::Index>(q_out) * e_out) {
    throw DimensionError("interaction output does not match Q' x E'");
  }
  if (v.rows() < v.cols()) throw DimensionError("interaction cannot be an isometry");
  const double defect =
      (v.adjoint() * v - Matrix::Identity(v.cols(), v.cols())).cwiseAbs().maxCoeff();
  if (defect > tol) throw DomainError("interaction is not an isometry");
}

DensityOperator evolve(const TripartiteConfiguration& config, const Interaction& v) {
  const int dr = config.r_dim();
  if (v.v.cols() != config.q_dim() * config.e_dim()) {
    throw DimensionError("interaction input does not match Q x E");
  }
  const Matrix u = kron(identity(dr), v.v);
  const Matrix out = u * config.rho.matrix() * u.adjoint();
  return DensityOperator({{"R", dr}, {"Q'", v.q_out}, {"E'", v.e_out}},
                         hermitian_part(out));
}

double dp_slack(const TripartiteConfiguration& config, const Interaction& v) {
  return mutual_info(evolve(config, v), {"R"}, {"Q'"}) -
         mutual_info(config.rho, {"R"}, {"Q"});
}

double cmi_bound(const TripartiteConfiguration& config) {
  return cmi(config.rho, {"R"}, {"E"}, {"Q"});
}

ReducedDynamics reduced_dynamics(const TripartiteConfiguration& config,
                                 const Interaction& v, const QuadratureSpec& quad) {
  const int dr = config.r_dim();
  const int dq = config.q_dim();
  const int de = config.e_dim();
  if (v.v.cols() != dq * de) throw DimensionError("interaction input does not match Q x E");
  const Matrix rho_qe = marginal(config.rho, {"Q", "E"}).matrix();
  const Channel trace_e = Channel::partial_trace(std::vector<int>{dq, de}, 1);
  const Channel rec = integrated_recovery(rho_qe, trace_e, identity(dq * de) / (dq * de), quad);

  std::vector<Matrix> kraus;
  kraus.reserve(rec.kraus().size() * v.e_out);
  for (int e = 0; e < v.e_out; ++e) {
    Matrix bra = Matrix::Zero(1, v.e_out);
    bra(0, e) = 1.0;
    const Matrix project = kron(identity(v.q_out), bra) * v.v;
    for (const auto& k : rec.kraus()) kraus.push_back(project * k);
  }
  ReducedDynamics out{Channel(dq, v.q_out, std::move(kraus), 1e-8), {}, 0.0, 0.0};

  const Matrix target = sigma_rq(config, v);
  const Matrix image =
      hermitian_part(apply_on(out.map, rho_rq(config), std::vector<int>{dr, dq}, 1));
  out.fidelity = fidelity(target, image);
  out.epsilon = 0.5 * trace_distance(target, image);
  const double tp =
      (out.map.kraus_gram() - identity(dq)).cwiseAbs().maxCoeff();
  out.checks.push_back(make_report("reduced-dynamics", cmi_bound(config),
                                   -std::log2(out.fidelity), 1e-6,
                                   Json{{"fidelity", out.fidelity}, {"epsilon", out.epsilon}}));
  out.checks.push_back(make_report("reduced-dynamics/trace-preserving", -tp, 0.0, 1e-8));
  return out;
}

double afw_bound(double epsilon, int r_dim) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw DomainError("epsilon must lie in [0, 1]");
  return 2.0 * epsilon * std::log2(static_cast<double>(r_dim)) +
         (1.0 + epsilon) * binary_entropy(epsilon / (1.0 + epsilon));
}

Checks converse_bound(const TripartiteConfiguration& config, const Interaction& v,
                      const CPMap& map, double epsilon, double tol) {
  const double bound = afw_bound(epsilon, config.r_dim());
  const Matrix target = sigma_rq(config, v);
  const Matrix image = hermitian_part(
      apply_on(map, rho_rq(config), std::vector<int>{config.r_dim(), config.q_dim()}, 1));
  const double measured = 0.5 * trace_distance(target, image);
  const bool vacuous = measured > epsilon + 1e-12;
  const double before = mutual_info(config.rho, {"R"}, {"Q"});
  const double after = mutual_info(evolve(config, v), {"R"}, {"Q'"});
  CheckReport r = make_report(
      "converse", before + bound, after, tol,
      Json{{"epsilon", epsilon}, {"measured_epsilon", measured}, {"vacuous", vacuous}});
  if (vacuous) r.holds = true;
  return {r};
}

Interaction special_evolution(const TripartiteConfiguration& config) {
  const int d = config.q_dim() * config.e_dim();
  return Interaction(identity(d), d, 1);
}

Checks converse_cmi_bound(const TripartiteConfiguration& config, const QuadratureSpec& quad,
                          double tol) {
  const Interaction special = special_evolution(config);
  const ReducedDynamics rd = reduced_dynamics(config, special, quad);
  const double eps = std::min(1.0, rd.epsilon);
  const double i = cmi_bound(config);
  return {make_report("converse-cmi", afw_bound(eps, config.r_dim()), i, tol,
                      Json{{"measured_epsilon", rd.epsilon}}),
          equality_report("converse-cmi/special-evolution", dp_slack(config, special), i,
                          1e-9)};
}

}  // namespace qrev
