#include "qrev/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include "qrev/bosonic.hpp"
#include "qrev/cpdp.hpp"
#include "qrev/matfun.hpp"
#include "qrev/random.hpp"
#include "qrev/theorems.hpp"

namespace qrev {

namespace {

constexpr int kMaxLocalDim = 4;
constexpr int kMaxTotalDim = 64;

using Dims = std::vector<int>;

struct Family {
  std::string name;
  int trials = 1;
  /// Fixed instances ignore the --trials override.
  bool fixed = false;
  std::function<Checks(int trial, Rng& rng, Dims& dims)> run;
};

int pick(const Dims& options, int trial) {
  return options[static_cast<std::size_t>(trial) % options.size()];
}

Dims local_dims(const CampaignConfig& config, Dims fallback) {
  return config.dims ? *config.dims : fallback;
}

Matrix identity(int d) { return Matrix::Identity(d, d); }

// Environment size for a Stinespring isometry C^in → C^out ⊗ C^env.
int env_dim(int in, int out, int trial) {
  return std::max(1 + trial % 3, (in + out - 1) / out);
}

Matrix ket_bra(const Vector& v) { return v * v.adjoint(); }

Channel dephasing(const Matrix& basis) {
  std::vector<Matrix> kraus;
  for (Eigen::Index i = 0; i < basis.cols(); ++i) kraus.push_back(ket_bra(basis.col(i)));
  return Channel(static_cast<int>(basis.rows()), static_cast<int>(basis.rows()),
                 std::move(kraus));
}

Channel depolarizing_qubit(double p) {
  Matrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, -kI, kI, 0;
  z << 1, 0, 0, -1;
  const double c = std::sqrt(p / 4.0);
  return Channel(2, 2, {std::sqrt(1.0 - 3.0 * p / 4.0) * identity(2), c * x, c * y, c * z});
}

std::vector<double> random_probs(int n, Rng& rng) {
  std::vector<double> p(n);
  double total = 0.0;
  for (auto& x : p) {
    x = -std::log(1.0 - rng.uniform());
    total += x;
  }
  for (auto& x : p) x /= total;
  return p;
}

// Density operator supported inside supp(σ).
Matrix random_state_in_support(const Matrix& sigma, Rng& rng) {
  const Matrix p = support_projector(sigma);
  const int d = static_cast<int>(sigma.rows());
  const Matrix g = p * ginibre(d, d, rng);
  const Matrix rho = g * g.adjoint();
  return hermitian_part(rho / rho.trace().real());
}

CheckReport threshold_report(std::string name, double value, double floor, double tol) {
  return make_report(std::move(name), value, floor, tol);
}

std::vector<Family> entropy_gain_families(const CampaignConfig& config) {
  const Dims dims = local_dims(config, {2, 3, 4});
  const Dims small = local_dims(config, {2, 3});
  std::vector<Family> f;
  f.push_back({"random-channel", 200, false, [dims](int t, Rng& rng, Dims& out) {
                 const int d = pick(dims, t);
                 out = {d};
                 const Matrix rho = random_density_matrix(d, 1 + t % d, rng);
                 const Channel n = random_channel(d, d, 1 + t % 3, rng);
                 return check_entropy_gain(rho, n);
               }});
  f.push_back({"dephasing-equality", 1, true, [](int, Rng&, Dims& out) {
                 out = {2};
                 Vector plus(2);
                 plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
                 Checks c = check_entropy_gain(ket_bra(plus), dephasing(identity(2)));
                 c.push_back(equality_report("entropy-gain/equality", c[0].lhs, c[0].rhs, 1e-8));
                 return c;
               }});
  f.push_back({"positive-map", 50, false, [dims](int t, Rng& rng, Dims& out) {
                 const int d = pick(dims, t);
                 out = {d};
                 const Matrix rho = random_density_matrix(d, 1 + t % d, rng);
                 const LinearMap n = random_channel(d, d, 1 + t % 3, rng)
                                         .to_linear_map()
                                         .then(LinearMap::transpose(d));
                 return check_entropy_gain(rho, n);
               }});
  f.push_back({"subunital", 100, false, [dims](int t, Rng& rng, Dims& out) {
                 const int d = pick(dims, t);
                 out = {d, d + 1};
                 const Matrix rho = random_density_matrix(d, 1 + t % d, rng);
                 const Channel n = random_subunital_channel(d, d + 1, 2 + t % 2, rng);
                 const Matrix tau = random_density_matrix(d, d, rng);
                 return check_entropy_gain_recovery(rho, n, tau);
               }});
  f.push_back({"conditional", 100, false, [dims](int t, Rng& rng, Dims& out) {
                 const int d = pick(dims, t);
                 out = {d, 2};
                 const DensityOperator rho(Systems{{"A", d}, {"B", 2}},
                                           random_density_matrix(2 * d, 1 + t % (2 * d), rng));
                 const Channel n = random_channel(d, d, 1 + t % 3, rng);
                 return check_cond_entropy_gain(rho, n, "A");
               }});
  f.push_back({"minimal-gain", 20, false, [small](int t, Rng& rng, Dims& out) {
                 const int d = std::min(pick(small, t), 3);
                 out = {d};
                 const Channel n = random_channel(d, d, 1 + t % 3, rng);
                 SearchBudget budget;
                 budget.seed = rng.next();
                 return check_minimal_entropy_gain(n, budget);
               }});
  return f;
}

std::vector<Family> recovery_families(const CampaignConfig& config) {
  const Dims dims = local_dims(config, {2, 3});
  const Dims tri = local_dims(config, {2});
  const QuadratureSpec quad = config.quad;
  std::vector<Family> f;
  f.push_back({"recoverability", 100, false, [dims, quad](int t, Rng& rng, Dims& out) {
                 const int d = pick(dims, t);
                 const int dout = pick(dims, t / 2 + 1);
                 out = {d, dout};
                 // Odd trials use a rank-deficient σ.
                 const Matrix sigma = random_density_matrix(d, t % 2 ? d - 1 : d, rng);
                 const Matrix rho = random_state_in_support(sigma, rng);
                 const Channel n = random_channel(d, dout, env_dim(d, dout, t), rng);
                 return check_recoverability(rho, sigma, n, quad);
               }});
  f.push_back({"cmi", 100, false, [tri, quad](int t, Rng& rng, Dims& out) {
                 const int d = pick(tri, t);
                 out = {d, d, d};
                 const int total = d * d * d;
                 const DensityOperator rho(Systems{{"A", d}, {"B", d}, {"C", d}},
                                           random_density_matrix(total, 1 + t % total, rng));
                 return check_cmi_recovery(rho, "A", "B", "C", quad);
               }});
  f.push_back({"markov", 20, false, [tri, quad](int t, Rng& rng, Dims& out) {
                 const int d = pick(tri, t);
                 out = {d, d, d};
                 const DensityOperator rho = random_markov_chain(d, d, d, rng);
                 Checks c = check_cmi_recovery(rho, "A", "B", "C", quad);
                 c.push_back(threshold_report("markov/recovery-fidelity",
                                              c[0].aux["fidelity"].get<double>(), 1.0, 1e-6));
                 c.push_back(equality_report("markov/cmi-zero", c[0].lhs, 0.0, 1e-8));
                 return c;
               }});
  return f;
}

std::vector<Family> info_gain_families(const CampaignConfig& config) {
  const Dims dims = local_dims(config, {2, 3});
  std::vector<Family> f;
  f.push_back({"efficient", 100, false, [dims](int t, Rng& rng, Dims& out) {
                 const int d = pick(dims, t);
                 const int n = 2 + t % 3;
                 out = {d, n};
                 const Matrix rho = random_density_matrix(d, 1 + t % d, rng);
                 const Instrument in = random_instrument(d, n, true, rng);
                 Checks c = check_info_gain_no_qsi(in, rho);
                 for (auto& r : check_efficient_second_law(in, rho)) c.push_back(std::move(r));
                 for (auto& r : check_info_gain_upper(in, rho)) c.push_back(std::move(r));
                 return c;
               }});
  f.push_back({"inefficient", 100, false, [dims](int t, Rng& rng, Dims& out) {
                 const int d = pick(dims, t);
                 const int n = 2 + t % 3;
                 out = {d, n};
                 // Half the inputs are pure, where inefficiency forces I_G < 0.
                 const Matrix rho = random_density_matrix(d, t % 2 ? d : 1, rng);
                 const Instrument in = random_instrument(d, n, false, rng);
                 Checks c = check_info_gain_upper(in, rho);
                 for (auto& r : check_info_gain_no_qsi(in, rho)) c.push_back(std::move(r));
                 return c;
               }});
  return f;
}

std::vector<Family> qsi_families(const CampaignConfig& config) {
  const Dims dims = local_dims(config, {2});
  const QuadratureSpec quad = config.quad;
  std::vector<Family> f;
  f.push_back({"random", 50, false, [dims, quad](int t, Rng& rng, Dims& out) {
                 const int d = pick(dims, t);
                 const int n = 2 + t % 3;
                 out = {d, d, n};
                 const DensityOperator rho(Systems{{"A", d}, {"B", d}},
                                           random_density_matrix(d * d, 1 + t % (d * d), rng));
                 return check_info_gain_qsi(random_instrument(d, n, true, rng), rho, "A", quad);
               }});
  f.push_back({"product", 5, false, [dims, quad](int t, Rng& rng, Dims& out) {
                 const int d = pick(dims, t);
                 out = {d, d, 2};
                 const DensityOperator rho = tensor(random_density(d, d, rng, "A"),
                                                    random_density(d, d, rng, "B"));
                 const Instrument in = random_instrument(d, 2, true, rng);
                 Checks c = check_info_gain_qsi(in, rho, "A", quad);
                 // Without correlations the side information adds nothing.
                 const Checks plain = check_info_gain_no_qsi(in, marginal(rho, {"A"}).matrix());
                 c.push_back(equality_report("product/matches-no-qsi", c[0].lhs, plain[0].lhs, 1e-8));
                 return c;
               }});
  f.push_back({"classical", 5, false, [dims, quad](int t, Rng& rng, Dims& out) {
                 const int d = pick(dims, t);
                 out = {d, d, d};
                 const std::vector<double> q = random_probs(d, rng);
                 Matrix m = Matrix::Zero(d * d, d * d);
                 std::vector<Outcome> outcomes;
                 for (int x = 0; x < d; ++x) {
                   m(x * d + x, x * d + x) = q[x];
                   Matrix proj = Matrix::Zero(d, d);
                   proj(x, x) = 1.0;
                   outcomes.push_back({std::to_string(x), {proj}});
                 }
                 const DensityOperator rho(Systems{{"A", d}, {"B", d}}, m);
                 const Instrument in(d, d, outcomes);
                 Checks c = check_info_gain_qsi(in, rho, "A", quad);
                 c.push_back(equality_report("classical/cmi-zero", c[0].lhs, 0.0, 1e-8));
                 c.push_back(equality_report("classical/recovered", c[0].rhs, 0.0, 1e-6));
                 return c;
               }});
  return f;
}

std::vector<Family> disturbance_families(const CampaignConfig& config) {
  const Dims dims = local_dims(config, {2, 3});
  const QuadratureSpec quad = config.quad;
  std::vector<Family> f;
  f.push_back({"random", 100, false, [dims, quad](int t, Rng& rng, Dims& out) {
                 const int d = pick(dims, t);
                 const int dout = pick(dims, t / 2 + 1);
                 const int k = 2 + t % 3;
                 out = {d, dout, k};
                 std::vector<DensityOperator> states;
                 for (int x = 0; x < k; ++x) {
                   states.push_back(random_density(d, 1 + (t + x) % d, rng));
                 }
                 const Ensemble ens(random_probs(k, rng), std::move(states));
                 return check_entropic_disturbance(ens, random_channel(d, dout, env_dim(d, dout, t), rng),
                                                   quad);
               }});
  f.push_back({"commuting", 10, false, [dims, quad](int t, Rng& rng, Dims& out) {
                 const int d = pick(dims, t);
                 const int k = 2 + t % 3;
                 out = {d, d, k};
                 const Matrix u = random_unitary(d, rng);
                 std::vector<DensityOperator> states;
                 for (int x = 0; x < k; ++x) {
                   const std::vector<double> w = random_probs(d, rng);
                   Matrix diag = Matrix::Zero(d, d);
                   for (int i = 0; i < d; ++i) diag(i, i) = w[i];
                   states.emplace_back("A", hermitian_part(u * diag * u.adjoint()));
                 }
                 const Ensemble ens(random_probs(k, rng), std::move(states));
                 Checks c = check_entropic_disturbance(ens, dephasing(u), quad);
                 c.push_back(threshold_report("commuting/recovery-fidelity",
                                              c[0].aux["average_root_fidelity"].get<double>(),
                                              1.0, 1e-8));
                 c.push_back(equality_report("commuting/no-loss", c[0].lhs, 0.0, 1e-9));
                 return c;
               }});
  f.push_back({"depolarized-pair", 1, true, [quad](int, Rng&, Dims& out) {
                 out = {2, 2, 2};
                 Vector zero(2), plus(2);
                 zero << 1, 0;
                 plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
                 const Ensemble ens({0.5, 0.5}, {pure_state("A", zero), pure_state("A", plus)});
                 return check_entropic_disturbance(ens, depolarizing_qubit(0.3), quad);
               }});
  return f;
}

std::vector<Family> cpdp_families(const CampaignConfig& config) {
  const Dims dims = local_dims(config, {2});
  const QuadratureSpec quad = config.quad;
  auto pipeline = [quad](const TripartiteConfiguration& cfg, const Interaction& v) {
    ReducedDynamics rd = reduced_dynamics(cfg, v, quad);
    Checks c = rd.checks;
    c[0].aux["dp_slack"] = dp_slack(cfg, v);
    for (auto& r : converse_bound(cfg, v, rd.map, std::min(1.0, rd.epsilon))) {
      c.push_back(std::move(r));
    }
    for (auto& r : converse_cmi_bound(cfg, quad)) c.push_back(std::move(r));
    return c;
  };
  std::vector<Family> f;
  f.push_back({"forward", 50, false, [dims, pipeline](int t, Rng& rng, Dims& out) {
                 const int d = pick(dims, t);
                 out = {d, d, d};
                 const int total = d * d * d;
                 const TripartiteConfiguration cfg(
                     DensityOperator(Systems{{"R", d}, {"Q", d}, {"E", d}},
                                     random_density_matrix(total, 1 + t % total, rng)));
                 return pipeline(cfg, Interaction(random_unitary(d * d, rng), d, d));
               }});
  f.push_back({"product-environment", 10, false, [dims, pipeline](int t, Rng& rng, Dims& out) {
                 const int d = pick(dims, t);
                 out = {d, d, d};
                 const DensityOperator rq(Systems{{"R", d}, {"Q", d}},
                                          random_density_matrix(d * d, 1 + t % (d * d), rng));
                 const TripartiteConfiguration cfg(tensor(rq, random_density(d, d, rng, "E")));
                 const Interaction v(random_unitary(d * d, rng), d, d);
                 Checks c = pipeline(cfg, v);
                 c.push_back(threshold_report("product-environment/fidelity",
                                              c[0].aux["fidelity"].get<double>(), 1.0, 1e-6));
                 c.push_back(make_report("product-environment/data-processing", 0.0,
                                         dp_slack(cfg, v), 1e-8));
                 return c;
               }});
  f.push_back({"markov", 10, false, [dims, pipeline](int t, Rng& rng, Dims& out) {
                 const int d = pick(dims, t);
                 out = {d, d, d};
                 // A–C–B chain relabeled as R–Q–E.
                 const DensityOperator abc = random_markov_chain(d, d, d, rng);
                 const TripartiteConfiguration cfg(DensityOperator(
                     Systems{{"R", d}, {"E", d}, {"Q", d}}, abc.matrix()));
                 Checks c = pipeline(cfg, Interaction(random_unitary(d * d, rng), d, d));
                 c.push_back(threshold_report("markov/fidelity",
                                              c[0].aux["fidelity"].get<double>(), 1.0, 1e-6));
                 return c;
               }});
  return f;
}

std::vector<Family> families_for(const std::string& suite, const CampaignConfig& config) {
  if (suite == "entropy-gain") return entropy_gain_families(config);
  if (suite == "recovery") return recovery_families(config);
  if (suite == "info-gain") return info_gain_families(config);
  if (suite == "info-gain-qsi") return qsi_families(config);
  if (suite == "disturbance") return disturbance_families(config);
  if (suite == "cpdp") return cpdp_families(config);
  throw ConfigError("unknown suite '" + suite + "'");
}

std::uint64_t suite_id(const std::string& suite) {
  const auto& names = suite_names();
  return static_cast<std::uint64_t>(std::find(names.begin(), names.end(), suite) -
                                    names.begin());
}

CheckReport error_report(const std::string& family, const std::exception& e) {
  CheckReport r = make_report(family + "/error", 0.0, std::numeric_limits<double>::infinity(),
                              0.0, Json{{"error", e.what()}});
  r.holds = false;
  return r;
}

struct Job {
  std::size_t family;
  int trial;
};

std::vector<TrialRecord> run_bosonic(const CampaignConfig& config) {
  SweepOptions options;
  std::vector<TrialRecord> out;
  Checks grid;
  try {
    grid = bosonic_grid(options);
  } catch (const std::exception& e) {
    grid = {error_report("grid", e)};
  }
  const Dims dims{options.n_max + 1};
  int index = 0;
  for (auto& c : grid) {
    const std::string family = c.name.substr(0, c.name.find('/'));
    c.dims = dims;
    if (config.tol) retolerance(c, *config.tol);
    out.push_back({"bosonic", family, index++, {std::move(c)}});
  }
  return out;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

Json check_row(const std::string& suite, const std::string& family, int trial,
               const CheckReport& c) {
  Json j;
  j["suite"] = suite;
  j["family"] = family;
  j["trial"] = trial;
  const Json body = to_json(c);
  for (const auto& [k, v] : body.items()) j[k] = v;
  return j;
}

Json summarize_rows(const Json& rows) {
  std::map<std::string, Json> per_suite;
  std::vector<std::string> order;
  std::size_t total = 0;
  std::size_t passed = 0;
  for (const auto& row : rows) {
    const std::string suite = row.at("suite").get<std::string>();
    if (!per_suite.count(suite)) {
      order.push_back(suite);
      per_suite[suite] = Json{{"checks", 0}, {"passed", 0}, {"failed", 0},
                              {"worst_slack", nullptr}, {"worst_check", nullptr}};
    }
    Json& s = per_suite[suite];
    const bool holds = row.at("holds").get<bool>();
    s["checks"] = s["checks"].get<int>() + 1;
    s[holds ? "passed" : "failed"] = s[holds ? "passed" : "failed"].get<int>() + 1;
    ++total;
    if (holds) ++passed;
    // Non-finite slack is serialized as null and always ranks worst.
    const Json& slack = row.at("slack_bits");
    const double value = slack.is_number() ? slack.get<double>()
                                           : -std::numeric_limits<double>::infinity();
    const bool first = s["worst_check"].is_null();
    const double current = s["worst_slack"].is_number()
                               ? s["worst_slack"].get<double>()
                               : (first ? std::numeric_limits<double>::infinity()
                                        : -std::numeric_limits<double>::infinity());
    if (first || value < current) {
      s["worst_slack"] = slack.is_number() ? Json(value) : Json(nullptr);
      s["worst_check"] = row.at("check");
    }
  }
  Json suites = Json::object();
  for (const auto& name : order) suites[name] = per_suite[name];
  return Json{{"checks", total},
              {"passed", passed},
              {"failed", total - passed},
              {"all_hold", total == passed},
              {"suites", suites}};
}

Json rows_of(const CampaignResult& result) {
  Json rows = Json::array();
  for (const auto& t : result.trials) {
    for (const auto& c : t.checks) rows.push_back(check_row(t.suite, t.family, t.trial, c));
  }
  return rows;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"entropy-gain", "recovery",   "info-gain",
                                              "info-gain-qsi", "disturbance", "cpdp",
                                              "bosonic"};
  return names;
}

void CampaignConfig::validate() const {
  if (suites.empty()) throw ConfigError("no suite selected");
  for (const auto& s : suites) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), s) == names.end()) {
      throw ConfigError("unknown suite '" + s + "'");
    }
  }
  if (trials && *trials < 1) throw ConfigError("trials must be at least 1");
  if (dims) {
    if (dims->empty()) throw ConfigError("dims must not be empty");
    for (int d : *dims) {
      // The largest working state is tripartite with equal local dimensions.
      if (d < 2 || d > kMaxLocalDim || d * d * d > kMaxTotalDim) {
        throw ConfigError("dims must lie in [2, " + std::to_string(kMaxLocalDim) + "]");
      }
    }
  }
  if (tol && !(*tol >= 0.0 && std::isfinite(*tol))) {
    throw ConfigError("tol must be a finite nonnegative number");
  }
  try {
    quad.validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  if (jobs < 1) throw ConfigError("jobs must be at least 1");
  if (format != "json" && format != "csv") throw ConfigError("format must be json or csv");
}

void apply_config_json(const Json& j, CampaignConfig& config) {
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "suites") {
        config.suites = value.is_string() && value.get<std::string>() == "all"
                            ? suite_names()
                            : value.get<std::vector<std::string>>();
      } else if (key == "seed") {
        config.seed = value.get<std::uint64_t>();
      } else if (key == "trials") {
        config.trials = value.get<int>();
      } else if (key == "dims") {
        config.dims = value.get<std::vector<int>>();
      } else if (key == "tol") {
        config.tol = value.get<double>();
      } else if (key == "quad_nodes") {
        config.quad.nodes = value.get<int>();
      } else if (key == "quad_halfwidth") {
        config.quad.half_width = value.get<double>();
      } else if (key == "jobs") {
        config.jobs = value.get<int>();
      } else if (key == "out") {
        config.out = value.get<std::string>();
      } else if (key == "format") {
        config.format = value.get<std::string>();
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
}

bool CampaignResult::all_hold() const {
  return std::all_of(trials.begin(), trials.end(),
                     [](const TrialRecord& t) { return qrev::all_hold(t.checks); });
}

std::vector<TrialRecord> run_suite(const std::string& suite, const CampaignConfig& config) {
  if (suite == "bosonic") return run_bosonic(config);
  const std::vector<Family> families = families_for(suite, config);
  std::vector<Job> jobs;
  for (std::size_t f = 0; f < families.size(); ++f) {
    const int n = families[f].fixed ? families[f].trials
                                    : config.trials.value_or(families[f].trials);
    for (int t = 0; t < n; ++t) jobs.push_back({f, t});
  }
  std::vector<TrialRecord> out(jobs.size());
  const std::uint64_t suite_seed = Rng::derive_seed(config.seed, suite_id(suite));

  auto work = [&](std::size_t i) {
    const Job& job = jobs[i];
    const Family& family = families[job.family];
    const std::uint64_t seed =
        Rng::derive_seed(Rng::derive_seed(suite_seed, job.family), job.trial);
    Rng rng(seed);
    Dims dims;
    Checks checks;
    try {
      checks = family.run(job.trial, rng, dims);
    } catch (const std::exception& e) {
      checks = {error_report(family.name, e)};
    }
    stamp(checks, seed, dims);
    if (config.tol) {
      for (auto& c : checks) retolerance(c, *config.tol);
    }
    out[i] = TrialRecord{suite, family.name, job.trial, std::move(checks)};
  };

  const int workers = std::min<int>(config.jobs, static_cast<int>(jobs.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) work(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  return out;
}

CampaignResult run_campaign(const CampaignConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  CampaignResult result;
  for (const auto& name : suite_names()) {
    if (std::find(config.suites.begin(), config.suites.end(), name) == config.suites.end()) {
      continue;
    }
    for (auto& t : run_suite(name, config)) result.trials.push_back(std::move(t));
  }
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

Json summarize(const CampaignResult& result) { return summarize_rows(rows_of(result)); }

Json campaign_json(const CampaignConfig& config, const CampaignResult& result) {
  Json cfg;
  cfg["suites"] = config.suites;
  cfg["seed"] = config.seed;
  cfg["trials"] = config.trials ? Json(*config.trials) : Json(nullptr);
  cfg["dims"] = config.dims ? Json(*config.dims) : Json(nullptr);
  cfg["tol"] = config.tol ? Json(*config.tol) : Json(nullptr);
  cfg["quadrature"] = Json{{"scheme", config.quad.scheme},
                           {"nodes", config.quad.nodes},
                           {"half_width", config.quad.half_width},
                           {"panels", config.quad.panels}};
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["config"] = cfg;
  j["checks"] = rows_of(result);
  j["summary"] = summarize_rows(j["checks"]);
  if (config.timing) j["summary"]["wall_time_s"] = result.wall_seconds;
  return j;
}

void write_csv(std::ostream& os, const CampaignResult& result) {
  os << "suite,check,trial,seed,dims,lhs_bits,rhs_bits,slack_bits,holds,aux\n";
  for (const auto& t : result.trials) {
    for (const auto& c : t.checks) {
      Json aux = c.aux;
      aux["family"] = t.family;
      aux["tol"] = c.tol;
      os << t.suite << ',' << csv_escape(c.name) << ',' << t.trial << ',' << c.seed << ','
         << dims_string(c.dims) << ',' << format_double(c.lhs) << ','
         << format_double(c.rhs) << ',' << format_double(c.slack) << ','
         << (c.holds ? "true" : "false") << ',' << csv_escape(aux.dump()) << '\n';
    }
  }
}

Json merge_reports(const std::vector<Json>& reports) {
  if (reports.empty()) throw ConfigError("nothing to merge");
  Json rows = Json::array();
  Json configs = Json::array();
  for (const auto& r : reports) {
    if (!r.contains("schema_version") || r["schema_version"] != kSchemaVersion) {
      throw ConfigError("report has an unsupported schema_version");
    }
    if (!r.contains("checks") || !r["checks"].is_array()) {
      throw ConfigError("report has no checks array");
    }
    configs.push_back(r.value("config", Json(nullptr)));
    for (const auto& row : r["checks"]) rows.push_back(row);
  }
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["merged_configs"] = configs;
  j["checks"] = rows;
  j["summary"] = summarize_rows(rows);
  return j;
}

std::vector<std::string> reproducers(const CampaignConfig& config,
                                     const CampaignResult& result) {
  std::vector<std::string> out;
  for (const auto& t : result.trials) {
    for (const auto& c : t.checks) {
      if (c.holds) continue;
      std::ostringstream os;
      os << "FAILED " << t.suite << '/' << t.family << " trial " << t.trial << " check "
         << c.name << " slack " << format_double(c.slack) << " (tol " << c.tol
         << ") trial-seed " << c.seed << " dims " << dims_string(c.dims)
         << "; rerun: qrev verify " << t.suite << " --seed " << config.seed;
      if (config.trials) os << " --trials " << *config.trials;
      if (config.dims) {
        os << " --dims ";
        for (std::size_t i = 0; i < config.dims->size(); ++i) {
          os << (i ? "," : "") << (*config.dims)[i];
        }
      }
      if (c.aux.contains("error")) os << " error: " << c.aux["error"].get<std::string>();
      out.push_back(os.str());
    }
  }
  return out;
}

Checks bosonic_grid(const SweepOptions& options) {
  FockTruncation trunc{options.n_max, options.guard};
  trunc.validate();
  auto spec = [&](GaussianKind kind, double eta, double gain) {
    GaussianChannelSpec s;
    s.kind = kind;
    s.eta = eta;
    s.gain = gain;
    s.trunc = trunc;
    s.trunc_tol = options.trunc_tol;
    return s;
  };
  std::vector<GaussianChannelSpec> specs;
  for (double eta : options.etas) specs.push_back(spec(GaussianKind::loss, eta, 1.0));
  for (double g : options.gains) specs.push_back(spec(GaussianKind::amplifier, 1.0, g));
  for (double eta : options.etas) {
    for (double g : options.gains) specs.push_back(spec(GaussianKind::composition, eta, g));
  }
  const std::vector<std::pair<std::string, Matrix>> states{
      {"vacuum", fock_state(0, trunc)},
      {"single-photon", fock_state(1, trunc)},
      {"thermal", thermal_state(1.0, trunc)}};

  Checks out;
  for (const auto& s : specs) {
    for (auto& c : check_almost_unital(s)) out.push_back(std::move(c));
  }
  for (const auto& s : specs) {
    for (auto& c : check_adjoint_relation(s)) out.push_back(std::move(c));
  }
  for (const auto& s : specs) {
    for (const auto& [label, rho] : states) {
      for (auto& c : check_bosonic_entropy_gain(s, rho)) {
        c.aux["state"] = label;
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

void write_sweep_csv(std::ostream& os, const Checks& checks) {
  os << "kind,parameter,n_max,guard,lhs,rhs,slack,leakage\n";
  for (const auto& c : checks) {
    const Json& a = c.aux;
    std::string kind = c.name;
    if (a.contains("state")) kind += "/" + a["state"].get<std::string>();
    os << csv_escape(kind) << ',' << csv_escape(a.value("parameter", std::string())) << ','
       << a.value("n_max", 0) << ',' << a.value("guard", 0) << ',' << format_double(c.lhs)
       << ',' << format_double(c.rhs) << ',' << format_double(c.slack) << ','
       << format_double(a.value("leakage", 0.0)) << '\n';
  }
}

}  // namespace qrev
