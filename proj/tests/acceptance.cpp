// Runs the default campaign and judges acceptance criteria 1–10 with the
// thresholds and time limits pinned below. Prints one PASS/FAIL line per
// criterion; exits 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qrev/campaign.hpp"

using namespace qrev;

namespace {

struct Row {
  std::string family;
  const CheckReport* check;
};

struct SuiteRun {
  std::vector<TrialRecord> trials;
  double seconds = 0.0;

  std::vector<Row> rows(const std::string& family, const std::string& name) const {
    std::vector<Row> out;
    for (const auto& t : trials) {
      if (!family.empty() && t.family != family) continue;
      for (const auto& c : t.checks)
        if (c.name == name) out.push_back({t.family, &c});
    }
    return out;
  }
};

// Every row exists in the expected number and clears the floor.
struct Tally {
  std::string text;
  bool ok = true;

  void slack_at_least(const std::vector<Row>& rows, std::size_t expected, double floor,
                      const std::string& label) {
    double worst = INFINITY;
    for (const auto& r : rows) worst = std::min(worst, r.check->slack);
    const bool pass = rows.size() == expected && worst >= floor;
    note(pass, label + ": " + std::to_string(rows.size()) + "/" + std::to_string(expected) +
                   " rows, worst slack " + fmt(worst) + " vs " + fmt(floor));
  }

  void within(double seconds, double limit) {
    note(seconds < limit, "runtime " + fmt(seconds) + " s < " + fmt(limit) + " s");
  }

  void note(bool pass, const std::string& s) {
    ok = ok && pass;
    text += std::string(text.empty() ? "" : "; ") + (pass ? "" : "[x] ") + s;
  }

  static std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
  }
};

}  // namespace

int main() {
  const CampaignConfig config;
  std::map<std::string, SuiteRun> runs;
  CampaignResult first;
  for (const auto& suite : suite_names()) {
    const auto start = std::chrono::steady_clock::now();
    SuiteRun run{run_suite(suite, config), 0.0};
    run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (const auto& t : run.trials) first.trials.push_back(t);
    runs[suite] = std::move(run);
  }

  std::vector<std::pair<std::string, std::function<Tally()>>> criteria;

  criteria.emplace_back("entropy gain vs adjoint divergence", [&] {
    const SuiteRun& s = runs["entropy-gain"];
    Tally t;
    t.slack_at_least(s.rows("random-channel", "entropy-gain"), 200, -1e-8, "random channels");
    t.slack_at_least(s.rows("dephasing-equality", "entropy-gain/equality"), 1, -1e-8,
                     "dephasing equality");
    t.within(s.seconds, 10.0);
    return t;
  });

  criteria.emplace_back("recoverability with integrated recovery", [&] {
    const SuiteRun& s = runs["recovery"];
    Tally t;
    t.slack_at_least(s.rows("recoverability", "recoverability"), 100, -1e-6, "bound");
    t.slack_at_least(s.rows("recoverability", "recoverability/petz-fixed-point"), 100, -1e-9,
                     "Petz fixed point");
    t.within(s.seconds, 60.0);
    return t;
  });

  criteria.emplace_back("conditional mutual information recovery", [&] {
    const SuiteRun& s = runs["recovery"];
    Tally t;
    t.slack_at_least(s.rows("cmi", "cmi-recovery"), 100, -1e-6, "bound");
    const auto markov = s.rows("markov", "markov/recovery-fidelity");
    double worst = INFINITY;
    for (const auto& r : markov) worst = std::min(worst, r.check->lhs);
    t.note(!markov.empty() && worst >= 1.0 - 1e-6,
           "Markov fidelity " + Tally::fmt(worst) + " >= 1-1e-6");
    t.within(s.seconds, 60.0);
    return t;
  });

  criteria.emplace_back("information gain", [&] {
    const SuiteRun& s = runs["info-gain"];
    Tally t;
    t.slack_at_least(s.rows("efficient", "info-gain-no-qsi"), 100, -1e-8, "bound");
    t.slack_at_least(s.rows("efficient", "info-gain-no-qsi/uhlmann"), 100, -1e-8,
                     "Uhlmann witnesses");
    t.slack_at_least(s.rows("efficient", "efficient-second-law/groenewold-equals-mutual-info"),
                     100, -1e-8, "Groenewold = I(R;X)");
    int negative = 0;
    for (const auto& r : s.rows("inefficient", "info-gain-upper"))
      if (r.check->aux.value("groenewold", 0.0) < 0.0 && r.check->slack >= -1e-8) ++negative;
    t.note(negative > 0, std::to_string(negative) + " inefficient rows with I_G < 0 and the upper bound");
    t.within(s.seconds, 120.0);
    return t;
  });

  criteria.emplace_back("information gain with side information", [&] {
    const SuiteRun& s = runs["info-gain-qsi"];
    Tally t;
    t.slack_at_least(s.rows("random", "info-gain-qsi"), 50, -1e-5, "bound");
    t.slack_at_least(s.rows("random", "info-gain-qsi/trace-preserving"), 50, -1e-8,
                     "recovery family trace preserving");
    t.within(s.seconds, 300.0);
    return t;
  });

  criteria.emplace_back("entropic disturbance", [&] {
    const SuiteRun& s = runs["disturbance"];
    Tally t;
    t.slack_at_least(s.rows("random", "entropic-disturbance"), 100, -1e-6, "bound");
    const auto commuting = s.rows("commuting", "commuting/recovery-fidelity");
    double worst = INFINITY;
    for (const auto& r : commuting) worst = std::min(worst, r.check->lhs);
    t.note(!commuting.empty() && worst >= 1.0 - 1e-8,
           "commuting fidelity " + Tally::fmt(worst) + " >= 1-1e-8");
    t.within(s.seconds, 120.0);
    return t;
  });

  criteria.emplace_back("approximately CPTP reduced dynamics", [&] {
    const SuiteRun& s = runs["cpdp"];
    Tally t;
    t.slack_at_least(s.rows("forward", "reduced-dynamics"), 50, -1e-6, "forward bound");
    const auto product = s.rows("product-environment", "product-environment/fidelity");
    double worst = INFINITY;
    for (const auto& r : product) worst = std::min(worst, r.check->lhs);
    t.note(!product.empty() && worst >= 1.0 - 1e-6,
           "product fidelity " + Tally::fmt(worst) + " >= 1-1e-6");
    const auto converse = s.rows("", "converse");
    int vacuous = 0;
    double worst_converse = INFINITY;
    for (const auto& r : converse) {
      if (r.check->aux.value("vacuous", false)) {
        ++vacuous;
        continue;
      }
      worst_converse = std::min(worst_converse, r.check->slack);
    }
    t.note(vacuous == 0 && worst_converse >= -1e-8,
           "converse worst slack " + Tally::fmt(worst_converse) + " over " +
               std::to_string(converse.size()) + " rows, " + std::to_string(vacuous) + " vacuous");
    t.within(s.seconds, 120.0);
    return t;
  });

  criteria.emplace_back("bosonic identities on the guarded subspace", [&] {
    const SuiteRun& s = runs["bosonic"];
    Tally t;
    for (const char* kind : {"loss", "amplifier", "composition"}) {
      const auto rows = s.rows("almost-unital", std::string("almost-unital/") + kind);
      t.slack_at_least(rows, rows.empty() ? 1 : rows.size(), -1e-6,
                       std::string("almost unital ") + kind);
      for (const auto& r : rows)
        if (r.check->slack < -1e-6)
          t.note(false, r.check->aux.value("parameter", "") + " deviation " +
                            Tally::fmt(-r.check->slack) + " (truncation tail " +
                            Tally::fmt(r.check->aux.value("leakage", 0.0)) + ")");
    }
    for (const char* kind : {"loss", "amplifier", "composition"}) {
      const auto rows = s.rows("adjoint-relation", std::string("adjoint-relation/") + kind);
      t.slack_at_least(rows, rows.empty() ? 1 : rows.size(), -1e-6,
                       std::string("adjoint ") + kind);
    }
    std::vector<Row> gain;
    for (const char* kind : {"loss", "amplifier", "composition"})
      for (const auto& r : s.rows("entropy-gain", std::string("entropy-gain/") + kind))
        gain.push_back(r);
    t.slack_at_least(gain, gain.empty() ? 1 : gain.size(), -1e-5, "entropy gain");
    t.within(s.seconds, 120.0);
    return t;
  });

  criteria.emplace_back("minimal entropy gain range", [&] {
    const SuiteRun& s = runs["entropy-gain"];
    Tally t;
    const auto rows = s.rows("minimal-gain", "minimal-entropy-gain/upper");
    int inside = 0;
    double lowest = INFINITY;
    double highest = -INFINITY;
    for (const auto& r : rows) {
      const double value = r.check->aux.value("value", NAN);
      const int d = r.check->dims.empty() ? 0 : r.check->dims.front();
      lowest = std::min(lowest, value + std::log2(double(d)));
      highest = std::max(highest, value);
      if (d >= 2 && value >= -std::log2(double(d)) - 1e-8 && value <= 1e-8) ++inside;
    }
    t.note(rows.size() == 20 && inside == 20,
           std::to_string(inside) + "/20 values inside, min(G+log d) " + Tally::fmt(lowest) +
               ", max G " + Tally::fmt(highest));
    t.within(s.seconds, 120.0);
    return t;
  });

  criteria.emplace_back("determinism of the default campaign", [&] {
    Tally t;
    const std::string a = campaign_json(config, first).dump(2);
    const std::string b = campaign_json(config, run_campaign(config)).dump(2);
    t.note(a == b, "two runs with seed " + std::to_string(config.seed) + ", " +
                       std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "differ"));
    return t;
  });

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Tally t = criteria[i].second();
    if (!t.ok) ++failed;
    std::printf("criterion %2zu %s  %s  [%s]\n", i + 1, t.ok ? "PASS" : "FAIL",
                criteria[i].first.c_str(), t.text.c_str());
  }
  std::printf("%d/%zu criteria pass\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
