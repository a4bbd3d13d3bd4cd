#include "qrev/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qrev {

CheckReport make_report(std::string name, double lhs, double rhs, double tol, Json aux) {
  CheckReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = lhs - rhs;
  r.tol = tol;
  r.holds = r.slack >= -tol;
  r.aux = std::move(aux);
  return r;
}

CheckReport equality_report(std::string name, double a, double b, double tol, Json aux) {
  aux["a"] = a;
  aux["b"] = b;
  return make_report(std::move(name), -std::abs(a - b), 0.0, tol, std::move(aux));
}

void retolerance(CheckReport& report, double tol) {
  report.tol = tol;
  report.holds = report.slack >= -tol;
}

void stamp(Checks& checks, std::uint64_t seed, const std::vector<int>& dims) {
  for (auto& c : checks) {
    c.seed = seed;
    c.dims = dims;
  }
}

bool all_hold(const Checks& checks) {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckReport& c) { return c.holds; });
}

double worst_slack(const Checks& checks) {
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& c : checks) {
    if (std::isnan(c.slack)) return c.slack;
    worst = std::min(worst, c.slack);
  }
  return worst;
}

std::string dims_string(const std::vector<int>& dims) {
  std::string s;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) s += 'x';
    s += std::to_string(dims[i]);
  }
  return s;
}

Json to_json(const CheckReport& report) {
  Json j;
  j["check"] = report.name;
  j["seed"] = report.seed;
  j["dims"] = dims_string(report.dims);
  j["lhs_bits"] = report.lhs;
  j["rhs_bits"] = report.rhs;
  j["slack_bits"] = report.slack;
  j["holds"] = report.holds;
  j["tol"] = report.tol;
  j["aux"] = report.aux;
  return j;
}

}  // namespace qrev
