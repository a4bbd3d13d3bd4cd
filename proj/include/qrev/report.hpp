#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qrev/serialize.hpp"

namespace qrev {

/// One verified inequality lhs ≥ rhs, in bits.
struct CheckReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool holds = false;
  double tol = 0.0;
  std::uint64_t seed = 0;
  std::vector<int> dims;
  Json aux = Json::object();
};

using Checks = std::vector<CheckReport>;

/// holds ⇔ lhs − rhs ≥ −tol. NaN slack never holds.
CheckReport make_report(std::string name, double lhs, double rhs, double tol,
                        Json aux = Json::object());
/// a = b within tol, reported as lhs = −|a − b|, rhs = 0.
CheckReport equality_report(std::string name, double a, double b, double tol,
                            Json aux = Json::object());

/// Re-evaluates `holds` against a new tolerance; values are untouched.
void retolerance(CheckReport& report, double tol);
void stamp(Checks& checks, std::uint64_t seed, const std::vector<int>& dims);
bool all_hold(const Checks& checks);
/// Lowest slack, +inf for an empty list.
double worst_slack(const Checks& checks);

Json to_json(const CheckReport& report);
/// "2x3" style fingerprint.
std::string dims_string(const std::vector<int>& dims);

}  // namespace qrev
