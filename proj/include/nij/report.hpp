#ifndef NIJ_REPORT_HPP
#define NIJ_REPORT_HPP

#include <json.hpp>
#include <string>

#include "nij/problem.hpp"

namespace nij {

/// Exit-code contract: 0 all verdicts pass, 1 a mathematical verdict fails,
/// 2 input or evaluation error.
enum ExitCode { kPass = 0, kVerdictFailed = 1, kError = 2 };

/// Result of one command. The machine form is the test-suite contract and is
/// byte-deterministic for a fixed (problem, seed); wall time is reported only
/// in the human form.
struct Report {
  std::string command;
  nlohmann::ordered_json machine;
  std::string human;
  int exit_code = kPass;

  std::string render(bool machine_format) const;
};

Report cmd_torsion(const ProblemSpec& spec, const std::string& operator_name);
Report cmd_lift(const ProblemSpec& spec, const std::string& operator_name);
Report cmd_project(const ProblemSpec& spec, const std::string& operator_name);
Report cmd_liealg(const ProblemSpec& spec);
Report cmd_verify_all(const ProblemSpec& spec);

}  // namespace nij

#endif
