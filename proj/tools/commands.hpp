#ifndef BUBBLE_TOOLS_COMMANDS_HPP
#define BUBBLE_TOOLS_COMMANDS_HPP

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "bubble/laplacian.hpp"
#include "bubble/rational.hpp"

namespace bubble::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kVerifyFailed = 2, kNonConvergence = 3 };

struct Perturbation {
  int index;
  Rational delta;
};

struct RunConfig {
  int b = 2;
  bool b_given = false;
  int level = 1;
  bool level_given = false;
  int scale = 1;
  int depth = 4;
  bool depth_given = false;
  Flavor flavor = Flavor::Neumann;
  std::string method = "decimation";
  std::string measure = "finite";
  double tol = 1e-8;
  std::string format = "json";
  std::string output;
  bool oracle = true;
  bool edges = false;
  std::optional<Perturbation> perturb;
  std::ostream *warn = &std::cerr;
};

nlohmann::json to_json(const Rational &q);

std::string cmd_graph(const RunConfig &c);
std::string cmd_spectrum(const RunConfig &c);
std::string cmd_ids(const RunConfig &c);
std::string cmd_gaps(const RunConfig &c);
std::string cmd_compact(const RunConfig &c);

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

/// Runs the invariant suite; warnings go to `warnings`.
std::vector<CheckResult> run_verify(const RunConfig &c, std::vector<std::string> &warnings);
std::string cmd_verify(const RunConfig &c, bool &all_passed);

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace bubble::cli

#endif // BUBBLE_TOOLS_COMMANDS_HPP
