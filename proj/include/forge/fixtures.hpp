#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "forge/equations.hpp"
#include "forge/solutions.hpp"

// Named frozen parameter records for the worked examples, runnable as
// reproducible pass/fail fixtures. Each fixture builds its solution bundle on
// every listed branch, verifies the bundle against its equation (or the
// cos^2 + sin^2 = 1 pair identity), and runs extra value checks against the
// constants the source example prints.

namespace forge::fixtures {

using solutions::Branch;
using solutions::Constructed;

using CheckFn = std::function<std::optional<std::string>(const Constructed&)>;

struct Fixture {
  std::string id;
  std::string citation;         // which displayed equation this reproduces
  std::string constructor_arm;  // theorem tag of the constructor it exercises
  std::string equation_arm;     // equation kind, empty when none attaches
  double tol = 1e-9;
  bool expect_symbolic = false;  // require a passing branch with residual == 0 symbolically
  bool pair_identity = false;    // verify f^2 + partner^2 = 1 instead of an equation
  std::vector<Branch> branches;  // empty means the single default branch
  std::function<Constructed(const Branch&)> build;
  std::vector<std::pair<std::string, CheckFn>> checks;
};

struct BranchRow {
  std::string label;
  bool built = false;
  std::string build_error;
  bool verified = false;
  bool symbolic = false;
  double max_rel = 0.0;
  std::vector<std::string> check_failures;
};

struct FixtureResult {
  std::string id;
  std::string citation;
  bool pass = false;
  std::vector<BranchRow> rows;
  equations::VerificationReport best;  // report of the best branch, labels list all attempts
};

struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
  std::optional<double> radius;
  std::optional<double> tol;
  std::optional<int> branch_index;  // restrict the run to one branch by position
};

const std::vector<Fixture>& registry();
const Fixture* find(const std::string& id);

FixtureResult run_fixture(const Fixture& fx, const RunOverrides& ov = {});

// Coverage over the whole registry, used by reproduce --all.
std::vector<std::string> constructor_arms_covered();
std::vector<std::string> equation_arms_covered();

}  // namespace forge::fixtures
