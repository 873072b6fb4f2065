// End-to-end verification checks shared by the acceptance binary (full
// sample counts) and the CLI selftest subcommand (reduced counts). Each
// check compares the simulator against exact algebra, the closed-form
// survival formulas, or the branch-enumeration detection oracle.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qsdc::selfcheck {

struct CheckOptions {
  std::uint64_t seed = 0x5EEDFACEull;
  long long mc_rounds = 1'000'000;       // detection / information / DoS loops
  long long survival_trials = 100'000;   // per (c, strategy) grid cell
  long long decay_trials = 100'000;      // per n in the decay check
  long long soundness_sessions = 10'000; // no-Eve sessions
  long long key_trials = 1'000;          // key-transfer sessions
  long long pair_checks = 1'000;         // random-pair property checks
  // When false, Monte Carlo frequency checks are skipped (sample counts too
  // small to be meaningful); exact checks still run.
  bool statistical = true;
  // When true, the detection check additionally requires the enumerated
  // rates to match the pinned expectations {1/8, 1/8, 1/8, 1/16}. The
  // fixed-z entry of that table disagrees with the branch enumeration and
  // with Monte Carlo (both give 1/8), so enforcing it reports a failure.
  bool enforce_pinned_detection_rates = false;
  // When set, the determinism check runs this binary twice; otherwise the
  // sweep runs twice in-process through the same command path.
  std::string cli_path;
};

struct CheckResult {
  enum class Status { Pass, Fail, Skip };
  std::string name;
  Status status = Status::Pass;
  std::string detail;
};

std::vector<CheckResult> run_all_checks(const CheckOptions& options);

bool all_passed(const std::vector<CheckResult>& results);

/// One line per check plus a summary line.
void print_report(const std::vector<CheckResult>& results, std::ostream& out);

}  // namespace qsdc::selfcheck
