// Command-line front end: run sessions, parameter sweeps, closed-form
// queries, key transfer and the self-test table. The entry point takes the
// argument vector and output streams so it can be driven in-process.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qsdc/adversary.hpp"

namespace qsdc::cli {

/// Fixed 10-significant-digit rendering ("%.10g") for stable output files.
std::string format_number(double value);

/// "kind/policy" for strategies with a basis policy, bare kind otherwise.
std::string strategy_name(const adversary::EveStrategySpec& spec);

struct SweepOptions {
  std::vector<double> c_values;
  std::vector<adversary::EveStrategySpec> strategies;
  long long trials = 10000;
  std::uint64_t seed = 0;
};

/// One CSV row per (c, strategy):
/// c,d_exact,strategy,survival_formula,survival_mc,ci95,trials
/// Cell seeds derive from (seed, strategy, c), so neither list order nor
/// parallel evaluation can change a cell's result.
void write_sweep_csv(const SweepOptions& options, std::ostream& out);

/// Exit codes: 0 success, 1 usage or parameter error, 2 session aborted by
/// detection. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace qsdc::cli
