#include "qsdc/cli.hpp"

#include <bit>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsdc/analysis.hpp"
#include "qsdc/keyxfer.hpp"
#include "qsdc/protocol.hpp"
#include "qsdc/selfcheck.hpp"
#include "qsdc/transcript_json.hpp"

namespace qsdc::cli {

namespace {

using adversary::BasisPolicy;
using adversary::EveKind;
using adversary::EveStrategySpec;

/// Usage error surfaced as exit code 1, message prefixed with the flag name.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

EveKind kind_from_string(const std::string& name) {
  if (name == "none") return EveKind::None;
  if (name == "intercept-ab") return EveKind::InterceptResendAB;
  if (name == "intercept-ba") return EveKind::InterceptResendBA;
  if (name == "intercept-both") return EveKind::InterceptResendBoth;
  if (name == "measure-ba") return EveKind::MeasureOnlyBA;
  if (name == "dos-ab") return EveKind::DoSAB;
  throw UsageError("--eve: unknown strategy '" + name +
                   "' (valid: none, intercept-ab, intercept-ba, "
                   "intercept-both, measure-ba, dos-ab)");
}

BasisPolicy policy_from_string(const std::string& name) {
  if (name == "z") return BasisPolicy::FixedZ;
  if (name == "x") return BasisPolicy::FixedX;
  if (name == "random-zx") return BasisPolicy::RandomZX;
  if (name == "breidbart") return BasisPolicy::Breidbart;
  throw UsageError("--policy: unknown policy '" + name +
                   "' (valid: z, x, random-zx, breidbart)");
}

EveStrategySpec make_strategy(const std::string& kind_name,
                              const std::string& policy_name) {
  EveStrategySpec spec;
  spec.kind = kind_from_string(kind_name);
  if (!policy_name.empty()) {
    spec.policy = policy_from_string(policy_name);
  } else {
    // Defaults: intercept-resend attacks draw a random Z/X basis; the
    // measure-only attack uses its optimal Breidbart basis.
    spec.policy = spec.kind == EveKind::MeasureOnlyBA ? BasisPolicy::Breidbart
                                                      : BasisPolicy::RandomZX;
  }
  return spec;
}

std::uint64_t seed_from_env_or(std::uint64_t fallback) {
  const char* env = std::getenv("QSDC_SEED");
  if (env == nullptr || *env == '\0') return fallback;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(env, &end, 10);
  if (end == nullptr || *end != '\0') {
    throw UsageError(std::string("QSDC_SEED: not an unsigned integer: '") +
                     env + "'");
  }
  return static_cast<std::uint64_t>(value);
}

/// Validator producing "--flag: value V is outside [lo, hi]".
CLI::Validator range_check(double lo, double hi) {
  return CLI::Validator(
      [lo, hi](std::string& input) -> std::string {
        double value = 0.0;
        try {
          value = std::stod(input);
        } catch (const std::exception&) {
          return "value '" + input + "' is not a number";
        }
        if (value < lo || value > hi) {
          std::ostringstream msg;
          msg << "value " << input << " is outside [" << lo << ", " << hi
              << "]";
          return msg.str();
        }
        return {};
      },
      "in [" + format_number(lo) + ", " + format_number(hi) + "]");
}

/// Writes `body(out)` to path when given, else to fallback. The file is
/// only opened after all inputs validated and the computation succeeded.
template <typename Body>
void emit(const std::string& out_path, std::ostream& fallback, Body&& body) {
  if (out_path.empty()) {
    body(fallback);
    return;
  }
  std::ostringstream buffer;
  body(buffer);
  std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open --out file " + out_path);
  file << buffer.str();
}

int cmd_simulate(const protocol::ProtocolConfig& config,
                 const std::string& out_path, std::ostream& out) {
  const auto result = protocol::run_session(config);
  emit(out_path, out,
       [&](std::ostream& os) { protocol::write_session_jsonl(result, os); });
  return result.aborted ? 2 : 0;
}

int cmd_formula(double c, double d, long long n, const std::string& out_path,
                std::ostream& out) {
  analysis::SecurityParams params{c, d, n, 1.0};
  const double s_one = analysis::survival_one(params);
  const double s_n = analysis::survival_n(params);
  const double rate = analysis::effective_rate(c);
  emit(out_path, out, [&](std::ostream& os) {
    os << "{\"s_one\":" << format_number(s_one)
       << ",\"s_n\":" << format_number(s_n)
       << ",\"rate\":" << format_number(rate) << "}\n";
  });
  return 0;
}

int cmd_keygen(const protocol::ProtocolConfig& config,
               const keyxfer::KeySession& session, const std::string& out_path,
               std::ostream& out) {
  const auto outcome = keyxfer::run_key_transfer(config, session);
  nlohmann::ordered_json j;
  if (outcome.status == keyxfer::KeyStatus::Established) {
    j["status"] = "established";
    j["raw_bits"] = session.raw_bits;
    j["final_bits"] = session.final_bits;
    j["alice_key"] = keyxfer::to_hex(*outcome.alice_key);
    j["bob_key"] = keyxfer::to_hex(*outcome.bob_key);
  } else {
    j["status"] = "aborted";
  }
  emit(out_path, out, [&](std::ostream& os) { os << j.dump() << '\n'; });
  return outcome.status == keyxfer::KeyStatus::Aborted ? 2 : 0;
}

int cmd_selftest(long long trials, std::uint64_t seed, std::ostream& out) {
  selfcheck::CheckOptions options;
  options.seed = seed;
  options.mc_rounds = trials;
  options.survival_trials = std::max<long long>(1000, trials / 10);
  options.decay_trials = std::max<long long>(1000, trials / 10);
  options.soundness_sessions = std::max<long long>(100, trials / 10);
  options.key_trials = std::max<long long>(100, trials / 100);
  constexpr long long kMinStatisticalTrials = 10000;
  if (trials < kMinStatisticalTrials) {
    out << "warning: --trials " << trials << " is below the minimum sample "
        << "size " << kMinStatisticalTrials
        << "; statistical checks are skipped\n";
    options.statistical = false;
  }
  const auto results = selfcheck::run_all_checks(options);
  selfcheck::print_report(results, out);
  return selfcheck::all_passed(results) ? 0 : 1;
}

}  // namespace

std::string format_number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.10g", value);
  return buffer;
}

std::string strategy_name(const EveStrategySpec& spec) {
  switch (spec.kind) {
    case EveKind::None:
    case EveKind::DoSAB:
      return adversary::to_string(spec.kind);
    default:
      return std::string(adversary::to_string(spec.kind)) + "/" +
             adversary::to_string(spec.policy);
  }
}

void write_sweep_csv(const SweepOptions& options, std::ostream& out) {
  out << "c,d_exact,strategy,survival_formula,survival_mc,ci95,trials\n";
  for (const auto& strategy : options.strategies) {
    for (double c : options.c_values) {
      const double d = analysis::enumerate_detection(strategy);
      const double formula = analysis::survival_one({c, d, 1, 1.0});

      protocol::ProtocolConfig config;
      config.control_probability = c;
      config.eve = strategy;
      config.master_seed = derive_seed(
          {options.seed, static_cast<std::uint64_t>(strategy.kind),
           static_cast<std::uint64_t>(strategy.policy),
           std::bit_cast<std::uint64_t>(c)});
      const auto estimate =
          analysis::estimate_survival(config, options.trials);

      out << format_number(c) << ',' << format_number(d) << ','
          << strategy_name(strategy) << ',' << format_number(formula) << ','
          << format_number(estimate.point) << ','
          << format_number(estimate.half_width_95) << ',' << estimate.samples
          << '\n';
    }
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"single-qubit two-mode secure direct communication simulator"};
  app.require_subcommand(1);

  // simulate
  auto* simulate = app.add_subcommand(
      "simulate", "run one session and emit JSON-lines transcripts");
  double sim_c = 0.1;
  long long sim_bits = 32;
  std::string sim_eve = "none", sim_policy, sim_out, sim_format = "json";
  std::optional<std::uint64_t> sim_seed;
  simulate->add_option("--c", sim_c, "control-mode probability")
      ->check(range_check(0.0, 1.0))
      ->capture_default_str();
  simulate->add_option("--bits", sim_bits, "message bits to deliver")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate->add_option("--eve", sim_eve, "eavesdropping strategy")
      ->capture_default_str();
  simulate->add_option("--policy", sim_policy, "Eve's basis policy");
  simulate->add_option("--seed", sim_seed, "master seed (default QSDC_SEED)");
  simulate->add_option("--out", sim_out, "write output to this file");
  simulate->add_option("--format", sim_format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));

  // sweep
  auto* sweep = app.add_subcommand(
      "sweep", "survival formula vs Monte Carlo over (c, strategy) cells");
  std::vector<double> sweep_c{0.1, 0.25, 0.5};
  std::vector<std::string> sweep_eve{"intercept-ba"};
  std::string sweep_policy, sweep_out, sweep_format = "csv";
  long long sweep_trials = 10000;
  std::optional<std::uint64_t> sweep_seed;
  sweep->add_option("--c", sweep_c, "comma-separated control probabilities")
      ->delimiter(',')
      ->check(range_check(0.0, 1.0))
      ->capture_default_str();
  sweep->add_option("--eve", sweep_eve, "comma-separated strategies")
      ->delimiter(',')
      ->capture_default_str();
  sweep->add_option("--policy", sweep_policy, "basis policy for all strategies");
  sweep->add_option("--trials", sweep_trials, "Monte Carlo trials per cell")
      ->check(CLI::Range(static_cast<long long>(1000),
                         std::numeric_limits<long long>::max()))
      ->capture_default_str();
  sweep->add_option("--seed", sweep_seed, "master seed (default QSDC_SEED)");
  sweep->add_option("--out", sweep_out, "write CSV to this file");
  sweep->add_option("--format", sweep_format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));

  // formula
  auto* formula = app.add_subcommand(
      "formula", "closed-form survival and rate for given c, d, n");
  double formula_c = 0.0, formula_d = 0.0;
  long long formula_n = 1;
  std::string formula_out;
  formula->add_option("--c", formula_c, "control-mode probability")
      ->required()
      ->check(range_check(0.0, 1.0));
  formula->add_option("--d", formula_d, "per-control-round detection probability")
      ->required()
      ->check(range_check(0.0, 1.0));
  formula->add_option("--n", formula_n, "message bits")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  formula->add_option("--out", formula_out, "write JSON to this file");

  // keygen
  auto* keygen = app.add_subcommand(
      "keygen", "key transfer with Toeplitz privacy amplification");
  double key_c = 0.1;
  long long key_raw = 128, key_final = 0;
  std::string key_eve = "none", key_policy, key_out;
  std::optional<std::uint64_t> key_seed;
  keygen->add_option("--c", key_c, "control-mode probability")
      ->check(range_check(0.0, 1.0))
      ->capture_default_str();
  keygen->add_option("--raw-bits", key_raw, "random bits Bob transmits (N)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  keygen
      ->add_option("--final-bits", key_final,
                   "distilled key length (M <= N); compression is the "
                   "caller's policy")
      ->required()
      ->check(CLI::PositiveNumber);
  keygen->add_option("--eve", key_eve, "eavesdropping strategy")
      ->capture_default_str();
  keygen->add_option("--policy", key_policy, "Eve's basis policy");
  keygen->add_option("--seed", key_seed, "master seed (default QSDC_SEED)");
  keygen->add_option("--out", key_out, "write JSON to this file");

  // selftest
  auto* selftest = app.add_subcommand(
      "selftest", "run the acceptance checks at reduced sample counts");
  long long selftest_trials = 100000;
  std::optional<std::uint64_t> selftest_seed;
  selftest->add_option("--trials", selftest_trials, "sample count per check")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  selftest->add_option("--seed", selftest_seed, "master seed (default QSDC_SEED)");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("qsdc");
  for (const auto& arg : args) argv.push_back(arg.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 1;
  }

  try {
    if (simulate->parsed()) {
      if (sim_format != "json") {
        throw UsageError("--format: simulate emits line-delimited JSON only");
      }
      protocol::ProtocolConfig config;
      config.control_probability = sim_c;
      config.message_bits = sim_bits;
      config.eve = make_strategy(sim_eve, sim_policy);
      config.master_seed = sim_seed ? *sim_seed : seed_from_env_or(0);
      config.validate();
      return cmd_simulate(config, sim_out, out);
    }
    if (sweep->parsed()) {
      if (sweep_format != "csv") {
        throw UsageError("--format: sweep emits CSV only");
      }
      SweepOptions options;
      options.c_values = sweep_c;
      for (const auto& name : sweep_eve) {
        options.strategies.push_back(make_strategy(name, sweep_policy));
      }
      options.trials = sweep_trials;
      options.seed = sweep_seed ? *sweep_seed : seed_from_env_or(0);
      emit(sweep_out, out,
           [&](std::ostream& os) { write_sweep_csv(options, os); });
      return 0;
    }
    if (formula->parsed()) {
      return cmd_formula(formula_c, formula_d, formula_n, formula_out, out);
    }
    if (keygen->parsed()) {
      protocol::ProtocolConfig config;
      config.control_probability = key_c;
      config.eve = make_strategy(key_eve, key_policy);
      config.master_seed = key_seed ? *key_seed : seed_from_env_or(0);
      keyxfer::KeySession session;
      session.raw_bits = key_raw;
      session.final_bits = key_final;
      session.toeplitz_seed =
          derive_seed({config.master_seed, stream_tag::toeplitz});
      session.validate();
      return cmd_keygen(config, session, key_out, out);
    }
    if (selftest->parsed()) {
      const std::uint64_t seed =
          selftest_seed ? *selftest_seed : seed_from_env_or(0x5EEDFACEull);
      return cmd_selftest(selftest_trials, seed, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const analysis::DegenerateParams& e) {
    err << "error: degenerate parameters: " << e.what() << '\n';
    return 1;
  } catch (const protocol::MaxRoundsExceeded& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  err << "error: no subcommand given\n";
  return 1;
}

}  // namespace qsdc::cli
