// Closed-form security quantities, the exact per-round detection oracle, and
// Monte Carlo estimators with confidence intervals.
//
//   s(c, d)    = (1 - c) / (1 - c (1 - d))   survival of one message transfer
//   s(n, c, d) = s(c, d)^n                   survival of n transfers
//   r(c)       = 1 - c                       effective transmission rate

#pragma once

#include <stdexcept>

#include "qsdc/adversary.hpp"
#include "qsdc/protocol.hpp"

namespace qsdc::analysis {

class DegenerateParams : public std::invalid_argument {
 public:
  explicit DegenerateParams(const std::string& what)
      : std::invalid_argument(what) {}
};

struct SecurityParams {
  double c = 0.0;     // control-mode probability
  double d = 0.0;     // per-control-round detection probability
  long long n = 1;    // message bits
  double i0 = 1.0;    // bits Eve gains per eavesdropped message round

  /// Throws std::invalid_argument on out-of-domain fields.
  void validate() const;
};

/// Probability that one message transfer completes without detection.
/// Throws DegenerateParams at c = 1, d = 0 (no message round ever occurs).
double survival_one(const SecurityParams& params);

/// survival_one^n: Eve survives all n transfers. The information exponent
/// I/I0 = n i0 / i0 collapses to n. Strictly decreasing in n for c, d > 0
/// and -> 0 as n -> infinity.
double survival_n(const SecurityParams& params);

/// Effective transmission rate r = 1 - c.
double effective_rate(double c);

/// Exact P(detected | control round) for a strategy, by summing the finite
/// branch tree: Bob's four equiprobable states x Eve's basis distribution x
/// her Born-weighted outcome x Alice's basis (1/2 sift) x Alice's outcome.
/// This is the oracle that every simulated detection rate is checked
/// against.
double enumerate_detection(const adversary::EveStrategySpec& spec);

struct EstimateWithCI {
  double point = 0.0;
  double half_width_95 = 0.0;  // 1.96 sigma, normal-approximation binomial
  long long samples = 0;
};

/// 4-sigma binomial margin for a frequency estimated from n samples.
double binomial_4sigma(double p, long long n);

/// Runs `trials` independent single-bit sessions (per-trial seeds derived
/// from (config.master_seed, trial index)) and returns the fraction whose
/// message bit was delivered without any prior detection. trials >= 1000;
/// throws DegenerateParams when c = 1.
EstimateWithCI estimate_survival(const protocol::ProtocolConfig& config,
                                 long long trials);

struct QubitCost {
  double this_protocol_qubits;  // expected round trips n / (1 - c)
  double bb84_qubits;           // the 4n one-way baseline
};

/// Expected qubit cost of delivering n bits at control probability c,
/// against the 4n-qubit BB84 baseline. c = 1 yields an infinite cost.
QubitCost bb84_cost_comparison(long long n, double c);

}  // namespace qsdc::analysis
