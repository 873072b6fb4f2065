#include "qsdc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

namespace qsdc::analysis {

namespace {

using adversary::BasisPolicy;
using adversary::EveBasis;
using adversary::EveKind;

/// (probability, basis) pairs Eve's policy selects on the B->A leg.
std::vector<std::pair<double, EveBasis>> policy_distribution(
    BasisPolicy policy) {
  switch (policy) {
    case BasisPolicy::FixedZ:
      return {{1.0, EveBasis::Z}};
    case BasisPolicy::FixedX:
      return {{1.0, EveBasis::X}};
    case BasisPolicy::RandomZX:
      return {{0.5, EveBasis::Z}, {0.5, EveBasis::X}};
    case BasisPolicy::Breidbart:
      return {{1.0, EveBasis::Breidbart}};
  }
  throw std::logic_error("invalid BasisPolicy");
}

double born_weight(const StateVector& eigenstate, const StateVector& psi) {
  return std::norm(inner_product(eigenstate, psi));
}

}  // namespace

void SecurityParams::validate() const {
  if (!(c >= 0.0 && c <= 1.0)) {
    throw std::invalid_argument("c must be in [0, 1]");
  }
  if (!(d >= 0.0 && d <= 1.0)) {
    throw std::invalid_argument("d must be in [0, 1]");
  }
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (!(i0 > 0.0)) throw std::invalid_argument("i0 must be > 0");
}

double survival_one(const SecurityParams& params) {
  params.validate();
  const double denom = 1.0 - params.c * (1.0 - params.d);
  if (denom <= 0.0) {
    throw DegenerateParams(
        "c = 1 with d = 0: every round is a control round and no message is "
        "ever transmitted");
  }
  return (1.0 - params.c) / denom;
}

double survival_n(const SecurityParams& params) {
  // I/I0 with I = n i0 reduces to n.
  return std::pow(survival_one(params), static_cast<double>(params.n));
}

double effective_rate(double c) {
  if (!(c >= 0.0 && c <= 1.0)) {
    throw std::invalid_argument("c must be in [0, 1]");
  }
  return 1.0 - c;
}

double enumerate_detection(const adversary::EveStrategySpec& spec) {
  // Only action on the B->A leg can touch the state Bob emits in a control
  // round (he discards whatever arrived), so strategies confined to A->B are
  // exactly invisible there.
  if (!spec.attacks_leg(adversary::Leg::BtoA)) return 0.0;

  const auto bases = policy_distribution(spec.policy);
  const StateLabel bob_labels[] = {StateLabel::Z0, StateLabel::Z1,
                                   StateLabel::X0, StateLabel::X1};
  double p_detect = 0.0;
  for (StateLabel bob_label : bob_labels) {
    const StateVector bob_state = prepare(bob_label);
    for (const auto& [p_basis, basis] : bases) {
      const BasisSpec& eve_basis = adversary::eve_basis_spec(basis);
      for (int eve_outcome = 0; eve_outcome < 2; ++eve_outcome) {
        const double w = born_weight(eve_basis.state(eve_outcome), bob_state);
        // Forwarded state is the outcome eigenstate (resend and
        // post-measurement forwarding coincide for projective measurements).
        const StateVector& on_wire = eve_basis.state(eve_outcome);
        // Sift: Alice's basis matches Bob's with probability 1/2; in a
        // sifted round she reads Bob's bit with the Born weight of his state.
        const double p_correct = born_weight(bob_state, on_wire);
        p_detect += 0.25 * p_basis * w * 0.5 * (1.0 - p_correct);
      }
    }
  }
  return p_detect;
}

double binomial_4sigma(double p, long long n) {
  return 4.0 * std::sqrt(std::max(p * (1.0 - p), 0.0) /
                         static_cast<double>(n));
}

EstimateWithCI estimate_survival(const protocol::ProtocolConfig& config,
                                 long long trials) {
  if (trials < 1000) {
    throw std::invalid_argument("estimate_survival needs trials >= 1000");
  }
  if (config.control_probability >= 1.0) {
    throw DegenerateParams("c = 1: no message round ever occurs");
  }
  protocol::ProtocolConfig trial_config = config;
  trial_config.message_bits = 1;
  trial_config.max_rounds = 0;
  long long survived = 0;
  for (long long t = 0; t < trials; ++t) {
    trial_config.master_seed = derive_seed(
        {config.master_seed, stream_tag::trial, static_cast<std::uint64_t>(t)});
    const auto result = protocol::run_session(trial_config);
    if (!result.aborted && result.delivered_bits.size() == 1) ++survived;
  }
  EstimateWithCI estimate;
  estimate.samples = trials;
  estimate.point = static_cast<double>(survived) / static_cast<double>(trials);
  estimate.half_width_95 =
      1.96 * std::sqrt(estimate.point * (1.0 - estimate.point) /
                       static_cast<double>(trials));
  return estimate;
}

QubitCost bb84_cost_comparison(long long n, double c) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (!(c >= 0.0 && c <= 1.0)) {
    throw std::invalid_argument("c must be in [0, 1]");
  }
  const double rate = 1.0 - c;
  const double cost = rate > 0.0
                          ? static_cast<double>(n) / rate
                          : std::numeric_limits<double>::infinity();
  return QubitCost{cost, 4.0 * static_cast<double>(n)};
}

}  // namespace qsdc::analysis
