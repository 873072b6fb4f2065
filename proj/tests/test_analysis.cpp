#include <cmath>

#include <doctest.h>

#include "qsdc/analysis.hpp"
#include "oracles.hpp"

using namespace qsdc;
using namespace qsdc::analysis;
using adversary::BasisPolicy;
using adversary::EveKind;
using adversary::EveStrategySpec;

namespace {

// Frozen from the raw-amplitude enumeration in oracles.hpp: any projective
// measure-and-forward attack on the B->A leg is caught in exactly 1/8 of
// the control rounds, whatever the basis policy; A->B-only attacks never.
constexpr double kDetectBA = 0.125;

}  // namespace

TEST_CASE("the independent oracle confirms the frozen detection rates") {
  using oracle::control_detection;
  CHECK(std::abs(control_detection({{1.0, oracle::z_basis()}}) - kDetectBA) <=
        1e-12);
  CHECK(std::abs(control_detection({{1.0, oracle::x_basis()}}) - kDetectBA) <=
        1e-12);
  CHECK(std::abs(control_detection({{0.5, oracle::z_basis()},
                                    {0.5, oracle::x_basis()}}) -
                 kDetectBA) <= 1e-12);
  CHECK(std::abs(control_detection({{1.0, oracle::breidbart_basis()}}) -
                 kDetectBA) <= 1e-12);
}

TEST_CASE("enumerate_detection matches the oracle for every strategy") {
  const BasisPolicy policies[] = {BasisPolicy::FixedZ, BasisPolicy::FixedX,
                                  BasisPolicy::RandomZX,
                                  BasisPolicy::Breidbart};

  // Strategies that touch B->A: 1/8 under every policy.
  for (EveKind kind : {EveKind::InterceptResendBA,
                       EveKind::InterceptResendBoth, EveKind::MeasureOnlyBA}) {
    for (BasisPolicy policy : policies) {
      CHECK(std::abs(enumerate_detection({kind, policy}) - kDetectBA) <=
            1e-12);
    }
  }

  // Strategies confined to A->B are invisible to control mode.
  CHECK(enumerate_detection(EveStrategySpec::none()) == 0.0);
  CHECK(enumerate_detection(EveStrategySpec::dos_ab()) == 0.0);
  for (BasisPolicy policy : policies) {
    CHECK(enumerate_detection({EveKind::InterceptResendAB, policy}) == 0.0);
  }
}

TEST_CASE("survival_one closed form") {
  CHECK(std::abs(survival_one({0.0, 0.7, 1, 1.0}) - 1.0) <= 1e-12);
  CHECK(std::abs(survival_one({0.5, 0.5, 1, 1.0}) - 2.0 / 3.0) <= 1e-12);
  CHECK(std::abs(survival_one({0.5, 1.0, 1, 1.0}) - 0.5) <= 1e-12);
  // c = 1 with d > 0 is a legal limit: Eve is always caught.
  CHECK(std::abs(survival_one({1.0, 0.5, 1, 1.0}) - 0.0) <= 1e-12);
  CHECK_THROWS_AS(survival_one({1.0, 0.0, 1, 1.0}), DegenerateParams);
  CHECK_THROWS_AS(survival_one({-0.1, 0.5, 1, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(survival_one({0.5, 0.5, 0, 1.0}), std::invalid_argument);
}

TEST_CASE("survival_n decays exponentially") {
  CHECK(std::abs(survival_n({0.5, 0.5, 1, 1.0}) - 2.0 / 3.0) <= 1e-12);
  CHECK(std::abs(survival_n({0.0, 0.9, 100, 1.0}) - 1.0) <= 1e-12);

  const double s1 = survival_one({0.5, 0.125, 1, 1.0});
  const long long n_small = static_cast<long long>(
      std::ceil(std::log(1e-6) / std::log(s1)));
  CHECK(survival_n({0.5, 0.125, n_small, 1.0}) < 1e-6);
  CHECK(survival_n({0.5, 0.125, n_small - 20, 1.0}) > 1e-6);
}

TEST_CASE("survival_one is strictly decreasing in c and d") {
  const double grid[] = {0.1, 0.3, 0.5, 0.7, 0.9};
  for (double c : grid) {
    for (double d : grid) {
      const double s = survival_one({c, d, 1, 1.0});
      CHECK(survival_one({c + 0.05, d, 1, 1.0}) < s);
      CHECK(survival_one({c, d + 0.05, 1, 1.0}) < s);
    }
  }
}

TEST_CASE("effective_rate") {
  CHECK(effective_rate(0.0) == 1.0);
  CHECK(std::abs(effective_rate(0.25) - 0.75) <= 1e-12);
  CHECK(effective_rate(1.0) == 0.0);
  CHECK_THROWS_AS(effective_rate(1.1), std::invalid_argument);
}

TEST_CASE("estimate_survival against the closed form") {
  protocol::ProtocolConfig config;
  config.master_seed = 20240601;

  SUBCASE("no Eve: survival is exactly 1") {
    config.control_probability = 0.3;
    const auto est = estimate_survival(config, 2000);
    CHECK(est.point == 1.0);
    CHECK(est.samples == 2000);
    CHECK(est.half_width_95 == 0.0);
  }

  SUBCASE("random-basis intercept on B->A") {
    config.eve = {EveKind::InterceptResendBA, BasisPolicy::RandomZX};
    const long long trials = 20000;

    config.control_probability = 0.5;
    auto est = estimate_survival(config, trials);
    const double s_half = survival_one({0.5, kDetectBA, 1, 1.0});
    CHECK(std::abs(s_half - 0.8888888888888888) <= 1e-12);
    CHECK(std::abs(est.point - s_half) <=
          binomial_4sigma(s_half, trials));

    config.control_probability = 0.25;
    est = estimate_survival(config, trials);
    const double s_quarter = survival_one({0.25, kDetectBA, 1, 1.0});
    CHECK(std::abs(s_quarter - 0.96) <= 1e-12);
    CHECK(std::abs(est.point - s_quarter) <=
          binomial_4sigma(s_quarter, trials));
  }

  SUBCASE("degenerate and invalid inputs") {
    config.control_probability = 1.0;
    CHECK_THROWS_AS(estimate_survival(config, 2000), DegenerateParams);
    config.control_probability = 0.5;
    CHECK_THROWS_AS(estimate_survival(config, 999), std::invalid_argument);
  }
}

TEST_CASE("multi-bit survival follows s^n") {
  const EveStrategySpec strategy{EveKind::InterceptResendBA,
                                 BasisPolicy::RandomZX};
  const double s1 = survival_one({0.5, enumerate_detection(strategy), 1, 1.0});
  const long long trials = 20000;
  for (long long n : {1LL, 5LL}) {
    long long survived = 0;
    for (long long t = 0; t < trials; ++t) {
      protocol::ProtocolConfig config;
      config.control_probability = 0.5;
      config.message_bits = n;
      config.eve = strategy;
      config.master_seed = derive_seed({0xDECA1ull, (std::uint64_t)n,
                                        (std::uint64_t)t});
      const auto result = protocol::run_session(config);
      survived += !result.aborted;
    }
    const double expected = std::pow(s1, static_cast<double>(n));
    const double freq =
        static_cast<double>(survived) / static_cast<double>(trials);
    CHECK(std::abs(freq - expected) <= binomial_4sigma(expected, trials));
  }
}

TEST_CASE("message-round frequency realizes the effective rate") {
  protocol::ProtocolConfig config;
  config.control_probability = 0.3;
  config.master_seed = 606;
  const long long n = 200000;
  long long message_rounds = 0;
  for (long long r = 0; r < n; ++r) {
    auto rng = protocol::make_round_rng(config.master_seed, r);
    message_rounds +=
        protocol::run_round(config, r, 0, rng).mode == protocol::Mode::Message;
  }
  const double freq =
      static_cast<double>(message_rounds) / static_cast<double>(n);
  const double rate = effective_rate(0.3);
  CHECK(std::abs(freq - rate) <= binomial_4sigma(rate, n));
}

TEST_CASE("qubit cost against the 4n baseline") {
  auto cost = bb84_cost_comparison(100, 0.0);
  CHECK(cost.this_protocol_qubits == 100.0);
  CHECK(cost.bb84_qubits == 400.0);

  cost = bb84_cost_comparison(100, 0.5);
  CHECK(std::abs(cost.this_protocol_qubits - 200.0) <= 1e-9);
  CHECK(cost.bb84_qubits == 400.0);

  // Break-even at c = 0.75: n/(1-c) == 4n.
  cost = bb84_cost_comparison(1, 0.75);
  CHECK(std::abs(cost.this_protocol_qubits - 4.0) <= 1e-9);
  CHECK(cost.bb84_qubits == 4.0);

  CHECK(std::isinf(bb84_cost_comparison(10, 1.0).this_protocol_qubits));
  CHECK_THROWS_AS(bb84_cost_comparison(0, 0.5), std::invalid_argument);
}
