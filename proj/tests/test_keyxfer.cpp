#include <cmath>

#include <doctest.h>

#include "qsdc/analysis.hpp"
#include "qsdc/keyxfer.hpp"

using namespace qsdc;
using namespace qsdc::keyxfer;

TEST_CASE("privacy amplification basics") {
  const std::vector<int> zeros(128, 0);
  for (std::uint64_t seed : {1ull, 99ull, 31415ull}) {
    const auto hashed = privacy_amplify(zeros, seed, 64);
    REQUIRE(hashed.size() == 64);
    for (int bit : hashed) CHECK(bit == 0);
  }
  CHECK_THROWS_AS(privacy_amplify(zeros, 1, 129), std::invalid_argument);
  CHECK_THROWS_AS(privacy_amplify(zeros, 1, 0), std::invalid_argument);
}

TEST_CASE("privacy amplification is GF(2)-linear") {
  RandomStream rng(271828);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<int> a(64), b(64), a_xor_b(64);
    for (int j = 0; j < 64; ++j) {
      a[j] = rng.next_bit();
      b[j] = rng.next_bit();
      a_xor_b[j] = a[j] ^ b[j];
    }
    const std::uint64_t seed = rng.next_u64();
    const auto ha = privacy_amplify(a, seed, 32);
    const auto hb = privacy_amplify(b, seed, 32);
    const auto hab = privacy_amplify(a_xor_b, seed, 32);
    for (int j = 0; j < 32; ++j) {
      CHECK((ha[j] ^ hb[j]) == hab[j]);
    }
  }
}

TEST_CASE("a single flipped input bit flips about half the output") {
  // Toeplitz entries are i.i.d. uniform under seed randomization, so each
  // output bit flips with probability exactly 1/2.
  RandomStream rng(161803);
  const long long n_in = 256, n_out = 128;
  long long flips = 0, total = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> raw(n_in);
    for (auto& bit : raw) bit = rng.next_bit();
    const std::uint64_t seed = rng.next_u64();
    const auto before = privacy_amplify(raw, seed, n_out);
    raw[rng.next_below(n_in)] ^= 1;
    const auto after = privacy_amplify(raw, seed, n_out);
    for (long long j = 0; j < n_out; ++j) {
      flips += before[j] != after[j];
      ++total;
    }
  }
  const double freq = static_cast<double>(flips) / static_cast<double>(total);
  CHECK(std::abs(freq - 0.5) <= analysis::binomial_4sigma(0.5, total));
}

TEST_CASE("no-Eve key transfer establishes identical keys") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    protocol::ProtocolConfig config;
    config.control_probability = 0.3;
    config.master_seed = derive_seed({0xFEEDull, seed});
    KeySession session;
    session.raw_bits = 128;
    session.final_bits = 64;
    session.toeplitz_seed = seed * 17 + 1;
    const auto outcome = run_key_transfer(config, session);
    REQUIRE(outcome.status == KeyStatus::Established);
    REQUIRE(outcome.alice_key.has_value());
    REQUIRE(outcome.bob_key.has_value());
    CHECK(outcome.alice_key->size() == 64);
    CHECK(*outcome.alice_key == *outcome.bob_key);
  }
}

TEST_CASE("key transfer is deterministic in the seed") {
  protocol::ProtocolConfig config;
  config.control_probability = 0.2;
  config.master_seed = 99;
  KeySession session;
  session.raw_bits = 64;
  session.final_bits = 32;
  session.toeplitz_seed = 5;
  const auto first = run_key_transfer(config, session);
  const auto second = run_key_transfer(config, session);
  REQUIRE(first.status == KeyStatus::Established);
  CHECK(first.alice_key == second.alice_key);
  CHECK(first.bob_key == second.bob_key);
}

TEST_CASE("attacked transfers abort at the predicted rate") {
  const adversary::EveStrategySpec strategy{
      adversary::EveKind::InterceptResendBA, adversary::BasisPolicy::RandomZX};
  const double d = analysis::enumerate_detection(strategy);
  const long long raw_bits = 32;
  const double p_abort =
      1.0 - std::pow(analysis::survival_one({0.5, d, 1, 1.0}),
                     static_cast<double>(raw_bits));
  const long long trials = 2000;
  long long aborted = 0;
  for (long long t = 0; t < trials; ++t) {
    protocol::ProtocolConfig config;
    config.control_probability = 0.5;
    config.eve = strategy;
    config.master_seed = derive_seed({0xABACull, (std::uint64_t)t});
    KeySession session;
    session.raw_bits = raw_bits;
    session.final_bits = 16;
    session.toeplitz_seed = 3;
    const auto outcome = run_key_transfer(config, session);
    if (outcome.status == KeyStatus::Aborted) {
      ++aborted;
      // Abort hygiene: no key material of any kind.
      CHECK_FALSE(outcome.alice_key.has_value());
      CHECK_FALSE(outcome.bob_key.has_value());
    }
  }
  const double freq = static_cast<double>(aborted) / static_cast<double>(trials);
  CHECK(std::abs(freq - p_abort) <= analysis::binomial_4sigma(p_abort, trials));
}

TEST_CASE("the DoS attack slips past detection but wrecks the key") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    protocol::ProtocolConfig config;
    config.control_probability = 0.3;
    config.eve = adversary::EveStrategySpec::dos_ab();
    config.master_seed = derive_seed({0xD05ull, seed});
    KeySession session;
    session.raw_bits = 128;
    session.final_bits = 64;
    session.toeplitz_seed = 11;
    const auto outcome = run_key_transfer(config, session);
    // Never aborts: the control rounds use Bob's fresh qubits.
    REQUIRE(outcome.status == KeyStatus::Established);
    // P(raw strings agree) = (3/4)^128, far below any plausible flake.
    CHECK(*outcome.alice_key != *outcome.bob_key);
  }
}

TEST_CASE("hex rendering packs bits MSB-first") {
  CHECK(to_hex({1, 0, 1, 0, 1, 1, 1, 1}) == "af");
  CHECK(to_hex({1, 0, 1, 0, 1, 1}) == "ac");  // partial nibble zero-padded
  CHECK(to_hex({}) == "");
  CHECK(to_hex({0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 1}) == "0f1");
}

TEST_CASE("key session validation") {
  KeySession session;
  session.raw_bits = 16;
  session.final_bits = 17;
  CHECK_THROWS_AS(session.validate(), std::invalid_argument);
  session.final_bits = 0;
  CHECK_THROWS_AS(session.validate(), std::invalid_argument);
  session.raw_bits = 0;
  session.final_bits = 0;
  CHECK_THROWS_AS(session.validate(), std::invalid_argument);
}
