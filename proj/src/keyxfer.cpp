#include "qsdc/keyxfer.hpp"

#include <stdexcept>

#include "qsdc/rng.hpp"

namespace qsdc::keyxfer {

void KeySession::validate() const {
  if (raw_bits < 1) throw std::invalid_argument("raw_bits must be >= 1");
  if (final_bits < 1) throw std::invalid_argument("final_bits must be >= 1");
  if (final_bits > raw_bits) {
    throw std::invalid_argument("final_bits must not exceed raw_bits");
  }
}

std::vector<int> privacy_amplify(const std::vector<int>& raw,
                                 std::uint64_t toeplitz_seed,
                                 long long final_bits) {
  const long long n = static_cast<long long>(raw.size());
  if (final_bits < 1) throw std::invalid_argument("final_bits must be >= 1");
  if (final_bits > n) {
    throw std::invalid_argument("final_bits must not exceed the input length");
  }
  // T[i][j] = t[i - j + n - 1]; one bit per diagonal, m + n - 1 of them.
  RandomStream stream(toeplitz_seed);
  std::vector<int> diagonals(static_cast<std::size_t>(final_bits + n - 1));
  for (auto& bit : diagonals) bit = stream.next_bit();

  std::vector<int> out(static_cast<std::size_t>(final_bits), 0);
  for (long long i = 0; i < final_bits; ++i) {
    int acc = 0;
    for (long long j = 0; j < n; ++j) {
      acc ^= diagonals[static_cast<std::size_t>(i - j + n - 1)] &
             (raw[static_cast<std::size_t>(j)] & 1);
    }
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

KeyOutcome run_key_transfer(const protocol::ProtocolConfig& config,
                            const KeySession& session) {
  session.validate();
  protocol::ProtocolConfig cfg = config;
  cfg.message_bits = session.raw_bits;
  cfg.validate();

  RandomStream bits(derive_seed({cfg.master_seed, stream_tag::bob_message}));
  std::vector<int> bob_raw(static_cast<std::size_t>(session.raw_bits));
  for (auto& bit : bob_raw) bit = bits.next_bit();

  const auto result = protocol::run_session(cfg, bob_raw);
  if (result.aborted) {
    return KeyOutcome{};  // no key material survives an abort
  }

  std::vector<int> alice_raw;
  alice_raw.reserve(result.delivered_bits.size());
  for (const auto& pair : result.delivered_bits) {
    alice_raw.push_back(pair.alice_bit);
  }

  KeyOutcome outcome;
  outcome.status = KeyStatus::Established;
  outcome.bob_key =
      privacy_amplify(bob_raw, session.toeplitz_seed, session.final_bits);
  outcome.alice_key =
      privacy_amplify(alice_raw, session.toeplitz_seed, session.final_bits);
  return outcome;
}

std::string to_hex(const std::vector<int>& bits) {
  static const char* digits = "0123456789abcdef";
  std::string hex;
  hex.reserve((bits.size() + 3) / 4);
  int nibble = 0;
  int filled = 0;
  for (int bit : bits) {
    nibble = (nibble << 1) | (bit & 1);
    if (++filled == 4) {
      hex.push_back(digits[nibble]);
      nibble = 0;
      filled = 0;
    }
  }
  if (filled > 0) {
    nibble <<= (4 - filled);
    hex.push_back(digits[nibble]);
  }
  return hex;
}

}  // namespace qsdc::keyxfer
