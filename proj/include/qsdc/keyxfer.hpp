// Key-transfer variant: Bob sends N random bits instead of a message; if the
// session survives, both sides distill an M-bit key with Toeplitz hashing
// over GF(2). Any detection aborts the transfer and discards all material,
// leaving an eavesdropper with nothing but disconnected random bits.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsdc/protocol.hpp"

namespace qsdc::keyxfer {

struct KeySession {
  long long raw_bits = 128;   // N, bits Bob draws
  long long final_bits = 64;  // M <= N, distilled key length
  std::uint64_t toeplitz_seed = 0;

  /// Throws std::invalid_argument unless 1 <= final_bits <= raw_bits.
  void validate() const;
};

enum class KeyStatus { Established, Aborted };

struct KeyOutcome {
  KeyStatus status = KeyStatus::Aborted;
  // Present iff status == Established. Bit vectors of length final_bits.
  std::optional<std::vector<int>> alice_key;
  std::optional<std::vector<int>> bob_key;
};

/// T * raw over GF(2), where T is the final_bits x N Toeplitz matrix whose
/// diagonals are generated from toeplitz_seed. Linear:
/// amplify(a ^ b) = amplify(a) ^ amplify(b). Throws when final_bits exceeds
/// the input length.
std::vector<int> privacy_amplify(const std::vector<int>& raw,
                                 std::uint64_t toeplitz_seed,
                                 long long final_bits);

/// Runs the protocol with Bob's raw_bits random bits as the message. On any
/// detection the outcome is Aborted with no key material; when every bit is
/// delivered both sides hash their raw strings down to final_bits.
/// Propagates MaxRoundsExceeded from the session.
KeyOutcome run_key_transfer(const protocol::ProtocolConfig& config,
                            const KeySession& session);

/// Bits packed MSB-first into lowercase hex; a final partial nibble is
/// zero-padded on the right.
std::string to_hex(const std::vector<int>& bits);

}  // namespace qsdc::keyxfer
