// The two-party protocol: Alice prepares |0> or |φ0> and sends the qubit;
// Bob either encodes a bit with I / i sigma_y (message mode) or substitutes
// a fresh random BB84 state (control mode, probability c); the qubit returns
// to Alice, who measures in her preparation basis. In a sifted control round
// a flipped outcome exposes Eve and aborts the session.
//
// Round choreography (public channel modeled as ideal, ordered, in-memory):
// Alice announces her receipt after measuring; only then does Bob announce
// whether the round was a control run and which state he prepared. The
// sequential executor realizes exactly that ordering.
//
// Randomness: each round uses three independent streams seeded by
// derive_seed({master_seed, round_index, party_tag}) for Alice, Bob and Eve,
// so transcripts are bit-reproducible and per-party draw counts cannot
// perturb one another. Draw order within a round:
//   Alice: preparation bit, then the measurement variate.
//   Bob:   mode variate, then (control only) the substitute-state index.
//   Eve:   per leg, optional basis bit, then the measurement variate.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qsdc/adversary.hpp"
#include "qsdc/qstate.hpp"
#include "qsdc/rng.hpp"

namespace qsdc::protocol {

enum class Mode { Message, Control };

const char* to_string(Mode mode);

struct ProtocolConfig {
  double control_probability = 0.1;  // c
  long long message_bits = 1;        // n
  std::uint64_t master_seed = 0;
  adversary::EveStrategySpec eve{};
  // Hard cap on executed rounds; 0 derives a generous cap from c and n.
  long long max_rounds = 0;

  /// Throws std::invalid_argument on out-of-domain fields.
  void validate() const;

  long long effective_max_rounds() const;
};

struct BobAction {
  enum class Kind { EncodeI, EncodeIY, ControlSubstitute };
  Kind kind = Kind::EncodeI;
  StateLabel substitute = StateLabel::Z0;  // ControlSubstitute only
};

struct RoundTranscript {
  long long round_index = 0;
  Mode mode = Mode::Message;
  StateLabel alice_prep = StateLabel::Z0;  // Z0 or X0
  BobAction bob_action;
  std::vector<adversary::EveEvent> eve_events;
  int alice_outcome = 0;
  BasisLabel alice_basis = BasisLabel::Z;
  bool sifted = false;    // control mode: Alice's basis matched Bob's
  bool detected = false;  // implies mode == Control and sifted
  std::optional<int> decoded_bit;  // present iff mode == Message
};

struct DeliveredBit {
  int bob_bit;
  int alice_bit;
};

struct SessionResult {
  std::vector<RoundTranscript> transcripts;
  bool aborted = false;
  std::optional<long long> abort_round;
  std::vector<DeliveredBit> delivered_bits;
  long long qubits_used = 0;  // travel-qubit round trips == rounds executed
  std::vector<adversary::EveGuess> eve_guesses;  // message rounds only
};

/// Aggregate counters over one session.
struct SessionStats {
  long long aborts = 0;
  long long delivered_bits = 0;
  long long bit_errors = 0;
  long long eve_correct_guesses = 0;
  long long qubits_used = 0;
};

SessionStats summarize(const SessionResult& result);

class MaxRoundsExceeded : public std::runtime_error {
 public:
  explicit MaxRoundsExceeded(long long cap)
      : std::runtime_error("round cap reached before all message bits were "
                           "delivered (cap " +
                           std::to_string(cap) +
                           "); control probability too close to 1 or cap too "
                           "small") {}
};

/// Decoded message bit from Alice's measurement: 0 when the outcome is the
/// state she prepared, 1 when it is the orthogonal partner. alice_prep must
/// be Z0 or X0.
int decode(StateLabel alice_prep, int alice_outcome);

/// Per-party streams for one round.
struct RoundRng {
  RandomStream alice;
  RandomStream bob;
  RandomStream eve;
};

RoundRng make_round_rng(std::uint64_t master_seed, long long round_index);

/// Choices that run_round normally draws; exposed so tests can pin them.
struct RoundScript {
  StateLabel alice_prep = StateLabel::Z0;  // Z0 or X0
  Mode mode = Mode::Message;
  int bob_bit = 0;                              // message mode
  StateLabel control_state = StateLabel::Z0;    // control mode
};

/// One full round with pre-resolved Alice/Bob choices. Measurement and Eve
/// randomness still come from the supplied streams. round_index only labels
/// the transcript. guess_out, when non-null, receives Eve's guess in message
/// rounds.
RoundTranscript run_scripted_round(const adversary::EveStrategySpec& eve,
                                   const RoundScript& script,
                                   long long round_index,
                                   RandomStream& alice_rng,
                                   RandomStream& eve_rng,
                                   adversary::EveGuess* guess_out = nullptr);

/// One protocol round: draws Alice's preparation and Bob's mode (and, in
/// control mode, his substitute state), then executes the round.
/// bob_pending_bit is the bit Bob encodes if the round turns out to be a
/// message round.
RoundTranscript run_round(const ProtocolConfig& config, long long round_index,
                          int bob_pending_bit, RoundRng& rng,
                          adversary::EveGuess* guess_out = nullptr);

/// Runs rounds until message.size() bits are delivered, detection aborts the
/// session, or the round cap is hit (throws MaxRoundsExceeded). Control
/// rounds consume no message bits; the k-th message round carries bit k.
SessionResult run_session(const ProtocolConfig& config,
                          const std::vector<int>& message);

/// Same, with Bob's bits drawn from the stream derived from
/// (master_seed, bob_message tag).
SessionResult run_session(const ProtocolConfig& config);

}  // namespace qsdc::protocol
