#include "qsdc/protocol.hpp"

#include <cmath>
#include <stdexcept>

namespace qsdc::protocol {

namespace {

using adversary::EveGuess;
using adversary::EveMemory;
using adversary::Leg;

/// Runs one Eve leg and appends her events to the transcript.
StateVector eve_leg(const adversary::EveStrategySpec& eve, Leg leg,
                    const StateVector& qubit, EveMemory& memory,
                    RandomStream& rng, long long round_index,
                    std::vector<adversary::EveEvent>& events) {
  auto result = adversary::intervene(eve, leg, qubit, memory, rng);
  for (auto& event : result.events) {
    event.round_index = round_index;
    events.push_back(event);
  }
  if (!result.qubit) {
    // Reserved for blocking strategies; none shipped produce this.
    throw std::logic_error("blocking strategies are not executable");
  }
  return *result.qubit;
}

}  // namespace

const char* to_string(Mode mode) {
  return mode == Mode::Message ? "message" : "control";
}

void ProtocolConfig::validate() const {
  if (!(control_probability >= 0.0 && control_probability <= 1.0)) {
    throw std::invalid_argument("control probability must be in [0, 1]");
  }
  if (message_bits < 1) {
    throw std::invalid_argument("message_bits must be >= 1");
  }
  if (max_rounds != 0 && max_rounds < message_bits) {
    throw std::invalid_argument("max_rounds must be >= message_bits");
  }
}

long long ProtocolConfig::effective_max_rounds() const {
  if (max_rounds > 0) return max_rounds;
  // Expected cost is message_bits / (1 - c); a 20x margin makes a spurious
  // cap hit astronomically unlikely for any c meaningfully below 1.
  const double r = 1.0 - control_probability;
  if (r <= 0.0) return 20 * message_bits + 1000;
  const double expected = static_cast<double>(message_bits) / r;
  return static_cast<long long>(20.0 * expected) + 1000;
}

int decode(StateLabel alice_prep, int alice_outcome) {
  if (alice_prep != StateLabel::Z0 && alice_prep != StateLabel::X0) {
    throw std::invalid_argument("Alice prepares only Z0 or X0");
  }
  return alice_outcome ^ bit_of(alice_prep);
}

RoundRng make_round_rng(std::uint64_t master_seed, long long round_index) {
  const auto idx = static_cast<std::uint64_t>(round_index);
  return RoundRng{
      RandomStream(derive_seed({master_seed, idx, stream_tag::alice})),
      RandomStream(derive_seed({master_seed, idx, stream_tag::bob})),
      RandomStream(derive_seed({master_seed, idx, stream_tag::eve}))};
}

RoundTranscript run_scripted_round(const adversary::EveStrategySpec& eve,
                                   const RoundScript& script,
                                   long long round_index,
                                   RandomStream& alice_rng,
                                   RandomStream& eve_rng,
                                   EveGuess* guess_out) {
  RoundTranscript t;
  t.round_index = round_index;
  t.mode = script.mode;
  t.alice_prep = script.alice_prep;
  t.alice_basis = basis_of(script.alice_prep);

  EveMemory memory;

  // (1)-(2) Alice prepares and sends; Eve may act on A->B.
  StateVector qubit = prepare(script.alice_prep);
  qubit = eve_leg(eve, Leg::AtoB, qubit, memory, eve_rng, round_index,
                  t.eve_events);

  // (4m)/(4c) Bob encodes or substitutes.
  if (script.mode == Mode::Message) {
    const Operator& op = script.bob_bit ? Operator::i_sigma_y()
                                        : Operator::identity();
    qubit = apply(op, qubit);
    t.bob_action.kind = script.bob_bit ? BobAction::Kind::EncodeIY
                                       : BobAction::Kind::EncodeI;
  } else {
    qubit = prepare(script.control_state);  // incoming qubit is discarded
    t.bob_action.kind = BobAction::Kind::ControlSubstitute;
    t.bob_action.substitute = script.control_state;
  }

  // Return leg; Eve may act on B->A.
  qubit = eve_leg(eve, Leg::BtoA, qubit, memory, eve_rng, round_index,
                  t.eve_events);

  // Alice measures in her preparation basis, then announces her receipt.
  const auto m = measure(qubit, basis_spec(t.alice_basis), alice_rng);
  t.alice_outcome = m.outcome;

  if (script.mode == Mode::Message) {
    t.decoded_bit = decode(script.alice_prep, t.alice_outcome);
    if (guess_out) {
      *guess_out = adversary::guess_bob_bit(eve, memory);
      guess_out->round_index = round_index;
    }
  } else {
    // Bob announces the control run and his state only after the receipt.
    t.sifted = t.alice_basis == basis_of(script.control_state);
    t.detected = t.sifted && t.alice_outcome != bit_of(script.control_state);
  }
  return t;
}

RoundTranscript run_round(const ProtocolConfig& config, long long round_index,
                          int bob_pending_bit, RoundRng& rng,
                          EveGuess* guess_out) {
  RoundScript script;
  script.alice_prep = rng.alice.next_bit() ? StateLabel::X0 : StateLabel::Z0;
  script.mode = rng.bob.next_unit() < config.control_probability
                    ? Mode::Control
                    : Mode::Message;
  if (script.mode == Mode::Message) {
    script.bob_bit = bob_pending_bit;
  } else {
    script.control_state =
        static_cast<StateLabel>(rng.bob.next_below(4));
  }
  return run_scripted_round(config.eve, script, round_index, rng.alice,
                            rng.eve, guess_out);
}

SessionResult run_session(const ProtocolConfig& config,
                          const std::vector<int>& message) {
  config.validate();
  if (static_cast<long long>(message.size()) != config.message_bits) {
    throw std::invalid_argument("message length must equal message_bits");
  }

  SessionResult result;
  const long long cap = config.effective_max_rounds();
  long long delivered = 0;
  for (long long round = 0; delivered < config.message_bits; ++round) {
    if (round >= cap) throw MaxRoundsExceeded(cap);

    RoundRng rng = make_round_rng(config.master_seed, round);
    EveGuess guess;
    RoundTranscript t = run_round(config, round, message[delivered], rng, &guess);

    if (t.mode == Mode::Message) {
      result.delivered_bits.push_back({message[delivered], *t.decoded_bit});
      ++delivered;
      if (guess.guessed_bob_bit) result.eve_guesses.push_back(guess);
    }
    const bool detected = t.detected;
    result.transcripts.push_back(std::move(t));
    if (detected) {
      result.aborted = true;
      result.abort_round = round;
      break;
    }
  }
  result.qubits_used = static_cast<long long>(result.transcripts.size());
  return result;
}

SessionResult run_session(const ProtocolConfig& config) {
  config.validate();
  RandomStream bits(derive_seed({config.master_seed, stream_tag::bob_message}));
  std::vector<int> message(static_cast<std::size_t>(config.message_bits));
  for (auto& bit : message) bit = bits.next_bit();
  return run_session(config, message);
}

SessionStats summarize(const SessionResult& result) {
  SessionStats stats;
  stats.aborts = result.aborted ? 1 : 0;
  stats.delivered_bits = static_cast<long long>(result.delivered_bits.size());
  for (const auto& pair : result.delivered_bits) {
    if (pair.bob_bit != pair.alice_bit) ++stats.bit_errors;
  }
  // The k-th message-mode transcript corresponds to delivered_bits[k].
  std::vector<long long> round_to_position;
  long long position = 0;
  for (const auto& t : result.transcripts) {
    if (t.mode == Mode::Message) {
      if (t.round_index >= static_cast<long long>(round_to_position.size())) {
        round_to_position.resize(
            static_cast<std::size_t>(t.round_index) + 1, -1);
      }
      round_to_position[static_cast<std::size_t>(t.round_index)] = position++;
    }
  }
  for (const auto& guess : result.eve_guesses) {
    if (!guess.guessed_bob_bit) continue;
    const auto idx = static_cast<std::size_t>(guess.round_index);
    if (idx >= round_to_position.size() || round_to_position[idx] < 0) continue;
    const auto& pair =
        result.delivered_bits[static_cast<std::size_t>(round_to_position[idx])];
    if (*guess.guessed_bob_bit == pair.bob_bit) ++stats.eve_correct_guesses;
  }
  stats.qubits_used = result.qubits_used;
  return stats;
}

}  // namespace qsdc::protocol
