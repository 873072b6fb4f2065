#include "qsdc/transcript_json.hpp"

#include <ostream>

namespace qsdc::protocol {

using nlohmann::ordered_json;

ordered_json to_json(const adversary::EveEvent& event) {
  ordered_json j;
  j["round_index"] = event.round_index;
  j["leg"] = adversary::to_string(event.leg);
  switch (event.action) {
    case adversary::EveEvent::Action::Measured:
      j["action"] = "measured";
      j["basis"] = adversary::to_string(event.basis);
      j["outcome"] = event.outcome;
      break;
    case adversary::EveEvent::Action::Resent:
      j["action"] = "resent";
      j["state"] = adversary::eigenstate_name(event.basis, event.outcome);
      break;
    case adversary::EveEvent::Action::Blocked:
      j["action"] = "blocked";
      break;
  }
  return j;
}

namespace {

std::string bob_action_string(const BobAction& action) {
  switch (action.kind) {
    case BobAction::Kind::EncodeI:
      return "encode_i";
    case BobAction::Kind::EncodeIY:
      return "encode_iy";
    case BobAction::Kind::ControlSubstitute:
      return std::string("substitute_") + to_string(action.substitute);
  }
  return "?";
}

}  // namespace

ordered_json to_json(const RoundTranscript& t) {
  ordered_json j;
  j["round_index"] = t.round_index;
  j["mode"] = to_string(t.mode);
  j["alice_prep"] = to_string(t.alice_prep);
  j["bob_action"] = bob_action_string(t.bob_action);
  j["eve_events"] = ordered_json::array();
  for (const auto& event : t.eve_events) {
    j["eve_events"].push_back(to_json(event));
  }
  j["alice_outcome"] = t.alice_outcome;
  j["alice_basis"] = to_string(t.alice_basis);
  j["sifted"] = t.sifted;
  j["detected"] = t.detected;
  if (t.decoded_bit) {
    j["decoded_bit"] = *t.decoded_bit;
  }
  return j;
}

ordered_json to_json(const SessionStats& stats) {
  ordered_json j;
  j["aborts"] = stats.aborts;
  j["delivered_bits"] = stats.delivered_bits;
  j["bit_errors"] = stats.bit_errors;
  j["eve_correct_guesses"] = stats.eve_correct_guesses;
  j["qubits_used"] = stats.qubits_used;
  return j;
}

std::string to_json_line(const RoundTranscript& transcript) {
  return to_json(transcript).dump();
}

std::string to_json_line(const SessionStats& stats) {
  return to_json(stats).dump();
}

void write_session_jsonl(const SessionResult& result, std::ostream& out) {
  for (const auto& transcript : result.transcripts) {
    out << to_json_line(transcript) << '\n';
  }
  out << to_json_line(summarize(result)) << '\n';
}

}  // namespace qsdc::protocol
