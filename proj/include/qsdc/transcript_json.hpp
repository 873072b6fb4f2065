// Line-delimited JSON serialization of round transcripts and session
// summaries. Keys are lowercase snake_case, enums are strings, and every
// value is an integer, boolean or string, so output is byte-stable.

#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "qsdc/protocol.hpp"

namespace qsdc::protocol {

nlohmann::ordered_json to_json(const adversary::EveEvent& event);
nlohmann::ordered_json to_json(const RoundTranscript& transcript);
nlohmann::ordered_json to_json(const SessionStats& stats);

std::string to_json_line(const RoundTranscript& transcript);
std::string to_json_line(const SessionStats& stats);

/// One JSON object per round, then the SessionStats summary object.
void write_session_jsonl(const SessionResult& result, std::ostream& out);

}  // namespace qsdc::protocol
