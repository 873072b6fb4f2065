#include <fstream>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "qsdc/protocol.hpp"
#include "qsdc/transcript_json.hpp"

using namespace qsdc;
using namespace qsdc::protocol;
using nlohmann::json;

namespace {

RoundTranscript scripted(const adversary::EveStrategySpec& eve,
                         const RoundScript& script, long long round = 0) {
  RandomStream alice(1), eve_rng(2);
  return run_scripted_round(eve, script, round, alice, eve_rng);
}

}  // namespace

TEST_CASE("message-round JSON carries the full schema") {
  RoundScript script;
  script.alice_prep = StateLabel::Z0;
  script.mode = Mode::Message;
  script.bob_bit = 1;
  const auto line =
      to_json_line(scripted(adversary::EveStrategySpec::none(), script, 3));
  const json j = json::parse(line);

  CHECK(j["round_index"] == 3);
  CHECK(j["mode"] == "message");
  CHECK(j["alice_prep"] == "z0");
  CHECK(j["bob_action"] == "encode_iy");
  CHECK(j["eve_events"].is_array());
  CHECK(j["eve_events"].empty());
  CHECK(j["alice_outcome"] == 1);
  CHECK(j["alice_basis"] == "z");
  CHECK(j["sifted"] == false);
  CHECK(j["detected"] == false);
  CHECK(j["decoded_bit"] == 1);
}

TEST_CASE("control-round JSON omits the decoded bit") {
  RoundScript script;
  script.alice_prep = StateLabel::X0;
  script.mode = Mode::Control;
  script.control_state = StateLabel::Z1;
  const auto j = to_json(scripted(adversary::EveStrategySpec::none(), script));

  CHECK(j["mode"] == "control");
  CHECK(j["bob_action"] == "substitute_z1");
  CHECK(j["alice_basis"] == "x");
  CHECK(j["sifted"] == false);  // Z state, X measurement
  CHECK(j["detected"] == false);
  CHECK_FALSE(j.contains("decoded_bit"));
}

TEST_CASE("eve events serialize as measured/resent records") {
  RoundScript script;
  script.alice_prep = StateLabel::X0;
  script.mode = Mode::Message;
  script.bob_bit = 0;
  const adversary::EveStrategySpec eve{adversary::EveKind::InterceptResendBoth,
                                       adversary::BasisPolicy::FixedZ};
  const auto j = to_json(scripted(eve, script, 9));

  REQUIRE(j["eve_events"].size() == 4);  // measure+resend on each leg
  const auto& first = j["eve_events"][0];
  CHECK(first["round_index"] == 9);
  CHECK(first["leg"] == "a_to_b");
  CHECK(first["action"] == "measured");
  CHECK(first["basis"] == "z");
  CHECK((first["outcome"] == 0 || first["outcome"] == 1));
  const auto& second = j["eve_events"][1];
  CHECK(second["action"] == "resent");
  const std::string state = second["state"];
  CHECK((state == "z0" || state == "z1"));
  CHECK(j["eve_events"][2]["leg"] == "b_to_a");
}

TEST_CASE("stats object uses the aggregate counter names") {
  ProtocolConfig config;
  config.control_probability = 0.0;
  config.message_bits = 4;
  config.master_seed = 21;
  const auto result = run_session(config, {1, 1, 0, 1});
  const auto j = to_json(summarize(result));
  CHECK(j["aborts"] == 0);
  CHECK(j["delivered_bits"] == 4);
  CHECK(j["bit_errors"] == 0);
  CHECK(j["eve_correct_guesses"] == 0);
  CHECK(j["qubits_used"] == 4);
}

TEST_CASE("session stream matches the golden transcript") {
  ProtocolConfig config;
  config.control_probability = 0.3;
  config.message_bits = 6;
  config.master_seed = 7;
  config.eve = {adversary::EveKind::InterceptResendBoth,
                adversary::BasisPolicy::RandomZX};
  std::ostringstream out;
  write_session_jsonl(run_session(config), out);

  std::ifstream golden(std::string(QSDC_GOLDEN_DIR) +
                       "/session_c30_seed7.jsonl");
  REQUIRE(golden.good());
  std::ostringstream expected;
  expected << golden.rdbuf();
  CHECK(out.str() == expected.str());
}
