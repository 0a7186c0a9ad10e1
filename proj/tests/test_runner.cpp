#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <set>

#include "json.hpp"
#include "pgg/errors.hpp"
#include "pgg/runner.hpp"
#include "testutil.hpp"

using namespace pgg;
using nlohmann::json;

namespace {

RunContext mock_context(Gateway& gateway, int parallelism = 1) {
  RunContext ctx;
  ctx.gateway = &gateway;
  ctx.master_seed = 42;
  ctx.parallelism = parallelism;
  return ctx;
}

std::vector<std::string> batch_as_lines(const BatchResult& batch) {
  std::vector<std::string> lines;
  for (std::size_t i = 0; i < batch.transcripts.size(); ++i) {
    lines.push_back(transcript_to_json(batch.transcripts[i], batch.cell, static_cast<int>(i)));
  }
  return lines;
}

}  // namespace

TEST_CASE("pairwise studies enumerate 9 ordered pairings under both conditions") {
  auto specs = std::vector<AgentSpec>{testutil::mock_llm_spec(), testutil::mock_llm_spec()};
  auto cells = enumerate_conditions(StudyStyle::Study1, specs);
  REQUIRE(cells.size() == 18);

  // row-major over C, N, S for both seats; no-name before name per pairing
  std::vector<std::string> expected_order = {
      "CC", "CC", "CN", "CN", "CS", "CS", "NC", "NC", "NN", "NN", "NS", "NS",
      "SC", "SC", "SN", "SN", "SS", "SS"};
  for (std::size_t i = 0; i < cells.size(); ++i) {
    CHECK(cells[i].pairing_label() == expected_order[i]);
    CHECK(cells[i].condition == (i % 2 == 0 ? Condition::NoName : Condition::Name));
    CHECK(cells[i].games == 100);
    CHECK(cells[i].agent_specs.size() == 2);
  }
  CHECK(cells[0].label() == "study1_CC_noname");
  CHECK(cells[5].label() == "study1_CS_name");

  // labels are unique across the grid
  std::set<std::string> labels;
  for (const auto& cell : cells) labels.insert(cell.label());
  CHECK(labels.size() == 18);
}

TEST_CASE("self-play enumerates one pairing per persona") {
  auto cells = enumerate_conditions(StudyStyle::Study3, {testutil::mock_llm_spec()});
  REQUIRE(cells.size() == 6);
  std::vector<std::string> expected = {"C", "C", "N", "N", "S", "S"};
  for (std::size_t i = 0; i < cells.size(); ++i) {
    CHECK(cells[i].pairing_label() == expected[i]);
    CHECK(cells[i].games == 50);
    CHECK(cells[i].agent_specs.size() == 4);  // the lone spec is replicated
    CHECK(cells[i].personas.size() == 4);
  }
  CHECK(cells[1].label() == "study3_C_name");

  // four identical specs are also accepted
  std::vector<AgentSpec> four(4, testutil::mock_llm_spec());
  CHECK(enumerate_conditions(StudyStyle::Study3, four).size() == 6);
}

TEST_CASE("enumeration rejects mismatched spec counts") {
  CHECK_THROWS_AS(enumerate_conditions(StudyStyle::Study1, {testutil::mock_llm_spec()}),
                  ConfigError);
  CHECK_THROWS_AS(enumerate_conditions(StudyStyle::Study3,
                                       {testutil::mock_llm_spec(), testutil::mock_llm_spec()}),
                  ConfigError);
  std::vector<AgentSpec> mixed(4, testutil::mock_llm_spec());
  mixed[3] = AgentSpec{ScriptedSpec{StrategyId::Defector, 0}};
  CHECK_THROWS_AS(enumerate_conditions(StudyStyle::Study3, mixed), ConfigError);
  CHECK_THROWS_AS(enumerate_conditions(StudyStyle::Study1, {testutil::mock_llm_spec(),
                                                            testutil::mock_llm_spec()},
                                       -3),
                  ConfigError);
}

TEST_CASE("explicit game counts override the study default") {
  auto cells = enumerate_conditions(
      StudyStyle::Study2, {testutil::mock_llm_spec(), testutil::mock_llm_spec()}, 7);
  REQUIRE(cells.size() == 18);
  for (const auto& cell : cells) CHECK(cell.games == 7);
}

TEST_CASE("batches reproduce exactly regardless of parallelism") {
  auto transport = std::make_shared<MockTransport>();
  Gateway gateway(transport, TransportPolicy{});

  auto cells = enumerate_conditions(
      StudyStyle::Study1, {testutil::mock_llm_spec(), testutil::mock_llm_spec()}, 6);
  const ConditionCell& cell = cells[5];  // study1_CS_name

  auto serial_ctx = mock_context(gateway, 1);
  auto parallel_ctx = mock_context(gateway, 8);
  BatchResult serial = run_batch(cell, serial_ctx);
  BatchResult parallel = run_batch(cell, parallel_ctx);

  REQUIRE(serial.transcripts.size() == 6);
  CHECK(batch_as_lines(serial) == batch_as_lines(parallel));
  CHECK(serial.invalid_count == 0);

  // per-game seeds are the derived ones, so single games replay in isolation
  for (std::size_t i = 0; i < serial.transcripts.size(); ++i) {
    CHECK(serial.transcripts[i].game_seed == derive_seed(42, static_cast<int>(i)));
    CHECK(serial.transcripts[i].game_index == static_cast<int>(i));
  }
}

TEST_CASE("scripted cells run without any gateway") {
  auto cells = enumerate_conditions(
      StudyStyle::Study1,
      {AgentSpec{ScriptedSpec{StrategyId::AlwaysContribute, 10}},
       AgentSpec{ScriptedSpec{StrategyId::Defector, 0}}},
      3);
  RunContext ctx;
  ctx.master_seed = 9;
  BatchResult batch = run_batch(cells[0], ctx);
  REQUIRE(batch.transcripts.size() == 3);
  for (const auto& t : batch.transcripts) {
    CHECK(t.valid);
    for (const auto& round : t.rounds) CHECK(round.contributions == std::vector<int>{10, 0});
  }
}

TEST_CASE("transcripts round-trip through json byte for byte") {
  auto transport = std::make_shared<MockTransport>();
  Gateway gateway(transport, TransportPolicy{});
  auto cells = enumerate_conditions(
      StudyStyle::Study1, {testutil::mock_llm_spec(), testutil::mock_llm_spec()}, 2);
  auto ctx = mock_context(gateway);
  BatchResult batch = run_batch(cells[1], ctx);  // a name-condition cell

  for (std::size_t i = 0; i < batch.transcripts.size(); ++i) {
    std::string line = transcript_to_json(batch.transcripts[i], batch.cell, static_cast<int>(i));
    ConditionCell cell_back;
    GameTranscript back = transcript_from_json(line, &cell_back);
    CHECK(transcript_to_json(back, cell_back, static_cast<int>(i)) == line);
    CHECK(cell_back.label() == batch.cell.label());
  }
}

TEST_CASE("the transcript schema is explicit about its key order") {
  auto cells = enumerate_conditions(
      StudyStyle::Study1,
      {AgentSpec{ScriptedSpec{StrategyId::AlwaysContribute, 8}},
       AgentSpec{ScriptedSpec{StrategyId::AlwaysContribute, 2}}},
      1);
  RunContext ctx;
  BatchResult batch = run_batch(cells[0], ctx);
  std::string line = transcript_to_json(batch.transcripts[0], batch.cell, 0);

  CHECK(line.rfind("{\"schema_version\":1,\"cell\":", 0) == 0);
  auto parsed = json::parse(line);
  CHECK(parsed["cell"]["study"] == "study1");
  CHECK(parsed["cell"]["pairing"] == "CC");
  CHECK(parsed["cell"]["condition"] == "noname");
  CHECK(parsed["config"]["multiplier"] == "1.6");
  CHECK(parsed["rounds"][0]["contributions"] == json::array({8, 2}));
  // the worked example: 8 vs 2 pays 10.0 vs 16.0
  CHECK(parsed["rounds"][0]["gains"] == json::array({"10.0", "16.0"}));
  CHECK(parsed["rounds"][19]["cumulative"][0] == "200.0");
  CHECK(parsed["rounds"][19]["cumulative"][1] == "320.0");
  CHECK(parsed["valid"] == true);
  CHECK(parsed["agents"][0]["display_name"] == "AlwaysContribute(8)");
}

TEST_CASE("persisted batches load back identically") {
  auto dir = testutil::scratch_dir("runner_persist");
  auto transport = std::make_shared<MockTransport>();
  Gateway gateway(transport, TransportPolicy{});
  auto cells = enumerate_conditions(
      StudyStyle::Study1, {testutil::mock_llm_spec(), testutil::mock_llm_spec()}, 3);
  auto ctx = mock_context(gateway);
  BatchResult batch = run_batch(cells[4], ctx);

  auto path = dir / (batch.cell.label() + ".jsonl");
  persist_transcripts(batch, path);
  BatchResult loaded = load_transcripts(path);

  CHECK(loaded.cell.label() == batch.cell.label());
  CHECK(loaded.invalid_count == batch.invalid_count);
  CHECK(batch_as_lines(loaded) == batch_as_lines(batch));

  // writing the loaded batch again produces the identical file
  auto path2 = dir / "again.jsonl";
  persist_transcripts(loaded, path2);
  CHECK(testutil::read_file(path) == testutil::read_file(path2));
}

TEST_CASE("a corrupt line reports its position") {
  auto dir = testutil::scratch_dir("runner_corrupt");
  auto transport = std::make_shared<MockTransport>();
  Gateway gateway(transport, TransportPolicy{});
  auto cells = enumerate_conditions(
      StudyStyle::Study1, {testutil::mock_llm_spec(), testutil::mock_llm_spec()}, 2);
  auto ctx = mock_context(gateway);
  BatchResult batch = run_batch(cells[0], ctx);
  auto path = dir / "cell.jsonl";
  persist_transcripts(batch, path);

  auto lines = batch_as_lines(batch);
  std::ofstream out(path, std::ios::binary);
  out << lines[0] << "\n" << "{ definitely not json\n";
  out.close();

  try {
    load_transcripts(path);
    FAIL("expected a corrupt line error");
  } catch (const CorruptLineError& e) {
    CHECK(e.line_number() == 2);
  }
}

TEST_CASE("foreign schema versions are refused") {
  auto dir = testutil::scratch_dir("runner_schema");
  auto transport = std::make_shared<MockTransport>();
  Gateway gateway(transport, TransportPolicy{});
  auto cells = enumerate_conditions(
      StudyStyle::Study1, {testutil::mock_llm_spec(), testutil::mock_llm_spec()}, 1);
  auto ctx = mock_context(gateway);
  BatchResult batch = run_batch(cells[0], ctx);

  auto line = batch_as_lines(batch)[0];
  auto pos = line.find("\"schema_version\":1");
  REQUIRE(pos != std::string::npos);
  line.replace(pos, std::string("\"schema_version\":1").size(), "\"schema_version\":99");
  auto path = dir / "cell.jsonl";
  std::ofstream(path, std::ios::binary) << line << "\n";

  CHECK_THROWS_AS(load_transcripts(path), SchemaVersionMismatchError);
}

TEST_CASE("prompt hygiene holds for every condition the mock can play") {
  auto transport = std::make_shared<MockTransport>();
  Gateway gateway(transport, TransportPolicy{});
  for (StudyStyle study : {StudyStyle::Study1, StudyStyle::Study3}) {
    std::vector<AgentSpec> specs(study == StudyStyle::Study3 ? 1 : 2, testutil::mock_llm_spec());
    auto cells = enumerate_conditions(study, specs, 1);
    auto ctx = mock_context(gateway);
    for (const auto& cell : cells) {
      BatchResult batch = run_batch(cell, ctx);
      for (const auto& t : batch.transcripts) CHECK_NOTHROW(check_prompt_conditions(t));
    }
  }
}

TEST_CASE("prompt hygiene catches a leaked name in the no-name condition") {
  auto transport = std::make_shared<MockTransport>();
  Gateway gateway(transport, TransportPolicy{});
  auto cells = enumerate_conditions(
      StudyStyle::Study1, {testutil::mock_llm_spec(), testutil::mock_llm_spec()}, 1);
  auto ctx = mock_context(gateway);
  BatchResult batch = run_batch(cells[0], ctx);  // noname cell
  GameTranscript t = batch.transcripts[0];
  REQUIRE_FALSE(t.exchanges.empty());

  SUBCASE("display name leaks into a no-name system prompt") {
    t.exchanges[0].system_prompt += " You are facing GPT-4o.";
    CHECK_THROWS_AS(check_prompt_conditions(t), ValidationError);
  }
  SUBCASE("anonymous phrase goes missing") {
    auto& prompt = t.exchanges[0].system_prompt;
    auto pos = prompt.find("one other AI agent");
    REQUIRE(pos != std::string::npos);
    prompt.replace(pos, std::string("one other AI agent").size(), "someone");
    CHECK_THROWS_AS(check_prompt_conditions(t), ValidationError);
  }
}

TEST_CASE("prompt hygiene in the name condition is per player") {
  auto transport = std::make_shared<MockTransport>();
  Gateway gateway(transport, TransportPolicy{});
  // Two different display names facing each other: each prompt must name its
  // own player and never the other one.
  std::vector<AgentSpec> specs = {testutil::mock_llm_spec("GPT-4o"),
                                  AgentSpec{LlmSpec{"openai", "gpt-4o", "Qwen3", 1.0}}};
  auto cells = enumerate_conditions(StudyStyle::Study1, specs, 1);
  auto ctx = mock_context(gateway);
  BatchResult batch = run_batch(cells[1], ctx);  // name cell
  GameTranscript good = batch.transcripts[0];
  CHECK_NOTHROW(check_prompt_conditions(good));

  GameTranscript bad = good;
  std::swap(bad.exchanges[0].system_prompt, bad.exchanges[1].system_prompt);
  CHECK_THROWS_AS(check_prompt_conditions(bad), ValidationError);
}

TEST_CASE("invalid games are counted but kept") {
  // Script: player 0's round-1 decision works for game 0, then the well runs
  // dry and every later attempt fails hard.
  std::vector<ScriptedTransport::Step> steps;
  for (int i = 0; i < 2; ++i) {  // both players, game 0, round 1 of 1
    steps.push_back(std::string(R"({"reasoning": "ok", "contribution": 5})"));
  }
  steps.push_back(GatewayError(GatewayErrorKind::Auth, "expired", 401, false));
  auto transport = std::make_shared<ScriptedTransport>(steps);
  Gateway gateway(transport, TransportPolicy{});

  auto cells = enumerate_conditions(
      StudyStyle::Study1, {testutil::mock_llm_spec(), testutil::mock_llm_spec()}, 2);
  ConditionCell cell = cells[0];
  RunContext ctx;
  ctx.gateway = &gateway;
  ctx.num_rounds = 1;
  BatchResult batch = run_batch(cell, ctx);

  REQUIRE(batch.transcripts.size() == 2);
  CHECK(batch.transcripts[0].valid);
  CHECK_FALSE(batch.transcripts[1].valid);
  CHECK(batch.invalid_count == 1);
  CHECK(batch.transcripts[1].abort_reason.find("player 0 failed in round 1") == 0);

  // invalid transcripts persist alongside valid ones
  auto dir = testutil::scratch_dir("runner_invalid");
  auto path = dir / "cell.jsonl";
  persist_transcripts(batch, path);
  BatchResult loaded = load_transcripts(path);
  CHECK(loaded.invalid_count == 1);
  CHECK_FALSE(loaded.transcripts[1].valid);
}
