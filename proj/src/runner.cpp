#include "pgg/runner.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "json.hpp"
#include "pgg/errors.hpp"
#include "pgg/prompts.hpp"
#include "pgg/rng.hpp"

namespace pgg {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::array<Persona, 3> kPersonaOrder = {Persona::Collective, Persona::Neutral,
                                                 Persona::Selfish};

bool contains_ci(const std::string& haystack, const std::string& needle) {
  if (needle.empty()) return false;
  auto lower = [](std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
  };
  return lower(haystack).find(lower(needle)) != std::string::npos;
}

}  // namespace

std::string ConditionCell::pairing_label() const {
  if (study == StudyStyle::Study3) {
    return std::string(1, persona_letter(personas.front()));
  }
  std::string label;
  for (Persona p : personas) label += persona_letter(p);
  return label;
}

std::string ConditionCell::label() const {
  return std::string(to_string(study)) + "_" + pairing_label() + "_" + to_string(condition);
}

std::vector<ConditionCell> enumerate_conditions(StudyStyle study,
                                                const std::vector<AgentSpec>& base_specs,
                                                int games) {
  if (games < 0) throw ConfigError("games must not be negative");
  int batch = games == 0 ? default_games_for_study(study) : games;

  std::vector<AgentSpec> specs = base_specs;
  if (study == StudyStyle::Study3) {
    if (specs.size() == 1) {
      specs.assign(4, specs.front());
    }
    if (specs.size() != 4) {
      throw ConfigError("study3 needs 1 agent spec (replicated) or 4, got " +
                        std::to_string(base_specs.size()));
    }
    for (const auto& s : specs) {
      if (!(s == specs.front())) {
        throw ConfigError("study3 plays identical copies; agent specs must all match");
      }
    }
  } else if (specs.size() != 2) {
    throw ConfigError(std::string(to_string(study)) + " needs exactly 2 agent specs, got " +
                      std::to_string(base_specs.size()));
  }

  std::vector<ConditionCell> cells;
  if (study == StudyStyle::Study3) {
    for (Persona p : kPersonaOrder) {
      for (Condition c : {Condition::NoName, Condition::Name}) {
        cells.push_back({study, std::vector<Persona>(4, p), c, specs, batch});
      }
    }
  } else {
    for (Persona a : kPersonaOrder) {
      for (Persona b : kPersonaOrder) {
        for (Condition c : {Condition::NoName, Condition::Name}) {
          cells.push_back({study, {a, b}, c, specs, batch});
        }
      }
    }
  }
  return cells;
}

void check_prompt_conditions(const GameTranscript& transcript) {
  const auto& names = transcript.display_names;
  for (std::size_t i = 0; i < transcript.exchanges.size(); ++i) {
    const std::string& prompt = transcript.exchanges[i].system_prompt;
    if (prompt.empty()) continue;  // scripted player
    if (transcript.config.condition == Condition::Name) {
      if (!contains_ci(prompt, names[i])) {
        throw ValidationError("name-condition system prompt for player " + std::to_string(i) +
                              " does not mention its display name '" + names[i] + "'");
      }
      for (std::size_t j = 0; j < names.size(); ++j) {
        if (j == i || names[j] == names[i]) continue;
        if (contains_ci(prompt, names[j])) {
          throw ValidationError("system prompt for player " + std::to_string(i) +
                                " leaks another player's display name '" + names[j] + "'");
        }
      }
    } else {
      if (!contains_ci(prompt, noname_phrase(transcript.config.study_style))) {
        throw ValidationError("noname-condition system prompt for player " + std::to_string(i) +
                              " lacks the study's anonymous phrase");
      }
      for (std::size_t j = 0; j < names.size(); ++j) {
        if (transcript.exchanges[j].system_prompt.empty()) continue;
        if (contains_ci(prompt, names[j])) {
          throw ValidationError("noname-condition system prompt for player " + std::to_string(i) +
                                " leaks display name '" + names[j] + "'");
        }
      }
    }
  }
}

BatchResult run_batch(const ConditionCell& cell, const RunContext& ctx) {
  if (cell.games < 1) throw ConfigError("cell '" + cell.label() + "' has no games to run");
  if (static_cast<int>(cell.agent_specs.size()) != players_for_study(cell.study)) {
    throw ConfigError("cell '" + cell.label() + "' needs " +
                      std::to_string(players_for_study(cell.study)) + " agent specs");
  }
  bool any_llm = std::any_of(cell.agent_specs.begin(), cell.agent_specs.end(),
                             [](const AgentSpec& s) { return !s.scripted(); });
  if (any_llm && !ctx.gateway) {
    throw ConfigError("cell '" + cell.label() + "' has llm agents but no gateway");
  }
  if (ctx.parallelism < 1) throw ConfigError("parallelism must be at least 1");

  GameConfig config;
  config.num_players = players_for_study(cell.study);
  config.num_rounds = ctx.num_rounds;
  config.endowment = ctx.endowment;
  config.multiplier_tenths = ctx.multiplier_tenths;
  config.condition = cell.condition;
  config.personas = cell.personas;
  config.study_style = cell.study;
  config.games = cell.games;
  config.seed = ctx.master_seed;
  config.validate();

  auto run_one = [&](int index) {
    std::uint64_t game_seed = derive_seed(ctx.master_seed, static_cast<std::uint64_t>(index));
    std::vector<std::unique_ptr<Agent>> agents;
    for (int p = 0; p < config.num_players; ++p) {
      agents.push_back(make_agent(cell.agent_specs[p], cell.personas[p], config, game_seed, p,
                                  ctx.gateway, ctx.edition));
    }
    GameTranscript t = play_game(config, agents, game_seed);
    t.game_index = index;
    check_prompt_conditions(t);
    return t;
  };

  BatchResult result;
  result.cell = cell;
  result.transcripts.resize(cell.games);

  if (ctx.parallelism == 1) {
    for (int i = 0; i < cell.games; ++i) result.transcripts[i] = run_one(i);
  } else {
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= cell.games) return;
        try {
          result.transcripts[i] = run_one(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          next.store(cell.games);  // drain remaining work
          return;
        }
      }
    };
    std::vector<std::thread> threads;
    int workers = std::min(ctx.parallelism, cell.games);
    threads.reserve(workers);
    for (int w = 0; w < workers; ++w) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  for (const auto& t : result.transcripts) {
    if (!t.valid) ++result.invalid_count;
  }
  return result;
}

namespace {

ordered_json points_array(const std::vector<Points>& points) {
  ordered_json arr = ordered_json::array();
  for (Points p : points) arr.push_back(p.str());
  return arr;
}

std::vector<Points> points_from_array(const json& arr) {
  std::vector<Points> out;
  for (const auto& v : arr) {
    out.push_back(Points::from_tenths(parse_tenths(v.get<std::string>())));
  }
  return out;
}

}  // namespace

std::string transcript_to_json(const GameTranscript& t, const ConditionCell& cell,
                               int game_index) {
  ordered_json j;
  j["schema_version"] = kTranscriptSchemaVersion;
  j["cell"] = {{"study", to_string(cell.study)},
               {"pairing", cell.pairing_label()},
               {"condition", to_string(cell.condition)}};
  ordered_json personas = ordered_json::array();
  for (Persona p : t.config.personas) personas.push_back(to_string(p));
  j["config"] = {{"num_players", t.config.num_players},
                 {"num_rounds", t.config.num_rounds},
                 {"endowment", t.config.endowment},
                 {"multiplier", format_tenths(t.config.multiplier_tenths)},
                 {"personas", std::move(personas)}};
  ordered_json agents = ordered_json::array();
  for (std::size_t i = 0; i < t.agent_ids.size(); ++i) {
    agents.push_back({{"id", t.agent_ids[i]}, {"display_name", t.display_names[i]}});
  }
  j["agents"] = std::move(agents);
  j["game_index"] = game_index;
  j["game_seed"] = t.game_seed;
  j["valid"] = t.valid;
  j["abort_reason"] = t.abort_reason;
  ordered_json rounds = ordered_json::array();
  for (const auto& r : t.rounds) {
    rounds.push_back({{"round", r.round_index},
                      {"contributions", r.contributions},
                      {"total", r.total},
                      {"gains", points_array(r.gains)},
                      {"cumulative", points_array(r.cumulative)}});
  }
  j["rounds"] = std::move(rounds);
  ordered_json exchanges = ordered_json::array();
  for (std::size_t i = 0; i < t.exchanges.size(); ++i) {
    ordered_json turns = ordered_json::array();
    for (const auto& turn : t.exchanges[i].turns) {
      turns.push_back(
          {{"round", turn.round}, {"prompt", turn.prompt}, {"response", turn.response}});
    }
    exchanges.push_back({{"player", static_cast<int>(i)},
                         {"system_prompt", t.exchanges[i].system_prompt},
                         {"turns", std::move(turns)}});
  }
  j["exchanges"] = std::move(exchanges);
  return j.dump();
}

GameTranscript transcript_from_json(const std::string& line, ConditionCell* cell_out) {
  json j = json::parse(line);  // caller wraps json::exception into line errors
  int version = j.at("schema_version").get<int>();
  if (version != kTranscriptSchemaVersion) {
    throw SchemaVersionMismatchError("transcript schema_version " + std::to_string(version) +
                                     " is not the supported " +
                                     std::to_string(kTranscriptSchemaVersion));
  }
  GameTranscript t;
  const json& cfg = j.at("config");
  t.config.num_players = cfg.at("num_players").get<int>();
  t.config.num_rounds = cfg.at("num_rounds").get<int>();
  t.config.endowment = cfg.at("endowment").get<int>();
  t.config.multiplier_tenths = parse_tenths(cfg.at("multiplier").get<std::string>());
  for (const auto& p : cfg.at("personas")) {
    t.config.personas.push_back(parse_persona(p.get<std::string>()));
  }
  const json& cell = j.at("cell");
  t.config.study_style = parse_study(cell.at("study").get<std::string>());
  t.config.condition = parse_condition(cell.at("condition").get<std::string>());
  if (cell_out) {
    cell_out->study = t.config.study_style;
    cell_out->condition = t.config.condition;
    cell_out->personas = t.config.personas;
  }
  for (const auto& a : j.at("agents")) {
    t.agent_ids.push_back(a.at("id").get<std::string>());
    t.display_names.push_back(a.at("display_name").get<std::string>());
  }
  t.game_index = j.at("game_index").get<int>();
  t.game_seed = j.at("game_seed").get<std::uint64_t>();
  t.valid = j.at("valid").get<bool>();
  t.abort_reason = j.at("abort_reason").get<std::string>();
  for (const auto& r : j.at("rounds")) {
    RoundRecord record;
    record.round_index = r.at("round").get<int>();
    record.contributions = r.at("contributions").get<std::vector<int>>();
    record.total = r.at("total").get<int>();
    record.gains = points_from_array(r.at("gains"));
    record.cumulative = points_from_array(r.at("cumulative"));
    t.rounds.push_back(std::move(record));
  }
  for (const auto& e : j.at("exchanges")) {
    PlayerExchanges log;
    log.system_prompt = e.at("system_prompt").get<std::string>();
    for (const auto& turn : e.at("turns")) {
      log.turns.push_back({turn.at("round").get<int>(), turn.at("prompt").get<std::string>(),
                           turn.at("response").get<std::string>()});
    }
    t.exchanges.push_back(std::move(log));
  }
  return t;
}

void persist_transcripts(const BatchResult& batch, const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  for (std::size_t i = 0; i < batch.transcripts.size(); ++i) {
    out << transcript_to_json(batch.transcripts[i], batch.cell, static_cast<int>(i)) << '\n';
  }
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

BatchResult load_transcripts(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  BatchResult batch;
  std::string line;
  int line_number = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    try {
      ConditionCell cell;
      GameTranscript t = transcript_from_json(line, &cell);
      if (first) {
        batch.cell = cell;
        batch.cell.games = 0;  // filled below
        first = false;
      }
      if (!t.valid) ++batch.invalid_count;
      batch.transcripts.push_back(std::move(t));
    } catch (const SchemaVersionMismatchError&) {
      throw;
    } catch (const json::exception& e) {
      throw CorruptLineError(line_number, path.string() + " line " + std::to_string(line_number) +
                                              ": " + e.what());
    } catch (const Error& e) {
      if (e.category() == ErrorCategory::Config || e.category() == ErrorCategory::Validation) {
        throw CorruptLineError(line_number, path.string() + " line " +
                                                std::to_string(line_number) + ": " + e.what());
      }
      throw;
    }
  }
  batch.cell.games = static_cast<int>(batch.transcripts.size());
  return batch;
}

}  // namespace pgg
