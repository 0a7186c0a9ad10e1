#include "pgg/game.hpp"

#include <algorithm>
#include <numeric>

#include "pgg/errors.hpp"
#include "pgg/prompts.hpp"

namespace pgg {

const char* to_string(Condition c) { return c == Condition::Name ? "name" : "noname"; }

const char* to_string(Persona p) {
  switch (p) {
    case Persona::Collective: return "collective";
    case Persona::Neutral: return "neutral";
    case Persona::Selfish: return "selfish";
  }
  return "unknown";
}

const char* to_string(StudyStyle s) {
  switch (s) {
    case StudyStyle::Study1: return "study1";
    case StudyStyle::Study2: return "study2";
    case StudyStyle::Study3: return "study3";
  }
  return "unknown";
}

Condition parse_condition(const std::string& s) {
  if (s == "name") return Condition::Name;
  if (s == "noname" || s == "no-name") return Condition::NoName;
  throw ConfigError("unknown condition '" + s + "' (expected 'name' or 'noname')");
}

Persona parse_persona(const std::string& s) {
  if (s == "collective" || s == "C") return Persona::Collective;
  if (s == "neutral" || s == "N") return Persona::Neutral;
  if (s == "selfish" || s == "S") return Persona::Selfish;
  throw ConfigError("unknown persona '" + s + "' (expected collective/neutral/selfish)");
}

StudyStyle parse_study(const std::string& s) {
  if (s == "study1") return StudyStyle::Study1;
  if (s == "study2") return StudyStyle::Study2;
  if (s == "study3") return StudyStyle::Study3;
  throw ConfigError("unknown study '" + s + "' (expected study1/study2/study3)");
}

char persona_letter(Persona p) {
  switch (p) {
    case Persona::Collective: return 'C';
    case Persona::Neutral: return 'N';
    case Persona::Selfish: return 'S';
  }
  return '?';
}

int players_for_study(StudyStyle s) { return s == StudyStyle::Study3 ? 4 : 2; }

int default_games_for_study(StudyStyle s) { return s == StudyStyle::Study3 ? 50 : 100; }

void GameConfig::validate() const {
  if (num_players < 2) {
    throw ConfigError("num_players must be at least 2, got " + std::to_string(num_players));
  }
  if (num_rounds < 1) {
    throw ConfigError("num_rounds must be at least 1, got " + std::to_string(num_rounds));
  }
  if (endowment < 1) {
    throw ConfigError("endowment must be at least 1, got " + std::to_string(endowment));
  }
  // Strict: m <= 1 makes contributing pointless even jointly, m >= N makes
  // it individually optimal. Either way the dilemma collapses.
  if (multiplier_tenths <= 10) {
    throw ConfigError("multiplier must exceed 1, got " + format_tenths(multiplier_tenths));
  }
  if (multiplier_tenths >= 10 * num_players) {
    throw ConfigError("multiplier must be below num_players (" + std::to_string(num_players) +
                      "), got " + format_tenths(multiplier_tenths));
  }
  if (multiplier_tenths % num_players != 0) {
    throw ConfigError("multiplier " + format_tenths(multiplier_tenths) + " split across " +
                      std::to_string(num_players) +
                      " players does not land on exact tenths; pick a multiplier divisible by "
                      "the player count (in tenths)");
  }
  if (static_cast<int>(personas.size()) != num_players) {
    throw ConfigError("expected " + std::to_string(num_players) + " personas, got " +
                      std::to_string(personas.size()));
  }
  if (num_players != players_for_study(study_style)) {
    throw ConfigError(std::string(to_string(study_style)) + " requires " +
                      std::to_string(players_for_study(study_style)) + " players, got " +
                      std::to_string(num_players));
  }
  if (study_style == StudyStyle::Study3) {
    for (Persona p : personas) {
      if (p != personas.front()) {
        throw ConfigError("study3 plays identical copies; personas must all match");
      }
    }
  }
  if (games < 1) {
    throw ConfigError("games must be at least 1, got " + std::to_string(games));
  }
}

GameState new_game(const GameConfig& config) {
  config.validate();
  GameState s;
  s.config = config;
  s.cumulative.assign(config.num_players, Points{});
  return s;
}

std::vector<Points> round_payoff(const std::vector<int>& contributions, int endowment,
                                 std::int64_t multiplier_tenths, int num_players) {
  if (num_players < 2) {
    throw ConfigError("num_players must be at least 2, got " + std::to_string(num_players));
  }
  if (multiplier_tenths % num_players != 0) {
    throw ConfigError("multiplier " + format_tenths(multiplier_tenths) +
                      " is not exactly divisible across " + std::to_string(num_players) +
                      " players in tenths");
  }
  if (static_cast<int>(contributions.size()) != num_players) {
    throw ValidationError("expected " + std::to_string(num_players) + " contributions, got " +
                          std::to_string(contributions.size()));
  }
  std::int64_t total = 0;
  for (std::size_t i = 0; i < contributions.size(); ++i) {
    int c = contributions[i];
    if (c < 0 || c > endowment) {
      throw ValidationError("player " + std::to_string(i) + " contribution " + std::to_string(c) +
                            " outside [0, " + std::to_string(endowment) + "]");
    }
    total += c;
  }
  // Exact by construction: num_players divides multiplier_tenths.
  std::int64_t share_tenths = multiplier_tenths * total / num_players;
  std::vector<Points> gains;
  gains.reserve(contributions.size());
  for (int c : contributions) {
    gains.push_back(Points::from_tenths((endowment - c) * 10 + share_tenths));
  }
  return gains;
}

std::pair<GameState, RoundRecord> advance_round(const GameState& state,
                                                const std::vector<int>& contributions) {
  if (state.completed_rounds >= state.config.num_rounds) {
    throw StateError("game already finished after " + std::to_string(state.completed_rounds) +
                     " rounds");
  }
  RoundRecord record;
  record.round_index = state.completed_rounds + 1;
  record.contributions = contributions;
  record.total = std::accumulate(contributions.begin(), contributions.end(), 0);
  record.gains = round_payoff(contributions, state.config.endowment,
                              state.config.multiplier_tenths, state.config.num_players);
  GameState next = state;
  next.completed_rounds += 1;
  for (int i = 0; i < state.config.num_players; ++i) {
    next.cumulative[i] += record.gains[i];
  }
  record.cumulative = next.cumulative;
  return {std::move(next), std::move(record)};
}

int best_response(int others_total, const GameConfig& config) {
  config.validate();
  int ceiling = (config.num_players - 1) * config.endowment;
  if (others_total < 0 || others_total > ceiling) {
    throw ValidationError("others_total " + std::to_string(others_total) + " outside [0, " +
                          std::to_string(ceiling) + "]");
  }
  int best_c = 0;
  std::int64_t best_gain = -1;
  for (int c = 0; c <= config.endowment; ++c) {
    std::int64_t pool = others_total + c;
    std::int64_t gain =
        (config.endowment - c) * 10 + config.multiplier_tenths * pool / config.num_players;
    if (gain > best_gain) {  // strict: ties keep the lower contribution
      best_gain = gain;
      best_c = c;
    }
  }
  return best_c;
}

GameTranscript play_game(const GameConfig& config,
                         const std::vector<std::unique_ptr<Agent>>& agents,
                         std::uint64_t game_seed) {
  config.validate();
  if (static_cast<int>(agents.size()) != config.num_players) {
    throw ConfigError("expected " + std::to_string(config.num_players) + " agents, got " +
                      std::to_string(agents.size()));
  }

  GameTranscript transcript;
  transcript.config = config;
  transcript.game_seed = game_seed;
  for (const auto& agent : agents) {
    transcript.agent_ids.push_back(agent->id());
    transcript.display_names.push_back(agent->display_name());
  }

  std::vector<std::string> labels;
  std::vector<std::string> reminders;
  for (const auto& agent : agents) {
    labels.push_back(opponent_label(config.study_style, config.condition, agent->display_name()));
    reminders.push_back(config.study_style == StudyStyle::Study1
                            ? build_rules_reminder(config, labels.back())
                            : std::string{});
  }

  GameState state = new_game(config);
  std::vector<std::vector<RoundSummary>> histories(config.num_players);

  for (int r = 1; r <= config.num_rounds && transcript.valid; ++r) {
    std::vector<int> contributions(config.num_players, 0);
    for (int i = 0; i < config.num_players; ++i) {
      Observation obs;
      obs.round_index = r;
      obs.history = histories[i];
      obs.rules_reminder = reminders[i];
      obs.opponent_label = labels[i];
      try {
        contributions[i] = agents[i]->decide(obs).contribution;
      } catch (const AgentFailure& failure) {
        transcript.valid = false;
        transcript.abort_reason = "player " + std::to_string(i) + " failed in round " +
                                  std::to_string(r) + ": " + failure.what();
        break;
      }
    }
    if (!transcript.valid) break;

    auto [next_state, record] = advance_round(state, contributions);
    state = std::move(next_state);
    for (int i = 0; i < config.num_players; ++i) {
      histories[i].push_back(
          {record.round_index, record.total, record.gains[i], record.cumulative[i]});
    }
    transcript.rounds.push_back(std::move(record));
  }

  for (const auto& agent : agents) {
    if (const PlayerExchanges* log = agent->exchanges()) {
      transcript.exchanges.push_back(*log);
    } else {
      transcript.exchanges.push_back({});
    }
  }
  return transcript;
}

}  // namespace pgg
