#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pgg/points.hpp"

namespace pgg {

enum class Condition { NoName, Name };
enum class Persona { Collective, Neutral, Selfish };
enum class StudyStyle { Study1, Study2, Study3 };

const char* to_string(Condition c);
const char* to_string(Persona p);
const char* to_string(StudyStyle s);
Condition parse_condition(const std::string& s);
Persona parse_persona(const std::string& s);
StudyStyle parse_study(const std::string& s);
/// 'C' / 'N' / 'S', as used in pairing labels.
char persona_letter(Persona p);

/// Player count the study design prescribes: pairwise for the first two
/// styles, four-way self-play for the third.
int players_for_study(StudyStyle s);
/// Default batch size per condition cell.
int default_games_for_study(StudyStyle s);

struct GameConfig {
  int num_players = 2;
  int num_rounds = 20;
  int endowment = 10;
  /// Public-good multiplier in exact tenths (16 = 1.6).
  std::int64_t multiplier_tenths = 16;
  Condition condition = Condition::NoName;
  /// One persona per player, index-aligned with agents.
  std::vector<Persona> personas;
  StudyStyle study_style = StudyStyle::Study1;
  /// Games per condition cell when this config seeds a batch.
  int games = 100;
  /// Master seed; per-game seeds are derived from it.
  std::uint64_t seed = 1;

  double multiplier() const { return static_cast<double>(multiplier_tenths) / 10.0; }

  /// Throws ConfigError on any violated constraint. Notable ones: the
  /// multiplier must satisfy 1 < m < N strictly (otherwise the game has no
  /// dilemma), and N must divide multiplier_tenths so the per-player share
  /// is exact in tenths for every possible pool.
  void validate() const;
};

/// One settled round. Indexes are 1-based to match the prompts.
struct RoundRecord {
  int round_index = 0;
  std::vector<int> contributions;
  int total = 0;
  std::vector<Points> gains;
  std::vector<Points> cumulative;
};

/// One prompt/response exchange with a live model.
struct Exchange {
  int round = 0;
  std::string prompt;
  std::string response;
};

struct PlayerExchanges {
  std::string system_prompt;
  std::vector<Exchange> turns;
};

struct CellDescriptor {
  StudyStyle study = StudyStyle::Study1;
  std::string pairing;  // "CS" for a pair, "C" for self-play
  Condition condition = Condition::NoName;
};

struct GameTranscript {
  GameConfig config;
  std::vector<std::string> agent_ids;
  std::vector<std::string> display_names;
  std::uint64_t game_seed = 0;
  int game_index = 0;
  std::vector<RoundRecord> rounds;
  /// One entry per player; empty turns for scripted agents.
  std::vector<PlayerExchanges> exchanges;
  /// False when an agent aborted the game; such transcripts are persisted
  /// but excluded from statistics.
  bool valid = true;
  std::string abort_reason;
};

struct GameState {
  GameConfig config;
  int completed_rounds = 0;
  std::vector<Points> cumulative;
};

/// What round r gave one player, as that player may learn it.
struct RoundSummary {
  int round_index = 0;
  int total = 0;
  Points own_gain;
  Points own_cumulative;
};

/// Everything an agent is allowed to see when deciding a contribution.
struct Observation {
  int round_index = 1;
  std::vector<RoundSummary> history;
  /// Study-1 style repeats the rules each round; empty otherwise.
  std::string rules_reminder;
  /// How the co-players are referred to in this player's prompts.
  std::string opponent_label;
};

struct ContributionDecision {
  int contribution = 0;
  std::optional<std::string> reasoning;
};

class Agent {
 public:
  virtual ~Agent() = default;
  virtual std::string id() const = 0;
  virtual std::string display_name() const = 0;
  /// May throw AgentFailure once all recovery is exhausted.
  virtual ContributionDecision decide(const Observation& obs) = 0;
  /// Prompt/response log; null for agents that never talk to a model.
  virtual const PlayerExchanges* exchanges() const { return nullptr; }
};

GameState new_game(const GameConfig& config);

/// Equation-of-the-game evaluation in exact tenths:
///   gain_i = (endowment - c_i) + multiplier * total / num_players.
/// Validates its own inputs so it is safe to call standalone.
std::vector<Points> round_payoff(const std::vector<int>& contributions, int endowment,
                                 std::int64_t multiplier_tenths, int num_players);

/// Pure transition: settles one round, returns the next state and its record.
/// Throws StateError once the configured number of rounds has been played.
std::pair<GameState, RoundRecord> advance_round(const GameState& state,
                                                const std::vector<int>& contributions);

/// Payoff-maximizing contribution against a fixed total from the others,
/// found by exhaustive search over [0, endowment]; ties break low. With
/// 1 < m < N this is always 0 — the analytical free-rider result the tests
/// cross-check against this oracle.
int best_response(int others_total, const GameConfig& config);

/// Runs a full game. Agent failures do not propagate: the transcript comes
/// back flagged invalid with the rounds completed so far and the abort
/// reason. game_seed is recorded and must be the seed the agents were built
/// with.
GameTranscript play_game(const GameConfig& config,
                         const std::vector<std::unique_ptr<Agent>>& agents,
                         std::uint64_t game_seed);

}  // namespace pgg
