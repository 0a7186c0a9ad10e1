#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pgg/game.hpp"
#include "pgg/gateway.hpp"
#include "pgg/prompts.hpp"
#include "pgg/rng.hpp"

namespace pgg {

enum class StrategyId { AlwaysContribute, Defector, Matcher, EndgameDefector, RandomUniform };

const char* to_string(StrategyId s);
StrategyId parse_strategy(const std::string& s);

struct ScriptedSpec {
  StrategyId strategy = StrategyId::Defector;
  /// AlwaysContribute: the fixed amount. EndgameDefector: the amount before
  /// the last round. Ignored by the rest.
  int param = 0;

  bool operator==(const ScriptedSpec&) const = default;
};

struct LlmSpec {
  std::string provider;
  std::string model;
  std::string display_name;
  double temperature = 1.0;

  bool operator==(const LlmSpec&) const = default;
};

struct AgentSpec {
  std::variant<ScriptedSpec, LlmSpec> kind;

  bool scripted() const { return std::holds_alternative<ScriptedSpec>(kind); }
  std::string id() const;
  std::string display_name() const;
  void validate(int endowment) const;

  bool operator==(const AgentSpec&) const = default;
};

/// How forgiving decision parsing is about formatting noise. Lenient (the
/// default) strips markdown fences and converts single-quoted pseudo-JSON;
/// Strict takes the text as-is.
enum class ParseLeniency { Strict, Lenient };

/// Turns a raw model response into a decision. Throws ParseError with the
/// kind that best describes the first problem found: Unparseable (not a
/// JSON object), MissingKey, NotAnInteger, OutOfRange.
ContributionDecision parse_decision(const std::string& raw, bool expects_reasoning, int endowment,
                                    ParseLeniency leniency = ParseLeniency::Lenient);

/// Canonical JSON rendering of a decision — the exact shape the prompts
/// demand. parse_decision(render_decision(d)) round-trips.
std::string render_decision(const ContributionDecision& decision, bool include_reasoning);

/// Lenient-mode quote repair: single-quoted strings become double-quoted,
/// leaving the interiors of genuine double-quoted strings alone.
std::string normalize_single_quotes(const std::string& text);

/// Pure strategy evaluation. Matcher reconstructs its own previous
/// contribution from the observation's gain figures (the payoff relation
/// inverts exactly in tenths), so no hidden state is needed.
ContributionDecision scripted_decide(const ScriptedSpec& spec, const Observation& obs,
                                     const GameConfig& config, SplitMix64& rng);

/// Builds a playable agent. Scripted specs ignore the gateway; LLM specs
/// require one plus a persona-and-condition-determined system prompt, with
/// the agent's own display name injected as the opponent under the name
/// condition.
std::unique_ptr<Agent> make_agent(const AgentSpec& spec, Persona persona, const GameConfig& config,
                                  std::uint64_t game_seed, int player_index, Gateway* gateway,
                                  TemplateEdition edition = TemplateEdition::Corrected);

/// Re-prompts granted after a malformed response before the agent gives up.
inline constexpr int kMaxReprompts = 3;

}  // namespace pgg
