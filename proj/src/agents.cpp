#include "pgg/agents.hpp"

#include <cctype>

#include "json.hpp"
#include "pgg/errors.hpp"

namespace pgg {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

/// Drops a leading ```lang line and a trailing ``` line if present.
std::string strip_fences(const std::string& s) {
  std::string t = trim(s);
  if (t.rfind("```", 0) != 0) return t;
  std::size_t first_nl = t.find('\n');
  if (first_nl == std::string::npos) return t;
  std::string body = t.substr(first_nl + 1);
  std::size_t last_fence = body.rfind("```");
  if (last_fence != std::string::npos && trim(body.substr(last_fence + 3)).empty()) {
    body = body.substr(0, last_fence);
  }
  return trim(body);
}

}  // namespace

const char* to_string(StrategyId s) {
  switch (s) {
    case StrategyId::AlwaysContribute: return "always";
    case StrategyId::Defector: return "defector";
    case StrategyId::Matcher: return "matcher";
    case StrategyId::EndgameDefector: return "endgame";
    case StrategyId::RandomUniform: return "random";
  }
  return "unknown";
}

StrategyId parse_strategy(const std::string& s) {
  if (s == "always") return StrategyId::AlwaysContribute;
  if (s == "defector") return StrategyId::Defector;
  if (s == "matcher") return StrategyId::Matcher;
  if (s == "endgame") return StrategyId::EndgameDefector;
  if (s == "random") return StrategyId::RandomUniform;
  throw ConfigError("unknown strategy '" + s +
                    "' (expected always/defector/matcher/endgame/random)");
}

std::string AgentSpec::id() const {
  if (const auto* s = std::get_if<ScriptedSpec>(&kind)) {
    std::string base = std::string("scripted:") + to_string(s->strategy);
    if (s->strategy == StrategyId::AlwaysContribute ||
        s->strategy == StrategyId::EndgameDefector) {
      base += ":" + std::to_string(s->param);
    }
    return base;
  }
  const auto& l = std::get<LlmSpec>(kind);
  return "llm:" + l.provider + ":" + l.model;
}

std::string AgentSpec::display_name() const {
  if (const auto* s = std::get_if<ScriptedSpec>(&kind)) {
    switch (s->strategy) {
      case StrategyId::AlwaysContribute:
        return "AlwaysContribute(" + std::to_string(s->param) + ")";
      case StrategyId::Defector: return "Defector";
      case StrategyId::Matcher: return "Matcher";
      case StrategyId::EndgameDefector:
        return "EndgameDefector(" + std::to_string(s->param) + ")";
      case StrategyId::RandomUniform: return "RandomUniform";
    }
  }
  return std::get<LlmSpec>(kind).display_name;
}

void AgentSpec::validate(int endowment) const {
  if (const auto* s = std::get_if<ScriptedSpec>(&kind)) {
    bool takes_param = s->strategy == StrategyId::AlwaysContribute ||
                       s->strategy == StrategyId::EndgameDefector;
    if (takes_param && (s->param < 0 || s->param > endowment)) {
      throw ConfigError("strategy parameter " + std::to_string(s->param) + " outside [0, " +
                        std::to_string(endowment) + "]");
    }
    return;
  }
  const auto& l = std::get<LlmSpec>(kind);
  if (l.model.empty()) throw ConfigError("llm agent needs a model");
  if (l.display_name.empty()) throw ConfigError("llm agent needs a display_name");
  if (!(l.temperature >= 0.0 && l.temperature <= 2.0)) {
    throw ConfigError("llm temperature must lie in [0, 2]");
  }
}

std::string normalize_single_quotes(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  bool in_double = false, in_single = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (in_double) {
      out += c;
      if (c == '\\' && i + 1 < text.size()) {
        out += text[++i];
      } else if (c == '"') {
        in_double = false;
      }
    } else if (in_single) {
      if (c == '\\' && i + 1 < text.size() && text[i + 1] == '\'') {
        out += '\'';  // \' has no meaning in JSON; unescape it
        ++i;
      } else if (c == '\\' && i + 1 < text.size()) {
        out += c;
        out += text[++i];
      } else if (c == '\'') {
        out += '"';
        in_single = false;
      } else if (c == '"') {
        out += "\\\"";
      } else {
        out += c;
      }
    } else if (c == '"') {
      out += c;
      in_double = true;
    } else if (c == '\'') {
      out += '"';
      in_single = true;
    } else {
      out += c;
    }
  }
  return out;
}

ContributionDecision parse_decision(const std::string& raw, bool expects_reasoning, int endowment,
                                    ParseLeniency leniency) {
  std::string text = leniency == ParseLeniency::Lenient ? strip_fences(raw) : trim(raw);
  if (text.empty()) {
    throw ParseError(ParseErrorKind::Unparseable, "empty response");
  }
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() && leniency == ParseLeniency::Lenient) {
    j = json::parse(normalize_single_quotes(text), nullptr, false);
  }
  if (j.is_discarded()) {
    throw ParseError(ParseErrorKind::Unparseable, "response is not valid JSON");
  }
  if (!j.is_object()) {
    throw ParseError(ParseErrorKind::Unparseable, "response must be a JSON object");
  }

  ContributionDecision decision;
  if (expects_reasoning) {
    if (!j.contains("reasoning")) {
      throw ParseError(ParseErrorKind::MissingKey, "missing key 'reasoning'");
    }
    if (!j["reasoning"].is_string()) {
      throw ParseError(ParseErrorKind::Unparseable, "'reasoning' must be a string");
    }
    decision.reasoning = j["reasoning"].get<std::string>();
  }
  if (!j.contains("contribution")) {
    throw ParseError(ParseErrorKind::MissingKey, "missing key 'contribution'");
  }
  const json& c = j["contribution"];
  if (!c.is_number_integer()) {
    throw ParseError(ParseErrorKind::NotAnInteger, "'contribution' must be an integer");
  }
  std::int64_t value = c.get<std::int64_t>();
  if (value < 0 || value > endowment) {
    throw ParseError(ParseErrorKind::OutOfRange, "contribution " + std::to_string(value) +
                                                     " outside [0, " + std::to_string(endowment) +
                                                     "]");
  }
  decision.contribution = static_cast<int>(value);
  return decision;
}

std::string render_decision(const ContributionDecision& decision, bool include_reasoning) {
  ordered_json j;
  if (include_reasoning) {
    j["reasoning"] = decision.reasoning.value_or("");
  }
  j["contribution"] = decision.contribution;
  return j.dump();
}

ContributionDecision scripted_decide(const ScriptedSpec& spec, const Observation& obs,
                                     const GameConfig& config, SplitMix64& rng) {
  switch (spec.strategy) {
    case StrategyId::AlwaysContribute:
      return {spec.param, std::nullopt};
    case StrategyId::Defector:
      return {0, std::nullopt};
    case StrategyId::EndgameDefector:
      return {obs.round_index == config.num_rounds ? 0 : spec.param, std::nullopt};
    case StrategyId::RandomUniform:
      return {rng.next_int(0, config.endowment), std::nullopt};
    case StrategyId::Matcher: {
      if (obs.history.empty()) return {config.endowment, std::nullopt};
      const RoundSummary& prev = obs.history.back();
      // Invert the payoff relation to recover the own previous contribution:
      // gain = (E - own) + m * total / N, all exact in tenths.
      std::int64_t share_tenths =
          config.multiplier_tenths * prev.total / config.num_players;
      std::int64_t own_tenths =
          static_cast<std::int64_t>(config.endowment) * 10 + share_tenths -
          prev.own_gain.tenths();
      int own_prev = static_cast<int>(own_tenths / 10);
      int others_total = prev.total - own_prev;
      int divisor = config.num_players - 1;
      // Round half up: floor((2x + d) / 2d).
      int matched = static_cast<int>((2LL * others_total + divisor) / (2LL * divisor));
      return {matched, std::nullopt};
    }
  }
  throw StateError("unhandled strategy");
}

namespace {

class ScriptedAgent : public Agent {
 public:
  ScriptedAgent(ScriptedSpec spec, const GameConfig& config, std::uint64_t game_seed,
                int player_index)
      : spec_(spec), config_(config), rng_(derive_seed(game_seed, player_index)) {}

  std::string id() const override {
    return AgentSpec{spec_}.id();
  }
  std::string display_name() const override { return AgentSpec{spec_}.display_name(); }

  ContributionDecision decide(const Observation& obs) override {
    return scripted_decide(spec_, obs, config_, rng_);
  }

 private:
  ScriptedSpec spec_;
  GameConfig config_;
  SplitMix64 rng_;
};

class LlmAgent : public Agent {
 public:
  LlmAgent(LlmSpec spec, Persona persona, const GameConfig& config, Gateway& gateway,
           TemplateEdition edition)
      : spec_(std::move(spec)), config_(config), gateway_(gateway) {
    log_.system_prompt =
        build_system_prompt(config.study_style, persona, config.condition, spec_.display_name,
                            config.num_players, edition);
    messages_.push_back({ChatMessage::Role::System, log_.system_prompt});
  }

  std::string id() const override { return AgentSpec{spec_}.id(); }
  std::string display_name() const override { return spec_.display_name; }
  const PlayerExchanges* exchanges() const override { return &log_; }

  ContributionDecision decide(const Observation& obs) override {
    std::string user = compose_user_message(obs);
    std::string last_error;
    for (int attempt = 0; attempt <= kMaxReprompts; ++attempt) {
      messages_.push_back({ChatMessage::Role::User, user});
      std::string response;
      try {
        response = gateway_.chat_complete(
            {spec_.model, messages_, spec_.temperature});
      } catch (const GatewayError& e) {
        throw AgentFailure(std::string("gateway gave up: ") + e.what());
      }
      log_.turns.push_back({obs.round_index, user, response});
      messages_.push_back({ChatMessage::Role::Assistant, response});
      try {
        return parse_decision(response, expects_reasoning(config_.study_style),
                              config_.endowment);
      } catch (const ParseError& e) {
        last_error = e.what();
        user = std::string("Your previous response could not be used: ") + e.what() +
               ". Respond again with exactly one valid JSON object in the required format.";
      }
    }
    throw AgentFailure("no usable decision after " + std::to_string(kMaxReprompts) +
                       " re-prompts; last error: " + last_error);
  }

 private:
  std::string compose_user_message(const Observation& obs) const {
    std::string ask = build_round_ask(obs.round_index, config_);
    if (!obs.history.empty()) {
      return render_round_summary(obs.history.back(), config_.study_style, config_,
                                  obs.opponent_label) +
             "\n\n" + ask;
    }
    if (!obs.rules_reminder.empty()) {
      return obs.rules_reminder + "\n\n" + ask;
    }
    return ask;
  }

  LlmSpec spec_;
  GameConfig config_;
  Gateway& gateway_;
  std::vector<ChatMessage> messages_;
  PlayerExchanges log_;
};

}  // namespace

std::unique_ptr<Agent> make_agent(const AgentSpec& spec, Persona persona, const GameConfig& config,
                                  std::uint64_t game_seed, int player_index, Gateway* gateway,
                                  TemplateEdition edition) {
  spec.validate(config.endowment);
  if (const auto* s = std::get_if<ScriptedSpec>(&spec.kind)) {
    return std::make_unique<ScriptedAgent>(*s, config, game_seed, player_index);
  }
  if (!gateway) {
    throw ConfigError("llm agent '" + spec.display_name() + "' needs a gateway");
  }
  return std::make_unique<LlmAgent>(std::get<LlmSpec>(spec.kind), persona, config, *gateway,
                                    edition);
}

}  // namespace pgg
