#include "pgg/prompts.hpp"

#include <array>

#include "pgg/errors.hpp"

namespace pgg {

namespace {

std::string replace_all(std::string text, const std::string& from, const std::string& to) {
  std::size_t pos = 0;
  while ((pos = text.find(from, pos)) != std::string::npos) {
    text.replace(pos, from.size(), to);
    pos += to.size();
  }
  return text;
}

int template_index(Persona persona, Condition condition) {
  int p = persona == Persona::Neutral ? 0 : persona == Persona::Collective ? 1 : 2;
  return p + (condition == Condition::Name ? 3 : 0);
}

}  // namespace

TemplateEdition parse_edition(const std::string& s) {
  if (s == "corrected") return TemplateEdition::Corrected;
  if (s == "as-printed" || s == "as_printed") return TemplateEdition::AsPrinted;
  throw ConfigError("unknown template edition '" + s + "' (expected corrected/as-printed)");
}

const char* to_string(TemplateEdition e) {
  return e == TemplateEdition::Corrected ? "corrected" : "as-printed";
}

const std::string& prompt_template(StudyStyle study, Persona persona, Condition condition,
                                   TemplateEdition edition) {
  using namespace detail;
  // Order per study: neutral/collective/selfish x noname, then the same x name.
  static const std::array<std::array<std::string, 6>, 3> store = {{
      {k_study1_neutral_noname, k_study1_collective_noname, k_study1_selfish_noname,
       k_study1_neutral_name, k_study1_collective_name, k_study1_selfish_name},
      {k_study2_neutral_noname, k_study2_collective_noname, k_study2_selfish_noname,
       k_study2_neutral_name, k_study2_collective_name, k_study2_selfish_name},
      {k_study3_neutral_noname, k_study3_collective_noname, k_study3_selfish_noname,
       k_study3_neutral_name, k_study3_collective_name, k_study3_selfish_name},
  }};
  static const std::string printed_collective = k_study1_printed_collective_name;
  static const std::string printed_selfish = k_study1_printed_selfish_name;

  if (edition == TemplateEdition::AsPrinted && study == StudyStyle::Study1 &&
      condition == Condition::Name) {
    if (persona == Persona::Collective) return printed_collective;
    if (persona == Persona::Selfish) return printed_selfish;
  }
  int s = study == StudyStyle::Study1 ? 0 : study == StudyStyle::Study2 ? 1 : 2;
  return store[s][template_index(persona, condition)];
}

std::string build_system_prompt(StudyStyle study, Persona persona, Condition condition,
                                const std::string& opponent_display_name, int num_players,
                                TemplateEdition edition) {
  if (num_players != players_for_study(study)) {
    throw ConfigError(std::string(to_string(study)) + " templates are written for " +
                      std::to_string(players_for_study(study)) + " players, got " +
                      std::to_string(num_players));
  }
  const std::string& tpl = prompt_template(study, persona, condition, edition);
  if (condition == Condition::NoName) return tpl;
  if (opponent_display_name.empty()) {
    throw ConfigError("name condition requires a non-empty opponent display name");
  }
  return replace_all(tpl, "<MODEL-NAME>", opponent_display_name);
}

const char* noname_phrase(StudyStyle study) {
  switch (study) {
    case StudyStyle::Study1: return "one other AI agent";
    case StudyStyle::Study2: return "another AI";
    case StudyStyle::Study3: return "three other AIs";
  }
  return "";
}

std::string opponent_label(StudyStyle study, Condition condition,
                           const std::string& self_display_name) {
  if (condition == Condition::NoName) return noname_phrase(study);
  if (self_display_name.empty()) {
    throw ConfigError("name condition requires a non-empty display name");
  }
  if (study == StudyStyle::Study3) return "three other " + self_display_name + "s";
  return self_display_name;
}

std::string build_rules_reminder(const GameConfig& config, const std::string& opponent_label) {
  std::string m = format_tenths(config.multiplier_tenths);
  std::string e = std::to_string(config.endowment);
  return "Reminder of the game rules: everyone started with 0 points, and there are " +
         std::to_string(config.num_rounds) + " rounds. Each round, you receive " + e +
         " points. You can choose to contribute between 0 to " + e +
         " points towards the common pool, and whatever points you do not contribute are "
         "yours. After each round, the summation of contributions will be multiplied by " +
         m + " and divided evenly between everyone. You are playing with " + opponent_label +
         ".";
}

std::string render_round_summary(const RoundSummary& summary, StudyStyle study,
                                 const GameConfig& config, const std::string& opponent_label) {
  std::string core = "Round " + std::to_string(summary.round_index) + " summary: a total of " +
                     std::to_string(summary.total) +
                     " points were contributed to the common pool. You gained " +
                     summary.own_gain.str() + " points this round. Your accumulated total is now " +
                     summary.own_cumulative.str() + " points.";
  if (study == StudyStyle::Study1) {
    return build_rules_reminder(config, opponent_label) + "\n\n" + core;
  }
  return core;
}

std::string render_round_summary(const RoundRecord& record, int player_index, StudyStyle study,
                                 const GameConfig& config, const std::string& opponent_label) {
  if (player_index < 0 || player_index >= static_cast<int>(record.gains.size())) {
    throw ValidationError("player index " + std::to_string(player_index) +
                          " outside the round record");
  }
  RoundSummary view{record.round_index, record.total, record.gains[player_index],
                    record.cumulative[player_index]};
  return render_round_summary(view, study, config, opponent_label);
}

std::string build_round_ask(int round_index, const GameConfig& config) {
  std::string head =
      "Round " + std::to_string(round_index) + " of " + std::to_string(config.num_rounds) + ". ";
  if (expects_reasoning(config.study_style)) {
    return head + "Please provide your reasoning and your contribution.";
  }
  return head + "Please provide your contribution.";
}

bool expects_reasoning(StudyStyle study) { return study == StudyStyle::Study1; }

const std::string& judge_rubric() {
  static const std::string rubric =
      "You are scoring a single piece of text: the reasoning a player gave while choosing a "
      "contribution in a repeated common-pool game. Rate the sentiment of the reasoning on a "
      "scale from 0 to 1.0, where 0 represents fully defective intent, 0.5 represents neutral "
      "intent, and 1.0 represents fully cooperative intent. Respond with a single decimal "
      "number between 0 and 1.0 and nothing else.";
  return rubric;
}

}  // namespace pgg
