#pragma once

#include <string>

#include "pgg/game.hpp"

namespace pgg {

/// Which wording of the system-prompt templates to use. Corrected is the
/// default store; AsPrinted swaps in the two study1 name-condition variants
/// whose published appendix text drifted from the protocol wording (a
/// duplicated mention of the co-player and a truncated priority sentence).
/// Keeping both editions selectable makes either rendering reproducible.
enum class TemplateEdition { Corrected, AsPrinted };

TemplateEdition parse_edition(const std::string& s);
const char* to_string(TemplateEdition e);

/// Exact template text, `<MODEL-NAME>` placeholder intact. Name-condition
/// templates contain the placeholder; no-name ones do not.
const std::string& prompt_template(StudyStyle study, Persona persona, Condition condition,
                                   TemplateEdition edition = TemplateEdition::Corrected);

/// Template with the placeholder substituted. The protocol's twist is that
/// the opponent name injected is the player's *own* display name; this
/// function stays general and takes whatever name the caller supplies.
/// Throws ConfigError when the name condition lacks a name or num_players
/// does not match the study design.
std::string build_system_prompt(StudyStyle study, Persona persona, Condition condition,
                                const std::string& opponent_display_name, int num_players,
                                TemplateEdition edition = TemplateEdition::Corrected);

/// How the templates of each study refer to unnamed co-players.
const char* noname_phrase(StudyStyle study);

/// Label for the co-players as used in reminders: the display name under the
/// name condition ("three other <name>s" in four-player games), the study's
/// no-name phrase otherwise.
std::string opponent_label(StudyStyle study, Condition condition,
                           const std::string& self_display_name);

/// The per-round rules recap used by the study-1 interaction style.
std::string build_rules_reminder(const GameConfig& config, const std::string& opponent_label);

/// Previous-round feedback from one player's point of view. The study-1
/// style front-loads the rules reminder; the later styles send the bare
/// summary.
std::string render_round_summary(const RoundSummary& summary, StudyStyle study,
                                 const GameConfig& config, const std::string& opponent_label);
std::string render_round_summary(const RoundRecord& record, int player_index, StudyStyle study,
                                 const GameConfig& config, const std::string& opponent_label);

/// The per-round request. Study-1 style asks for reasoning plus contribution;
/// the later styles ask for the contribution alone.
std::string build_round_ask(int round_index, const GameConfig& config);

/// Whether decisions in this style carry a reasoning field.
bool expects_reasoning(StudyStyle study);

/// Versioned scoring instructions for the sentiment judge.
const std::string& judge_rubric();

namespace detail {
// Verbatim texts live in prompt_texts.cpp; tests assert they match the
// files under templates/ byte for byte.
extern const char* const k_study1_neutral_noname;
extern const char* const k_study1_collective_noname;
extern const char* const k_study1_selfish_noname;
extern const char* const k_study1_neutral_name;
extern const char* const k_study1_collective_name;
extern const char* const k_study1_selfish_name;
extern const char* const k_study2_neutral_noname;
extern const char* const k_study2_collective_noname;
extern const char* const k_study2_selfish_noname;
extern const char* const k_study2_neutral_name;
extern const char* const k_study2_collective_name;
extern const char* const k_study2_selfish_name;
extern const char* const k_study3_neutral_noname;
extern const char* const k_study3_collective_noname;
extern const char* const k_study3_selfish_noname;
extern const char* const k_study3_neutral_name;
extern const char* const k_study3_collective_name;
extern const char* const k_study3_selfish_name;
extern const char* const k_study1_printed_collective_name;
extern const char* const k_study1_printed_selfish_name;
}  // namespace detail

}  // namespace pgg
