#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

#include "pgg/agents.hpp"
#include "pgg/game.hpp"
#include "pgg/masking.hpp"
#include "pgg/prompts.hpp"
#include "pgg/rng.hpp"
#include "pgg/runner.hpp"
#include "pgg/stats.hpp"

namespace py = pybind11;
using namespace pgg;

namespace {

std::int64_t tenths_from_double(double multiplier) {
  double scaled = multiplier * 10.0;
  auto rounded = static_cast<std::int64_t>(scaled >= 0 ? scaled + 0.5 : scaled - 0.5);
  if (std::abs(scaled - static_cast<double>(rounded)) > 1e-6) {
    throw ConfigError("multiplier must be exact in tenths");
  }
  return rounded;
}

GameConfig config_for(const std::string& study, const std::string& condition,
                      const std::vector<std::string>& personas, int rounds, int endowment,
                      double multiplier) {
  GameConfig config;
  config.study_style = parse_study(study);
  config.num_players = players_for_study(config.study_style);
  config.condition = parse_condition(condition);
  config.num_rounds = rounds;
  config.endowment = endowment;
  config.multiplier_tenths = tenths_from_double(multiplier);
  for (const auto& p : personas) config.personas.push_back(parse_persona(p));
  config.validate();
  return config;
}

}  // namespace

PYBIND11_MODULE(pggame, m) {
  m.doc() = "iterated public goods game engine and analysis helpers";
  m.attr("__version__") = "0.1.0";

  py::register_exception<Error>(m, "PggError");

  m.def(
      "round_payoff",
      [](const std::vector<int>& contributions, int endowment, double multiplier) {
        auto gains = round_payoff(contributions, endowment, tenths_from_double(multiplier),
                                  static_cast<int>(contributions.size()));
        std::vector<double> out;
        for (Points p : gains) out.push_back(p.value());
        return out;
      },
      py::arg("contributions"), py::arg("endowment") = 10, py::arg("multiplier") = 1.6,
      "Per-player gains for one round of contributions.");

  m.def(
      "best_response",
      [](int others_total, int num_players, int endowment, double multiplier) {
        GameConfig config;
        config.num_players = num_players;
        config.endowment = endowment;
        config.multiplier_tenths = tenths_from_double(multiplier);
        config.personas.assign(num_players, Persona::Neutral);
        config.study_style = num_players == 4 ? StudyStyle::Study3 : StudyStyle::Study1;
        return best_response(others_total, config);
      },
      py::arg("others_total"), py::arg("num_players") = 2, py::arg("endowment") = 10,
      py::arg("multiplier") = 1.6,
      "Payoff-maximizing contribution against a fixed total from the others.");

  m.def(
      "build_system_prompt",
      [](const std::string& study, const std::string& persona, const std::string& condition,
         const std::string& display_name, const std::string& edition) {
        StudyStyle s = parse_study(study);
        return build_system_prompt(s, parse_persona(persona), parse_condition(condition),
                                   display_name, players_for_study(s), parse_edition(edition));
      },
      py::arg("study"), py::arg("persona"), py::arg("condition"), py::arg("display_name") = "",
      py::arg("edition") = "corrected",
      "The exact system prompt for one player, placeholder substituted.");

  m.def(
      "parse_decision",
      [](const std::string& raw, bool expects_reasoning, int endowment) {
        ContributionDecision d = parse_decision(raw, expects_reasoning, endowment);
        py::dict out;
        out["contribution"] = d.contribution;
        out["reasoning"] = d.reasoning ? py::object(py::str(*d.reasoning)) : py::object(py::none());
        return out;
      },
      py::arg("raw"), py::arg("expects_reasoning") = true, py::arg("endowment") = 10,
      "Parse a raw model response into a decision dict.");

  m.def(
      "mask_reasoning",
      [](const std::string& text, const std::optional<std::vector<std::string>>& names) {
        return mask_reasoning(text, names ? *names : default_mask_names());
      },
      py::arg("text"), py::arg("names") = py::none(),
      "Blind reasoning text for sentiment judging.");

  m.def(
      "spearman",
      [](const std::vector<double>& xs, const std::vector<double>& ys) -> py::object {
        SpearmanResult r = spearman(xs, ys);
        if (r.kind == SpearmanResult::Kind::NoVariance) return py::none();
        return py::float_(r.rho);
      },
      py::arg("xs"), py::arg("ys"),
      "Tie-corrected Spearman rho; None when either side has no variance.");

  m.def(
      "welch_t_test",
      [](const std::vector<double>& a, const std::vector<double>& b) {
        WelchResult r = welch_t_test(a, b);
        return py::make_tuple(r.t, r.p_value);
      },
      py::arg("a"), py::arg("b"), "Two-sided Welch t-test, returns (t, p).");

  m.def(
      "derive_seed",
      [](std::uint64_t master, std::uint64_t index) { return derive_seed(master, index); },
      py::arg("master_seed"), py::arg("index"), "Per-game seed derivation.");

  m.def(
      "play_scripted_game",
      [](const std::vector<std::string>& strategies, const std::string& study,
         const std::string& condition, const std::vector<std::string>& personas, int rounds,
         int endowment, double multiplier, std::uint64_t seed) {
        GameConfig config =
            config_for(study, condition, personas, rounds, endowment, multiplier);
        if (strategies.size() != static_cast<std::size_t>(config.num_players)) {
          throw ConfigError("expected " + std::to_string(config.num_players) + " strategies");
        }
        std::vector<std::unique_ptr<Agent>> agents;
        ConditionCell cell{config.study_style, config.personas, config.condition, {}, 1};
        for (std::size_t i = 0; i < strategies.size(); ++i) {
          // "always:7" style strings; plain names for parameter-free ones.
          std::string name = strategies[i];
          int param = 0;
          if (auto colon = name.find(':'); colon != std::string::npos) {
            param = std::stoi(name.substr(colon + 1));
            name = name.substr(0, colon);
          }
          AgentSpec spec{ScriptedSpec{parse_strategy(name), param}};
          cell.agent_specs.push_back(spec);
          agents.push_back(make_agent(spec, config.personas[i], config, seed,
                                      static_cast<int>(i), nullptr));
        }
        GameTranscript t = play_game(config, agents, seed);
        return transcript_to_json(t, cell, 0);
      },
      py::arg("strategies"), py::arg("study") = "study1", py::arg("condition") = "noname",
      py::arg("personas") = std::vector<std::string>{"neutral", "neutral"},
      py::arg("rounds") = 20, py::arg("endowment") = 10, py::arg("multiplier") = 1.6,
      py::arg("seed") = 1,
      "Play one all-scripted game; returns the transcript as a JSON string.");
}
