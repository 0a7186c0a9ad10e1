// Acceptance gate. Each criterion prints one [PASS]/[FAIL] line; any failure
// makes the binary exit nonzero. No test framework on purpose — this is the
// harness a release build is judged by, so it stays free of macros and
// depends only on the public headers and the installed CLI binary.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "pgg/agents.hpp"
#include "pgg/game.hpp"
#include "pgg/gateway.hpp"
#include "pgg/masking.hpp"
#include "pgg/prompts.hpp"
#include "pgg/rng.hpp"
#include "pgg/runner.hpp"
#include "pgg/stats.hpp"

#ifndef PGG_CLI_PATH
#error "PGG_CLI_PATH must point at the pgg binary"
#endif
#ifndef PGG_TEST_DATA_DIR
#error "PGG_TEST_DATA_DIR must point at tests/data"
#endif

namespace fs = std::filesystem;
using namespace pgg;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path fresh_dir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("pgg_acceptance_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

/// Exit code of the CLI under /bin/sh, output discarded; -1 when the shell
/// itself failed.
int run_cli(const std::string& args) {
  std::string cmd = std::string(PGG_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  if (rc == -1) return -1;
  if (WIFEXITED(rc)) return WEXITSTATUS(rc);
  return -1;
}

std::string replace_all(std::string text, const std::string& from, const std::string& to) {
  std::size_t pos = 0;
  while ((pos = text.find(from, pos)) != std::string::npos) {
    text.replace(pos, from.size(), to);
    pos += to.size();
  }
  return text;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

AgentSpec llm(const std::string& display_name) {
  return AgentSpec{LlmSpec{"openai", "gpt-4o", display_name, 1.0}};
}

// ---------------------------------------------------------------------------
// 1. Payoff exactness: the worked example with zero tolerance, then a
//    10,000-case conservation sweep over random contribution vectors.
std::string criterion_payoff() {
  auto start = Clock::now();

  std::vector<Points> gains = round_payoff({8, 2}, 10, 16, 2);
  if (gains[0].tenths() != 100 || gains[1].tenths() != 160) {
    return "worked example [8,2] gave [" + gains[0].str() + ", " + gains[1].str() +
           "], expected [10.0, 16.0]";
  }
  if (gains[0].value() != 10.0 || gains[1].value() != 16.0) {
    return "worked-example doubles are not exactly 10.0 / 16.0";
  }
  if ((gains[1] - gains[0]).tenths() != Points::whole(6).tenths()) {
    return "free-rider gap is " + (gains[1] - gains[0]).str() + ", expected exactly 6.0";
  }

  SplitMix64 rng(20260822);
  for (int trial = 0; trial < 10000; ++trial) {
    int n = rng.next_int(0, 1) == 0 ? 2 : 4;
    std::vector<int> contributions(n);
    std::int64_t total = 0;
    for (int& c : contributions) {
      c = rng.next_int(0, 10);
      total += c;
    }
    std::vector<Points> g = round_payoff(contributions, 10, 16, n);
    std::int64_t sum = 0;
    for (const Points& p : g) sum += p.tenths();
    std::int64_t expected = static_cast<std::int64_t>(n) * 10 * 10 + 6 * total;
    if (sum != expected) {
      return "conservation broke at trial " + std::to_string(trial) + ": sum " +
             std::to_string(sum) + " tenths vs N*E + 0.6*T = " + std::to_string(expected);
    }
  }

  double elapsed = seconds_since(start);
  if (elapsed >= 1.0) return "sweep took " + std::to_string(elapsed) + "s, budget is 1s";
  return "";
}

// ---------------------------------------------------------------------------
// 2. Free riding dominates: exhaustive best-response search over every
//    opponent profile, plus the analytic per-point marginal.
std::string criterion_dominance() {
  auto start = Clock::now();

  GameConfig pair_cfg;
  pair_cfg.personas = {Persona::Neutral, Persona::Neutral};
  for (int other = 0; other <= 10; ++other) {
    int br = best_response(other, pair_cfg);
    if (br != 0) {
      return "2-player best response vs opponent " + std::to_string(other) + " is " +
             std::to_string(br) + ", expected 0";
    }
  }

  GameConfig quad_cfg;
  quad_cfg.num_players = 4;
  quad_cfg.study_style = StudyStyle::Study3;
  quad_cfg.personas = std::vector<Persona>(4, Persona::Neutral);
  for (int others = 0; others <= 30; ++others) {
    int br = best_response(others, quad_cfg);
    if (br != 0) {
      return "4-player best response vs others' total " + std::to_string(others) + " is " +
             std::to_string(br) + ", expected 0";
    }
  }

  for (const GameConfig* cfg : {&pair_cfg, &quad_cfg}) {
    // marginal of contributing one point: m/N - 1, exact in tenths as
    // m_tenths - 10*N.
    if (cfg->multiplier_tenths - 10 * cfg->num_players >= 0) {
      return "per-point marginal is not negative for N=" + std::to_string(cfg->num_players);
    }
    if (!(cfg->multiplier() / cfg->num_players - 1.0 < 0.0)) {
      return "m/N - 1 not < 0 for N=" + std::to_string(cfg->num_players);
    }
  }

  double elapsed = seconds_since(start);
  if (elapsed >= 1.0) return "search took " + std::to_string(elapsed) + "s, budget is 1s";
  return "";
}

// ---------------------------------------------------------------------------
// 3. Condition-matrix fidelity: cell counts, name/no-name prompt content over
//    the whole grid, and byte-equality with the published prompt texts after
//    placeholder substitution.
std::string criterion_conditions() {
  std::vector<AgentSpec> pair = {llm("GPT-4o"), llm("Claude Sonnet 4")};
  std::vector<AgentSpec> quad = {llm("Qwen3")};

  std::vector<std::vector<ConditionCell>> grids;
  grids.push_back(enumerate_conditions(StudyStyle::Study1, pair));
  grids.push_back(enumerate_conditions(StudyStyle::Study2, pair));
  grids.push_back(enumerate_conditions(StudyStyle::Study3, quad));
  if (grids[0].size() != 18 || grids[1].size() != 18) {
    return "pairwise grids have " + std::to_string(grids[0].size()) + "/" +
           std::to_string(grids[1].size()) + " cells, expected 18 each";
  }
  if (grids[2].size() != 6) {
    return "self-play grid has " + std::to_string(grids[2].size()) + " cells, expected 6";
  }

  for (const auto& grid : grids) {
    for (const ConditionCell& cell : grid) {
      int players = players_for_study(cell.study);
      for (int i = 0; i < static_cast<int>(cell.agent_specs.size()); ++i) {
        std::string name = cell.agent_specs[i].display_name();
        std::string prompt = build_system_prompt(cell.study, cell.personas[i], cell.condition,
                                                 name, players);
        if (cell.condition == Condition::Name && prompt.find(name) == std::string::npos) {
          return cell.label() + " player " + std::to_string(i) +
                 ": name-condition prompt lacks the agent's own display name '" + name + "'";
        }
        if (cell.condition == Condition::NoName &&
            prompt.find(noname_phrase(cell.study)) == std::string::npos) {
          return cell.label() + " player " + std::to_string(i) +
                 ": no-name prompt lacks the phrase '" + noname_phrase(cell.study) + "'";
        }
      }
    }
  }

  const fs::path golden_root = fs::path(PGG_TEST_DATA_DIR) / "appendix_golden";
  const Persona personas[] = {Persona::Collective, Persona::Neutral, Persona::Selfish};
  const Condition conditions[] = {Condition::NoName, Condition::Name};
  for (StudyStyle study : {StudyStyle::Study1, StudyStyle::Study2, StudyStyle::Study3}) {
    for (Persona persona : personas) {
      for (Condition condition : conditions) {
        std::string slug = std::string(to_string(persona)) + "_" + to_string(condition) + ".txt";
        std::string golden = read_file(golden_root / to_string(study) / slug);
        std::string expected = replace_all(golden, "<MODEL-NAME>", "GPT-4o");
        std::string built = build_system_prompt(study, persona, condition, "GPT-4o",
                                                players_for_study(study),
                                                TemplateEdition::AsPrinted);
        if (built != expected) {
          return std::string(to_string(study)) + "/" + slug +
                 " differs from the substituted golden text";
        }
      }
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// 4. Determinism: the same seeded scripted run through the CLI, once at
//    parallelism 1 and once at 8, must persist byte-identical transcripts.
std::string criterion_determinism() {
  auto start = Clock::now();
  fs::path dir1 = fresh_dir("det_p1");
  fs::path dir8 = fresh_dir("det_p8");

  const std::string agents =
      R"('[{"kind":"scripted","strategy":"random"},{"kind":"scripted","strategy":"matcher"}]')";
  const std::string base = "run --study study1 --games 5 --seed 20260822 --agents " + agents;
  int rc1 = run_cli(base + " --parallelism 1 --out " + dir1.string());
  if (rc1 != 0) return "CLI run at parallelism 1 exited " + std::to_string(rc1);
  int rc8 = run_cli(base + " --parallelism 8 --out " + dir8.string());
  if (rc8 != 0) return "CLI run at parallelism 8 exited " + std::to_string(rc8);

  std::vector<AgentSpec> specs = {AgentSpec{ScriptedSpec{StrategyId::RandomUniform, 0}},
                                  AgentSpec{ScriptedSpec{StrategyId::Matcher, 0}}};
  auto cells = enumerate_conditions(StudyStyle::Study1, specs, 5);
  if (cells.size() != 18) return "expected 18 cells, got " + std::to_string(cells.size());
  for (const ConditionCell& cell : cells) {
    fs::path f1 = dir1 / (cell.label() + ".jsonl");
    fs::path f8 = dir8 / (cell.label() + ".jsonl");
    if (!fs::exists(f1) || !fs::exists(f8)) return cell.label() + ".jsonl missing from a run";
    if (read_file(f1) != read_file(f8)) {
      return cell.label() + ".jsonl differs between parallelism 1 and 8";
    }
  }

  double elapsed = seconds_since(start);
  if (elapsed >= 30.0) return "runs took " + std::to_string(elapsed) + "s, budget is 30s";
  return "";
}

// ---------------------------------------------------------------------------
// 5. Spearman equals the rank-then-Pearson oracle on every input of length
//    2..6 over the alphabet {1,2,3}, and is exactly +/-1 on monotone inputs.
std::vector<double> oracle_ranks(const std::vector<double>& values) {
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto lo = std::lower_bound(sorted.begin(), sorted.end(), values[i]) - sorted.begin();
    auto hi = std::upper_bound(sorted.begin(), sorted.end(), values[i]) - sorted.begin();
    ranks[i] = (static_cast<double>(lo) + 1.0 + static_cast<double>(hi)) / 2.0;
  }
  return ranks;
}

double oracle_pearson(const std::vector<double>& a, const std::vector<double>& b) {
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(a.size());
  mb /= static_cast<double>(b.size());
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sxx += (a[i] - ma) * (a[i] - ma);
    syy += (b[i] - mb) * (b[i] - mb);
    sxy += (a[i] - ma) * (b[i] - mb);
  }
  if (sxx <= 0.0 || syy <= 0.0) return std::nan("");
  return sxy / std::sqrt(sxx * syy);
}

std::string criterion_spearman() {
  auto start = Clock::now();

  for (int n = 2; n <= 6; ++n) {
    int combos = 1;
    for (int i = 0; i < n; ++i) combos *= 3;

    std::vector<std::vector<double>> values(combos);
    std::vector<std::vector<double>> ranks(combos);
    for (int code = 0; code < combos; ++code) {
      std::vector<double> v(n);
      int rest = code;
      for (int i = 0; i < n; ++i) {
        v[i] = static_cast<double>(rest % 3 + 1);
        rest /= 3;
      }
      ranks[code] = oracle_ranks(v);
      values[code] = std::move(v);
    }

    for (int xi = 0; xi < combos; ++xi) {
      for (int yi = 0; yi < combos; ++yi) {
        SpearmanResult got = spearman(values[xi], values[yi]);
        double want = oracle_pearson(ranks[xi], ranks[yi]);
        if (std::isnan(want)) {
          if (got.kind != SpearmanResult::Kind::NoVariance) {
            return "length " + std::to_string(n) + " case " + std::to_string(xi) + "/" +
                   std::to_string(yi) + ": oracle degenerate but kind is Value";
          }
        } else if (got.kind != SpearmanResult::Kind::Value ||
                   std::abs(got.rho - want) > 1e-12) {
          return "length " + std::to_string(n) + " case " + std::to_string(xi) + "/" +
                 std::to_string(yi) + ": rho " + std::to_string(got.rho) + " vs oracle " +
                 std::to_string(want);
        }
      }
    }
  }

  for (int n = 2; n <= 6; ++n) {
    std::vector<double> xs(n), up(n), down(n);
    for (int i = 0; i < n; ++i) {
      xs[i] = static_cast<double>(i + 1);
      up[i] = static_cast<double>(3 * i + 2);
      down[i] = static_cast<double>(-5 * i);
    }
    SpearmanResult rup = spearman(xs, up);
    SpearmanResult rdown = spearman(xs, down);
    if (rup.kind != SpearmanResult::Kind::Value || rup.rho != 1.0) {
      return "monotone increasing length " + std::to_string(n) + " is not exactly +1";
    }
    if (rdown.kind != SpearmanResult::Kind::Value || rdown.rho != -1.0) {
      return "monotone decreasing length " + std::to_string(n) + " is not exactly -1";
    }
  }

  double elapsed = seconds_since(start);
  if (elapsed >= 10.0) return "sweep took " + std::to_string(elapsed) + "s, budget is 10s";
  return "";
}

// ---------------------------------------------------------------------------
// 6. Statistics pipeline on synthetic batches with known means.
BatchResult constant_batch(Condition condition, int value, int games) {
  GameConfig cfg;
  cfg.num_rounds = 4;
  cfg.condition = condition;
  cfg.personas = {Persona::Neutral, Persona::Neutral};

  BatchResult batch;
  batch.cell.study = StudyStyle::Study1;
  batch.cell.personas = cfg.personas;
  batch.cell.condition = condition;
  batch.cell.agent_specs = {llm("GPT-4o"), llm("GPT-4o")};
  batch.cell.games = games;

  for (int g = 0; g < games; ++g) {
    GameTranscript t;
    t.config = cfg;
    t.agent_ids = {"llm:gpt-4o", "llm:gpt-4o"};
    t.display_names = {"GPT-4o", "GPT-4o"};
    t.game_seed = derive_seed(1, static_cast<std::uint64_t>(g));
    t.game_index = g;
    GameState state = new_game(cfg);
    for (int r = 0; r < cfg.num_rounds; ++r) {
      auto [next, record] = advance_round(state, {value, value});
      state = next;
      t.rounds.push_back(record);
    }
    t.exchanges.resize(2);
    batch.transcripts.push_back(std::move(t));
  }
  return batch;
}

BatchResult one_round_batch(const std::vector<int>& per_game) {
  GameConfig cfg;
  cfg.num_rounds = 1;
  cfg.personas = {Persona::Neutral, Persona::Neutral};

  BatchResult batch;
  batch.cell.study = StudyStyle::Study1;
  batch.cell.personas = cfg.personas;
  batch.cell.condition = Condition::NoName;
  batch.cell.agent_specs = {llm("GPT-4o"), llm("GPT-4o")};
  batch.cell.games = static_cast<int>(per_game.size());

  for (std::size_t g = 0; g < per_game.size(); ++g) {
    GameTranscript t;
    t.config = cfg;
    t.agent_ids = {"llm:gpt-4o", "llm:gpt-4o"};
    t.display_names = {"GPT-4o", "GPT-4o"};
    t.game_seed = derive_seed(2, g);
    t.game_index = static_cast<int>(g);
    GameState state = new_game(cfg);
    auto [next, record] = advance_round(state, {per_game[g], per_game[g]});
    t.rounds.push_back(record);
    t.exchanges.resize(2);
    batch.transcripts.push_back(std::move(t));
  }
  return batch;
}

std::string criterion_statistics() {
  BatchResult name10 = constant_batch(Condition::Name, 10, 50);
  BatchResult noname6 = constant_batch(Condition::NoName, 6, 50);
  std::vector<DeltaRow> up = delta_table(name10, noname6);
  for (const DeltaRow& row : up) {
    if (row.delta != 4.0 || !row.significant || row.p_value != 0.0) {
      return "all-10 name vs all-6 noname gave delta " + std::to_string(row.delta) + " p " +
             std::to_string(row.p_value) + ", expected +4.0 significant";
    }
  }

  BatchResult name6 = constant_batch(Condition::Name, 6, 50);
  BatchResult noname10 = constant_batch(Condition::NoName, 10, 50);
  std::vector<DeltaRow> down = delta_table(name6, noname10);
  for (const DeltaRow& row : down) {
    if (row.delta != -4.0 || !row.significant) {
      return "all-6 name vs all-10 noname gave delta " + std::to_string(row.delta) +
             ", expected -4.0 significant";
    }
  }
  if (up[0].delta + down[0].delta != 0.0) return "deltas are not antisymmetric";

  std::vector<DeltaRow> self = delta_table(name10, noname10);
  for (const DeltaRow& row : self) {
    if (row.delta != 0.0 || row.significant || row.p_value != 1.0) {
      return "zero-variance self-comparison gave delta " + std::to_string(row.delta) + " p " +
             std::to_string(row.p_value) + ", expected 0.0 insignificant";
    }
  }

  // CI half-width must scale as 1/sqrt(n). The n=100 batch holds the same
  // i.i.d. draws as the n=25 batch four times over, so the empirical spread
  // matches and only the sample size moves the interval.
  SplitMix64 rng(99);
  std::vector<int> draws(25);
  for (int& d : draws) d = rng.next_int(0, 10);
  std::vector<int> repeated;
  for (int copy = 0; copy < 4; ++copy) repeated.insert(repeated.end(), draws.begin(), draws.end());

  PerRoundStats small = per_round_stats(one_round_batch(draws), 0);
  PerRoundStats large = per_round_stats(one_round_batch(repeated), 0);
  double hw25 = small.per_round[0].ci_half_width;
  double hw100 = large.per_round[0].ci_half_width;
  if (!(hw25 > 0.0)) return "n=25 half-width is not positive";
  if (small.per_round[0].n != 25 || large.per_round[0].n != 100) {
    return "unexpected n in per-round stats";
  }
  if (std::abs(hw100 - hw25 / 2.0) > 0.05 * (hw25 / 2.0)) {
    return "n=100 half-width " + std::to_string(hw100) + " is not within 5% of half the n=25 value " +
           std::to_string(hw25 / 2.0);
  }
  return "";
}

// ---------------------------------------------------------------------------
// 7. Masking golden corpus plus idempotence on randomized texts.
std::string criterion_masking() {
  const std::vector<std::string>& names = default_mask_names();
  const std::regex standalone(R"(\b(AI|models?)\b)", std::regex::icase);

  std::ifstream in(fs::path(PGG_TEST_DATA_DIR) / "masking_corpus.json");
  if (!in) return "cannot open masking_corpus.json";
  nlohmann::json corpus = nlohmann::json::parse(in);
  for (const auto& entry : corpus) {
    std::string input = entry.at("input").get<std::string>();
    std::string expected = entry.at("expected").get<std::string>();
    std::string masked = mask_reasoning(input, names);
    if (masked != expected) {
      return "corpus entry '" + entry.at("note").get<std::string>() + "' masked to \"" + masked +
             "\"";
    }
    std::string low = lower(masked);
    for (const std::string& name : names) {
      if (low.find(lower(name)) != std::string::npos) {
        return "corpus entry '" + entry.at("note").get<std::string>() + "' still contains '" +
               name + "'";
      }
    }
    if (std::regex_search(masked, standalone)) {
      return "corpus entry '" + entry.at("note").get<std::string>() +
             "' still contains a standalone AI/model token";
    }
  }

  std::string everything =
      "Llama 4 Maverick and Claude Sonnet 4 told GPT-4o that Sonnet 4, Llama 4 and Qwen3 are "
      "AI models; the model agreed.";
  std::string masked_all = mask_reasoning(everything, names);
  std::string low_all = lower(masked_all);
  for (const std::string& name : names) {
    if (low_all.find(lower(name)) != std::string::npos) {
      return "combined text still contains '" + name + "'";
    }
  }
  if (std::regex_search(masked_all, standalone)) {
    return "combined text still contains a standalone AI/model token";
  }

  const std::vector<std::string> vocab = {
      "Llama 4 Maverick", "Claude Sonnet 4", "GPT-4o",  "Sonnet 4", "Llama 4",  "Qwen3",
      "qwen3",            "gpt-4o",          "AI",      "ai",       "model",    "models",
      "Model",            "remodel",         "mailman", "airway",   "the",      "player",
      "contributed",      "points.",         "pool,",   "round!",   "I",        "will",
      "match",            "their",           "average"};
  const std::vector<std::string> seps = {" ", " ", " ", "  ", "   ", "\n", "\n\n", "\t", " \n "};
  SplitMix64 rng(424242);
  for (int trial = 0; trial < 1000; ++trial) {
    std::string text;
    int tokens = rng.next_int(1, 40);
    for (int t = 0; t < tokens; ++t) {
      if (t > 0) text += seps[static_cast<std::size_t>(rng.next_int(0, static_cast<int>(seps.size()) - 1))];
      text += vocab[static_cast<std::size_t>(rng.next_int(0, static_cast<int>(vocab.size()) - 1))];
    }
    std::string once = mask_reasoning(text, names);
    std::string twice = mask_reasoning(once, names);
    if (once != twice) {
      return "masking is not idempotent on randomized text " + std::to_string(trial);
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// 8. Offline path: record one full game against the mock backend, replay it
//    to a byte-identical transcript with the network poisoned, and survive
//    the validate subcommand.
std::string criterion_offline_replay() {
  fs::path dir = fresh_dir("offline");
  fs::path fixture = dir / "session.jsonl";
  fs::path rec_dir = dir / "rec";
  fs::path rep_dir = dir / "rep";

  const std::string agents =
      R"('[{"kind":"llm","model":"gpt-4o","display_name":"GPT-4o"},)"
      R"({"kind":"llm","model":"gpt-4o","display_name":"Claude Sonnet 4"}]')";
  const std::string base =
      "run --study study1 --pairing CC --condition noname --games 1 --seed 91 --agents " + agents;

  int rc = run_cli(base + " --gateway mock --record " + fixture.string() + " --out " +
                   rec_dir.string());
  if (rc != 0) return "recording run exited " + std::to_string(rc);
  rc = run_cli(base + " --gateway replay --fixture " + fixture.string() + " --out " +
               rep_dir.string());
  if (rc != 0) return "replay run exited " + std::to_string(rc);

  fs::path rec_file = rec_dir / "study1_CC_noname.jsonl";
  fs::path rep_file = rep_dir / "study1_CC_noname.jsonl";
  std::string recorded = read_file(rec_file);
  if (recorded != read_file(rep_file)) {
    return "replayed transcript is not byte-identical to the recorded one";
  }

  std::vector<FixtureEntry> entries = load_fixture(fixture);
  if (entries.size() != 40) {
    return "fixture holds " + std::to_string(entries.size()) +
           " exchanges, expected 40 (2 agents x 20 rounds)";
  }

  rc = run_cli("validate " + rep_file.string());
  if (rc != 0) return "validate subcommand exited " + std::to_string(rc) + " on the replay";

  // The same replay in-process, with a poisoned inner transport: the
  // transcript must come back identical without a single network touch.
  auto poison = std::make_shared<PoisonTransport>();
  auto replay = std::make_shared<RecordReplayTransport>(RecordReplayTransport::Mode::Replay,
                                                        fixture, poison);
  Gateway gateway(replay, TransportPolicy{});

  std::vector<AgentSpec> specs = {llm("GPT-4o"),
                                  AgentSpec{LlmSpec{"openai", "gpt-4o", "Claude Sonnet 4", 1.0}}};
  auto cells = enumerate_conditions(StudyStyle::Study1, specs, 1);
  const ConditionCell* cell = nullptr;
  for (const ConditionCell& c : cells) {
    if (c.label() == "study1_CC_noname") cell = &c;
  }
  if (!cell) return "study1_CC_noname cell not found";

  RunContext ctx;
  ctx.gateway = &gateway;
  ctx.master_seed = 91;
  BatchResult batch = run_batch(*cell, ctx);
  if (batch.invalid_count != 0 || batch.transcripts.size() != 1) {
    return "in-process replay produced " + std::to_string(batch.invalid_count) + " invalid of " +
           std::to_string(batch.transcripts.size());
  }
  std::string line = transcript_to_json(batch.transcripts[0], *cell, 0) + "\n";
  if (line != recorded) return "in-process replay transcript drifted from the recorded file";
  if (poison->touches() != 0) {
    return "poisoned transport was touched " + std::to_string(poison->touches()) + " times";
  }
  return "";
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<std::string()> check;
  };
  const std::vector<Criterion> criteria = {
      {"payoff identity exact in tenths (worked example + 10000-case conservation sweep)",
       criterion_payoff},
      {"zero contribution dominates (exhaustive best response, negative marginal)",
       criterion_dominance},
      {"condition matrix fidelity (18+6 cells, own-name injection, golden templates)",
       criterion_conditions},
      {"byte-identical transcripts across parallelism 1 and 8 (CLI, seeded scripted run)",
       criterion_determinism},
      {"spearman equals rank-then-pearson oracle (exhaustive length<=6 over {1,2,3})",
       criterion_spearman},
      {"delta table and CI behaviour on synthetic batches (+/-4.0, zero-variance, 1/sqrt(n))",
       criterion_statistics},
      {"masking scrubs names and standalone AI/model tokens, idempotent on 1000 random texts",
       criterion_masking},
      {"recorded session replays bit-identically offline and validates clean",
       criterion_offline_replay},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    std::string detail;
    try {
      detail = criterion.check();
    } catch (const std::exception& e) {
      detail = std::string("unexpected exception: ") + e.what();
    }
    if (detail.empty()) {
      std::printf("[PASS] %s\n", criterion.name);
    } else {
      std::printf("[FAIL] %s: %s\n", criterion.name, detail.c_str());
      ++failures;
    }
  }
  if (failures != 0) {
    std::printf("%d of %zu acceptance criteria failed\n", failures, criteria.size());
    return 1;
  }
  std::printf("all %zu acceptance criteria hold\n", criteria.size());
  return 0;
}
