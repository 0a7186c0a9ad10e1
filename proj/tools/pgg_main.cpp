#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pgg/manifest.hpp"
#include "pgg/report.hpp"
#include "pgg/rng.hpp"
#include "pgg/runner.hpp"
#include "pgg/sentiment.hpp"
#include "pgg/stats.hpp"

namespace {

using namespace pgg;
using nlohmann::ordered_json;

int exit_code_for(const Error& e) {
  switch (e.category()) {
    case ErrorCategory::Config:
    case ErrorCategory::Validation: return 2;
    case ErrorCategory::Gateway: return 3;
    case ErrorCategory::Io: return 4;
    default: return 1;
  }
}

struct RunFlags {
  std::string manifest_path;
  std::string study;
  std::string condition;
  std::vector<std::string> pairings;
  int games = -1;
  std::optional<std::uint64_t> seed;
  int parallelism = 0;
  int rounds = 0;
  int endowment = 0;
  std::string multiplier;
  std::string edition;
  std::string out_dir;
  std::string gateway_mode;
  std::string fixture;
  std::string record;
  std::string agents_json;
};

RunManifest assemble_manifest(const RunFlags& flags) {
  RunManifest m;
  if (!flags.manifest_path.empty()) {
    m = load_manifest(flags.manifest_path);
  }
  if (!flags.study.empty()) m.study = parse_study(flags.study);
  if (!flags.agents_json.empty()) {
    m.agents.clear();
    nlohmann::json arr;
    try {
      arr = nlohmann::json::parse(flags.agents_json);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("--agents is not valid JSON: ") + e.what());
    }
    if (!arr.is_array()) throw ConfigError("--agents must be a JSON array");
    for (const auto& a : arr) m.agents.push_back(agent_spec_from_json(a.dump()));
  }
  if (!flags.condition.empty()) m.condition_filter = parse_condition(flags.condition);
  if (!flags.pairings.empty()) m.pairing_filter = flags.pairings;
  if (flags.games >= 0) m.games = flags.games;
  if (flags.seed) m.seed = *flags.seed;
  if (flags.parallelism > 0) m.parallelism = flags.parallelism;
  if (flags.rounds > 0) m.num_rounds = flags.rounds;
  if (flags.endowment > 0) m.endowment = flags.endowment;
  if (!flags.multiplier.empty()) m.multiplier_tenths = parse_tenths(flags.multiplier);
  if (!flags.edition.empty()) m.edition = parse_edition(flags.edition);
  if (!flags.out_dir.empty()) m.out_dir = flags.out_dir;
  if (!flags.gateway_mode.empty()) m.gateway.mode = parse_gateway_mode(flags.gateway_mode);
  if (!flags.fixture.empty()) m.gateway.fixture = flags.fixture;
  if (!flags.record.empty()) m.gateway.record = flags.record;
  m.validate();
  return m;
}

std::vector<std::pair<std::string, std::string>> llm_routes(const RunManifest& m) {
  std::vector<std::pair<std::string, std::string>> routes;
  for (const auto& spec : m.agents) {
    if (const auto* l = std::get_if<LlmSpec>(&spec.kind)) {
      routes.emplace_back(l->provider, l->model);
    }
  }
  return routes;
}

int cmd_run(const RunFlags& flags) {
  auto started = std::chrono::steady_clock::now();
  RunManifest m = assemble_manifest(flags);

  auto cells = enumerate_conditions(m.study, m.agents, m.games);
  std::vector<ConditionCell> selected;
  for (const auto& cell : cells) {
    if (m.condition_filter && cell.condition != *m.condition_filter) continue;
    if (!m.pairing_filter.empty()) {
      bool hit = false;
      for (const auto& p : m.pairing_filter) hit = hit || p == cell.pairing_label();
      if (!hit) continue;
    }
    selected.push_back(cell);
  }
  if (selected.empty()) throw ConfigError("filters selected no condition cells");

  bool any_llm = false;
  for (const auto& spec : m.agents) any_llm = any_llm || !spec.scripted();

  std::shared_ptr<Transport> transport;
  std::optional<Gateway> gateway;
  if (any_llm) {
    transport = build_transport(m.gateway, llm_routes(m));
    gateway.emplace(transport, m.gateway.policy);
  }

  RunContext ctx;
  ctx.gateway = gateway ? &*gateway : nullptr;
  ctx.master_seed = m.seed;
  ctx.parallelism = m.parallelism;
  ctx.num_rounds = m.num_rounds;
  ctx.endowment = m.endowment;
  ctx.multiplier_tenths = m.multiplier_tenths;
  ctx.edition = m.edition;

  ordered_json summary_cells = ordered_json::array();
  for (const auto& cell : selected) {
    BatchResult batch = run_batch(cell, ctx);
    std::filesystem::path file = std::filesystem::path(m.out_dir) / (cell.label() + ".jsonl");
    persist_transcripts(batch, file);
    std::printf("%s: %d games (%d invalid) -> %s\n", cell.label().c_str(), cell.games,
                batch.invalid_count, file.string().c_str());
    summary_cells.push_back({{"label", cell.label()},
                             {"games", cell.games},
                             {"invalid", batch.invalid_count},
                             {"file", file.string()}});
  }

  auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
  ordered_json summary;
  summary["study"] = to_string(m.study);
  summary["seed"] = m.seed;
  summary["parallelism"] = m.parallelism;
  summary["gateway_mode"] = to_string(m.gateway.mode);
  summary["edition"] = to_string(m.edition);
  summary["cells"] = std::move(summary_cells);
  if (gateway) {
    auto counters = gateway->counters();
    summary["gateway_requests"] = counters.requests;
    summary["gateway_retries"] = counters.retries;
  }
  summary["elapsed_ms"] = elapsed.count();

  std::filesystem::path summary_path = std::filesystem::path(m.out_dir) / "run_summary.json";
  std::ofstream out(summary_path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + summary_path.string() + " for writing");
  out << summary.dump(2) << '\n';
  out.flush();
  if (!out) throw IoError("failed writing " + summary_path.string());
  std::printf("summary -> %s\n", summary_path.string().c_str());
  return 0;
}

struct ReportFlags {
  std::string mode;
  std::string out_dir = "out";
  std::vector<std::string> files;
  std::string ci = "normal";
  std::string aggregation = "raw";
  std::string judge_provider = "openai";
  std::string judge_model;
  double judge_temperature = 0.1;
  std::string gateway_mode = "mock";
  std::string fixture;
  std::string record;
};

int cmd_report(const ReportFlags& flags) {
  if (flags.files.empty()) throw ConfigError("report needs at least one transcript file");
  std::vector<BatchResult> batches;
  for (const auto& f : flags.files) batches.push_back(load_transcripts(f));

  if (flags.mode == "curves") {
    CiMethod method = flags.ci == "bootstrap" ? CiMethod::Bootstrap : CiMethod::Normal;
    CurveExport exported = export_curves(batches, flags.out_dir, method);
    std::printf("curves -> %s", exported.csv.string().c_str());
    for (const auto& svg : exported.svgs) std::printf(", %s", svg.string().c_str());
    std::printf("\n");
    return 0;
  }

  if (flags.mode == "deltas") {
    // Pair each name batch with its noname partner by (study, pairing).
    std::map<std::pair<std::string, std::string>, std::pair<const BatchResult*, const BatchResult*>>
        pairs;
    for (const auto& b : batches) {
      auto key = std::make_pair(std::string(to_string(b.cell.study)), b.cell.pairing_label());
      if (b.cell.condition == Condition::Name) {
        pairs[key].first = &b;
      } else {
        pairs[key].second = &b;
      }
    }
    std::vector<DeltaRow> rows;
    for (const auto& [key, pair] : pairs) {
      if (!pair.first || !pair.second) {
        throw ValidationError("pairing " + key.first + " " + key.second +
                              " lacks its partner condition; pass both files");
      }
      auto cell_rows = delta_table(*pair.first, *pair.second);
      rows.insert(rows.end(), cell_rows.begin(), cell_rows.end());
    }
    TableExport exported = export_deltas(rows, flags.out_dir);
    std::printf("deltas -> %s, %s\n", exported.csv.string().c_str(),
                exported.svg.string().c_str());
    return 0;
  }

  if (flags.mode == "sentiment") {
    if (flags.judge_model.empty()) throw ConfigError("sentiment mode needs --judge-model");
    GatewaySettings settings;
    settings.mode = parse_gateway_mode(flags.gateway_mode);
    settings.fixture = flags.fixture;
    settings.record = flags.record;
    if (settings.mode == GatewayMode::Replay && settings.fixture.empty()) {
      throw ConfigError("replay gateway needs --fixture");
    }
    Gateway gateway(build_transport(settings, {{flags.judge_provider, flags.judge_model}}),
                    settings.policy);
    JudgeSpec judge{flags.judge_provider, flags.judge_model, flags.judge_temperature};
    SentimentAggregation aggregation = flags.aggregation == "round-average"
                                           ? SentimentAggregation::PerRoundAverage
                                           : SentimentAggregation::Raw;
    std::vector<SentimentCorrelation> correlations;
    for (const auto& batch : batches) {
      auto records = score_batch(batch, gateway, judge);
      auto cors = sentiment_correlation(batch, records, aggregation);
      correlations.insert(correlations.end(), cors.begin(), cors.end());
    }
    TableExport exported = export_sentiment(correlations, flags.out_dir);
    std::printf("sentiment -> %s, %s\n", exported.csv.string().c_str(),
                exported.svg.string().c_str());
    return 0;
  }

  throw ConfigError("unknown report mode '" + flags.mode +
                    "' (expected curves/deltas/sentiment)");
}

int cmd_validate(const std::vector<std::string>& files) {
  if (files.empty()) throw ConfigError("validate needs at least one transcript file");
  int total = 0;
  for (const auto& f : files) {
    auto violations = validate_file(f);
    if (violations.empty()) {
      std::printf("%s: OK\n", f.c_str());
      continue;
    }
    total += static_cast<int>(violations.size());
    for (const auto& v : violations) {
      if (v.game_index < 0) {
        std::printf("%s: %s\n", f.c_str(), v.what.c_str());
      } else {
        std::printf("%s: game %d round %d: %s\n", f.c_str(), v.game_index, v.round,
                    v.what.c_str());
      }
    }
  }
  return total == 0 ? 0 : 1;
}

int cmd_fixtures_record(const RunFlags& flags, const std::string& session) {
  RunFlags patched = flags;
  patched.record = session;
  return cmd_run(patched);
}

int cmd_fixtures_inspect(const std::string& session) {
  auto entries = load_fixture(session);
  for (const auto& e : entries) {
    std::string preview = e.response.substr(0, 60);
    for (char& c : preview) {
      if (c == '\n' || c == '\r') c = ' ';
    }
    std::printf("%s model=%s messages=%zu response=%s%s\n", hash_hex(e.hash).c_str(),
                e.request.model.c_str(), e.request.messages.size(), preview.c_str(),
                e.response.size() > 60 ? "..." : "");
  }
  std::printf("%zu entries\n", entries.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"batch harness for the iterated public goods game"};
  app.require_subcommand(1);

  RunFlags run_flags;
  auto add_run_flags = [&](CLI::App* cmd) {
    cmd->add_option("--manifest", run_flags.manifest_path, "run manifest (JSON)");
    cmd->add_option("--study", run_flags.study, "study1|study2|study3");
    cmd->add_option("--condition", run_flags.condition, "restrict to name|noname");
    cmd->add_option("--pairing", run_flags.pairings, "restrict to pairing labels, e.g. CS");
    cmd->add_option("--games", run_flags.games, "games per cell (0: study default)");
    cmd->add_option_function<std::uint64_t>(
        "--seed", [&run_flags](std::uint64_t v) { run_flags.seed = v; }, "master seed");
    cmd->add_option("--parallelism", run_flags.parallelism, "worker threads per batch");
    cmd->add_option("--rounds", run_flags.rounds, "rounds per game");
    cmd->add_option("--endowment", run_flags.endowment, "points handed out per round");
    cmd->add_option("--multiplier", run_flags.multiplier, "public-good multiplier, e.g. 1.6");
    cmd->add_option("--edition", run_flags.edition, "template edition: corrected|as-printed");
    cmd->add_option("--out", run_flags.out_dir, "output directory");
    cmd->add_option("--gateway", run_flags.gateway_mode, "live|replay|mock");
    cmd->add_option("--fixture", run_flags.fixture, "session fixture for replay");
    cmd->add_option("--record", run_flags.record, "capture exchanges to this session file");
    cmd->add_option("--agents", run_flags.agents_json, "agent specs as a JSON array");
  };

  CLI::App* run_cmd = app.add_subcommand("run", "play batches of games");
  add_run_flags(run_cmd);

  ReportFlags report_flags;
  CLI::App* report_cmd = app.add_subcommand("report", "turn transcripts into figures and tables");
  report_cmd->add_option("--mode", report_flags.mode, "curves|deltas|sentiment")->required();
  report_cmd->add_option("--out", report_flags.out_dir, "output directory");
  report_cmd->add_option("files", report_flags.files, "transcript .jsonl files")->required();
  report_cmd->add_option("--ci", report_flags.ci, "normal|bootstrap");
  report_cmd->add_option("--aggregation", report_flags.aggregation, "raw|round-average");
  report_cmd->add_option("--judge-provider", report_flags.judge_provider, "judge provider id");
  report_cmd->add_option("--judge-model", report_flags.judge_model, "judge model name");
  report_cmd->add_option("--judge-temperature", report_flags.judge_temperature,
                         "judge sampling temperature");
  report_cmd->add_option("--gateway", report_flags.gateway_mode, "live|replay|mock (judge)");
  report_cmd->add_option("--fixture", report_flags.fixture, "judge session fixture for replay");
  report_cmd->add_option("--record", report_flags.record, "capture judge exchanges");

  std::vector<std::string> validate_files;
  CLI::App* validate_cmd = app.add_subcommand("validate", "re-check transcript invariants");
  validate_cmd->add_option("files", validate_files, "transcript .jsonl files")->required();

  CLI::App* fixtures_cmd = app.add_subcommand("fixtures", "manage recorded gateway sessions");
  std::string session_path;
  CLI::App* record_cmd = fixtures_cmd->add_subcommand("record", "run and capture the exchanges");
  add_run_flags(record_cmd);
  record_cmd->add_option("--session", session_path, "session file to write")->required();
  CLI::App* inspect_cmd = fixtures_cmd->add_subcommand("inspect", "list a session's entries");
  inspect_cmd->add_option("--session", session_path, "session file to read")->required();
  fixtures_cmd->require_subcommand(1);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return cmd_run(run_flags);
    if (report_cmd->parsed()) return cmd_report(report_flags);
    if (validate_cmd->parsed()) return cmd_validate(validate_files);
    if (fixtures_cmd->parsed()) {
      if (record_cmd->parsed()) return cmd_fixtures_record(run_flags, session_path);
      if (inspect_cmd->parsed()) return cmd_fixtures_inspect(session_path);
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error (%s): %s\n", to_string(e.category()), e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
