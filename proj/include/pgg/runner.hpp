#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "pgg/agents.hpp"
#include "pgg/game.hpp"
#include "pgg/gateway.hpp"

namespace pgg {

inline constexpr int kTranscriptSchemaVersion = 1;

/// One cell of the experiment grid: a persona pairing under one naming
/// condition, with the agent specs that will play it.
struct ConditionCell {
  StudyStyle study = StudyStyle::Study1;
  std::vector<Persona> personas;  // one per player
  Condition condition = Condition::NoName;
  std::vector<AgentSpec> agent_specs;
  int games = 0;

  /// "CS" for a pair, "C" for four-way self-play.
  std::string pairing_label() const;
  /// Unique cell name, e.g. "study1_CS_name"; doubles as the file stem.
  std::string label() const;
};

/// The full grid for a study: every ordered persona pairing crossed with
/// both naming conditions (18 cells pairwise, 6 for self-play). base_specs
/// carries the agents: two for pairwise studies; for self-play either one
/// spec (replicated) or four identical ones. games == 0 picks the study
/// default batch size.
std::vector<ConditionCell> enumerate_conditions(StudyStyle study,
                                                const std::vector<AgentSpec>& base_specs,
                                                int games = 0);

struct RunContext {
  Gateway* gateway = nullptr;
  std::uint64_t master_seed = 1;
  int parallelism = 1;
  int num_rounds = 20;
  int endowment = 10;
  std::int64_t multiplier_tenths = 16;
  TemplateEdition edition = TemplateEdition::Corrected;
};

struct BatchResult {
  ConditionCell cell;
  std::vector<GameTranscript> transcripts;
  int invalid_count = 0;
};

/// Plays every game of one cell. Game i runs under derive_seed(master, i),
/// so any single game is reproducible in isolation and the result does not
/// depend on parallelism. Agent aborts become invalid transcripts, not
/// failures of the batch.
BatchResult run_batch(const ConditionCell& cell, const RunContext& ctx);

/// Name-condition hygiene: every live player's system prompt must mention
/// its own display name and no other player's; no-name prompts must use the
/// study's anonymous phrase and leak no display name. Throws ValidationError.
void check_prompt_conditions(const GameTranscript& transcript);

/// One game per line, keys in fixed order, points as decimal strings —
/// byte-identical files for identical runs.
void persist_transcripts(const BatchResult& batch, const std::filesystem::path& path);

/// Inverse of persist_transcripts. Throws SchemaVersionMismatchError for a
/// foreign schema_version and CorruptLineError (with the 1-based line
/// number) for a line that does not parse back.
BatchResult load_transcripts(const std::filesystem::path& path);

/// JSON codec for one transcript; exposed for the validator and bindings.
std::string transcript_to_json(const GameTranscript& transcript, const ConditionCell& cell,
                               int game_index);
GameTranscript transcript_from_json(const std::string& line, ConditionCell* cell_out = nullptr);

}  // namespace pgg
