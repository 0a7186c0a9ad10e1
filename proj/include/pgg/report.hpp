#pragma once

#include <filesystem>
#include <vector>

#include "pgg/sentiment.hpp"
#include "pgg/stats.hpp"

namespace pgg {

/// Shortest decimal that round-trips the double — CSV exports are the truth
/// behind the figures, so re-parsing them must reproduce the exact values.
std::string format_double(double v);

struct CurveExport {
  std::filesystem::path csv;
  std::vector<std::filesystem::path> svgs;
};

/// Contribution curves for any number of batches: one curves.csv with the
/// column set {cell, condition, player, round, mean, ci_half, n} (cell is
/// study_pairing; the condition rides in its own column), plus one SVG panel
/// per (study, pairing) drawing mean lines with CI bands for every player
/// and condition present.
CurveExport export_curves(const std::vector<BatchResult>& batches,
                          const std::filesystem::path& out_dir,
                          CiMethod method = CiMethod::Normal);

struct TableExport {
  std::filesystem::path csv;
  std::filesystem::path svg;
};

/// Name-effect table: deltas.csv plus a grid figure with significant entries
/// set in bold.
TableExport export_deltas(const std::vector<DeltaRow>& rows, const std::filesystem::path& out_dir);

/// Sentiment-contribution correlations: sentiment.csv plus a grid figure.
/// No-variance cells render as a distinct marker, not as zero.
TableExport export_sentiment(const std::vector<SentimentCorrelation>& correlations,
                             const std::filesystem::path& out_dir);

struct Violation {
  std::filesystem::path file;
  int game_index = -1;  // -1: file-level problem
  int round = 0;        // 0: not tied to a round
  std::string what;
};

/// Re-derives every invariant a transcript file claims: payoff arithmetic,
/// totals, running sums, conservation, round numbering, declared validity,
/// prompt-condition hygiene. Corrupt lines and schema mismatches surface as
/// violations too; checking continues with the next line.
std::vector<Violation> validate_file(const std::filesystem::path& path);

}  // namespace pgg
