#pragma once

#include <string>
#include <vector>

#include "pgg/gateway.hpp"
#include "pgg/masking.hpp"
#include "pgg/runner.hpp"
#include "pgg/stats.hpp"

namespace pgg {

struct JudgeSpec {
  std::string provider;
  std::string model;
  /// Near-greedy on purpose: scoring should be as repeatable as the judge
  /// allows.
  double temperature = 0.1;
};

struct SentimentRecord {
  std::string game_id;
  int round = 0;
  int player = 0;
  std::string masked_text;
  double score = 0.0;
};

/// Scores one already-masked reasoning text with the judge model. Defense in
/// depth: the text is re-masked first and must come back unchanged, else
/// ValidationError — unmasked text never reaches the judge. An out-of-range
/// or non-numeric verdict is re-asked up to kJudgeAttempts times, then
/// JudgeUnparseableError.
double score_sentiment(const std::string& masked_text, Gateway& gateway, const JudgeSpec& judge,
                       const std::vector<std::string>& mask_names = default_mask_names());

inline constexpr int kJudgeAttempts = 3;

/// Reasoning texts of one batch, masked. Only styles that elicit reasoning
/// produce records. Skips invalid games and scripted players.
std::vector<SentimentRecord> collect_reasonings(const BatchResult& batch,
                                                const std::vector<std::string>& extra_mask_names = {});

/// collect + judge in one sweep.
std::vector<SentimentRecord> score_batch(const BatchResult& batch, Gateway& gateway,
                                         const JudgeSpec& judge,
                                         const std::vector<std::string>& extra_mask_names = {});

enum class SentimentAggregation {
  Raw,             // every (game, round) pair is one observation
  PerRoundAverage, // scores and contributions averaged per round first
};

struct SentimentCorrelation {
  std::string cell_label;
  int player = 0;
  std::string player_name;
  SpearmanResult result;
  int n = 0;  // observations fed to the correlation
};

/// Spearman correlation between sentiment scores and the contributions they
/// accompanied, per player.
std::vector<SentimentCorrelation> sentiment_correlation(
    const BatchResult& batch, const std::vector<SentimentRecord>& records,
    SentimentAggregation aggregation = SentimentAggregation::Raw);

}  // namespace pgg
