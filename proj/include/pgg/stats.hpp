#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pgg/runner.hpp"

namespace pgg {

enum class CiMethod { Normal, Bootstrap };

struct RoundStat {
  int round = 0;
  double mean = 0.0;
  double ci_half_width = 0.0;
  int n = 0;
};

struct PerRoundStats {
  std::string cell_label;
  int player = 0;
  std::string player_name;
  std::vector<RoundStat> per_round;
};

/// Round-by-round mean contribution for one player across the valid games
/// of a batch, with a 95% interval: 1.96 * s/sqrt(n) on the sample standard
/// deviation by default, percentile bootstrap (seeded, resampling games)
/// behind the flag. Throws ValidationError with fewer than two valid games.
PerRoundStats per_round_stats(const BatchResult& batch, int player,
                              CiMethod method = CiMethod::Normal, int bootstrap_samples = 1000,
                              std::uint64_t bootstrap_seed = 7);

/// Each valid game collapsed to that player's mean contribution; the unit
/// of observation for the name-vs-noname comparison.
std::vector<double> per_game_mean_contributions(const BatchResult& batch, int player);

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  double p_value = 1.0;
};

/// Two-sided Welch t-test. Degenerate zero-variance samples short-circuit:
/// equal means give p = 1, unequal give p = 0.
WelchResult welch_t_test(const std::vector<double>& a, const std::vector<double>& b);

struct DeltaRow {
  std::string study;
  std::string player_name;
  int player = 0;
  std::string pairing;
  double delta = 0.0;  // name minus noname, in contribution points
  double p_value = 1.0;
  bool significant = false;
};

/// Name-condition effect per player for one pairing: difference of the
/// per-game mean contributions, Welch-tested at alpha.
std::vector<DeltaRow> delta_table(const BatchResult& name_batch, const BatchResult& noname_batch,
                                  double alpha = 0.05);

struct SpearmanResult {
  enum class Kind { Value, NoVariance };
  Kind kind = Kind::Value;
  double rho = 0.0;
};

/// Spearman rank correlation with average ranks and tie correction. A
/// constant input on either side is reported as NoVariance — deliberately
/// distinct from rho == 0.
SpearmanResult spearman(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace pgg
