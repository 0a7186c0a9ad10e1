#include "pgg/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <boost/math/distributions/students_t.hpp>

#include "pgg/errors.hpp"
#include "pgg/rng.hpp"

namespace pgg {

namespace {

constexpr double kZ95 = 1.96;

double mean_of(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double sample_variance(const std::vector<double>& xs, double mean) {
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return ss / static_cast<double>(xs.size() - 1);
}

std::vector<const GameTranscript*> valid_games(const BatchResult& batch) {
  std::vector<const GameTranscript*> out;
  for (const auto& t : batch.transcripts) {
    if (t.valid) out.push_back(&t);
  }
  return out;
}

void check_player(const BatchResult& batch, int player) {
  int players = players_for_study(batch.cell.study);
  if (player < 0 || player >= players) {
    throw ValidationError("player " + std::to_string(player) + " outside of 0.." +
                          std::to_string(players - 1));
  }
}

/// Average ranks (1-based); ties share the mean of the positions they span.
std::vector<double> average_ranks(const std::vector<double>& xs) {
  std::vector<std::size_t> order(xs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(xs.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
    double shared = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
    i = j + 1;
  }
  return ranks;
}

/// Sum of (t^3 - t)/12 over tie groups.
double tie_term(const std::vector<double>& xs) {
  std::map<double, long long> counts;
  for (double x : xs) ++counts[x];
  double total = 0.0;
  for (const auto& [value, t] : counts) {
    (void)value;
    total += static_cast<double>(t * t * t - t) / 12.0;
  }
  return total;
}

}  // namespace

PerRoundStats per_round_stats(const BatchResult& batch, int player, CiMethod method,
                              int bootstrap_samples, std::uint64_t bootstrap_seed) {
  check_player(batch, player);
  auto games = valid_games(batch);
  if (games.size() < 2) {
    throw ValidationError("per-round statistics need at least 2 valid games, have " +
                          std::to_string(games.size()));
  }
  int rounds = games.front()->config.num_rounds;

  PerRoundStats stats;
  stats.cell_label = batch.cell.label();
  stats.player = player;
  stats.player_name =
      games.front()->display_names.empty() ? "" : games.front()->display_names[player];

  for (int r = 0; r < rounds; ++r) {
    std::vector<double> values;
    values.reserve(games.size());
    for (const auto* g : games) {
      if (r < static_cast<int>(g->rounds.size())) {
        values.push_back(static_cast<double>(g->rounds[r].contributions[player]));
      }
    }
    int n = static_cast<int>(values.size());
    if (n < 2) {
      throw ValidationError("round " + std::to_string(r + 1) + " has fewer than 2 observations");
    }
    double mean = mean_of(values);
    double half = 0.0;
    if (method == CiMethod::Normal) {
      double sd = std::sqrt(sample_variance(values, mean));
      half = kZ95 * sd / std::sqrt(static_cast<double>(n));
    } else {
      SplitMix64 rng(derive_seed(bootstrap_seed, static_cast<std::uint64_t>(r)));
      std::vector<double> means;
      means.reserve(bootstrap_samples);
      for (int b = 0; b < bootstrap_samples; ++b) {
        double sum = 0.0;
        for (int k = 0; k < n; ++k) sum += values[rng.next_int(0, n - 1)];
        means.push_back(sum / n);
      }
      std::sort(means.begin(), means.end());
      auto pick = [&](double q) {
        double idx = q * (means.size() - 1);
        auto lo = static_cast<std::size_t>(idx);
        auto hi = std::min(lo + 1, means.size() - 1);
        double frac = idx - static_cast<double>(lo);
        return means[lo] * (1.0 - frac) + means[hi] * frac;
      };
      half = (pick(0.975) - pick(0.025)) / 2.0;
    }
    stats.per_round.push_back({r + 1, mean, half, n});
  }
  return stats;
}

std::vector<double> per_game_mean_contributions(const BatchResult& batch, int player) {
  check_player(batch, player);
  std::vector<double> out;
  for (const auto& t : batch.transcripts) {
    if (!t.valid || t.rounds.empty()) continue;
    double sum = 0.0;
    for (const auto& r : t.rounds) sum += r.contributions[player];
    out.push_back(sum / static_cast<double>(t.rounds.size()));
  }
  return out;
}

WelchResult welch_t_test(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() < 2 || b.size() < 2) {
    throw ValidationError("welch test needs at least 2 observations per side");
  }
  double na = static_cast<double>(a.size());
  double nb = static_cast<double>(b.size());
  double ma = mean_of(a);
  double mb = mean_of(b);
  double va = sample_variance(a, ma);
  double vb = sample_variance(b, mb);
  double se2 = va / na + vb / nb;
  if (se2 == 0.0) {
    // Both samples constant: identical means are maximally unsurprising,
    // different means are impossible under the null.
    return ma == mb ? WelchResult{0.0, 0.0, 1.0}
                    : WelchResult{ma > mb ? HUGE_VAL : -HUGE_VAL, 0.0, 0.0};
  }
  double t = (ma - mb) / std::sqrt(se2);
  double df = se2 * se2 /
              (va * va / (na * na * (na - 1.0)) + vb * vb / (nb * nb * (nb - 1.0)));
  boost::math::students_t dist(df);
  double p = 2.0 * boost::math::cdf(dist, -std::fabs(t));
  return {t, df, p};
}

std::vector<DeltaRow> delta_table(const BatchResult& name_batch, const BatchResult& noname_batch,
                                  double alpha) {
  if (name_batch.cell.condition != Condition::Name ||
      noname_batch.cell.condition != Condition::NoName) {
    throw ValidationError("delta_table expects (name, noname) batches in that order");
  }
  if (name_batch.cell.study != noname_batch.cell.study ||
      name_batch.cell.personas != noname_batch.cell.personas) {
    throw ValidationError("delta_table batches must share study and pairing");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ValidationError("alpha must lie strictly between 0 and 1");
  }

  std::vector<DeltaRow> rows;
  int players = players_for_study(name_batch.cell.study);
  for (int p = 0; p < players; ++p) {
    auto with_name = per_game_mean_contributions(name_batch, p);
    auto without = per_game_mean_contributions(noname_batch, p);
    if (with_name.size() < 2 || without.size() < 2) {
      throw ValidationError("delta_table needs at least 2 valid games per side for player " +
                            std::to_string(p));
    }
    WelchResult w = welch_t_test(with_name, without);
    DeltaRow row;
    row.study = to_string(name_batch.cell.study);
    row.player = p;
    for (const auto& t : name_batch.transcripts) {
      if (t.valid) {
        row.player_name = t.display_names[p];
        break;
      }
    }
    row.pairing = name_batch.cell.pairing_label();
    row.delta = mean_of(with_name) - mean_of(without);
    row.p_value = w.p_value;
    row.significant = w.p_value < alpha;
    rows.push_back(std::move(row));
  }
  return rows;
}

SpearmanResult spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) {
    throw ValidationError("spearman inputs differ in length");
  }
  std::size_t n = xs.size();
  if (n < 2) {
    throw ValidationError("spearman needs at least 2 observations");
  }
  double cubes = (static_cast<double>(n) * n * n - n) / 12.0;
  double sxx = cubes - tie_term(xs);
  double syy = cubes - tie_term(ys);
  if (sxx <= 0.0 || syy <= 0.0) {
    return {SpearmanResult::Kind::NoVariance, 0.0};
  }
  auto rx = average_ranks(xs);
  auto ry = average_ranks(ys);
  double d2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = rx[i] - ry[i];
    d2 += d * d;
  }
  double rho = (sxx + syy - d2) / (2.0 * std::sqrt(sxx * syy));
  return {SpearmanResult::Kind::Value, std::clamp(rho, -1.0, 1.0)};
}

}  // namespace pgg
