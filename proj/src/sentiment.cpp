#include "pgg/sentiment.hpp"

#include <cctype>
#include <cstdlib>
#include <map>

#include "pgg/agents.hpp"
#include "pgg/errors.hpp"
#include "pgg/prompts.hpp"

namespace pgg {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool parse_score(const std::string& raw, double& out) {
  std::string t = trim(raw);
  if (t.empty()) return false;
  char* end = nullptr;
  double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size()) return false;
  if (!(v >= 0.0 && v <= 1.0)) return false;
  out = v;
  return true;
}

}  // namespace

double score_sentiment(const std::string& masked_text, Gateway& gateway, const JudgeSpec& judge,
                       const std::vector<std::string>& mask_names) {
  if (mask_reasoning(masked_text, mask_names) != masked_text) {
    throw ValidationError("refusing to judge text that is not fully masked");
  }
  if (judge.model.empty()) throw ConfigError("judge needs a model");

  ChatRequest request{judge.model,
                      {{ChatMessage::Role::System, judge_rubric()},
                       {ChatMessage::Role::User, masked_text}},
                      judge.temperature};
  std::string last;
  for (int attempt = 0; attempt < kJudgeAttempts; ++attempt) {
    last = gateway.chat_complete(request);
    double score = 0.0;
    if (parse_score(last, score)) return score;
    request.messages.push_back({ChatMessage::Role::Assistant, last});
    request.messages.push_back(
        {ChatMessage::Role::User,
         "That was not usable. Respond with a single decimal number between 0 and 1.0 and "
         "nothing else."});
  }
  std::string preview = last.substr(0, 80);
  throw JudgeUnparseableError("judge returned no usable score in " +
                              std::to_string(kJudgeAttempts) + " attempts; last reply: '" +
                              preview + "'");
}

std::vector<SentimentRecord> collect_reasonings(const BatchResult& batch,
                                                const std::vector<std::string>& extra_mask_names) {
  std::vector<std::string> names = default_mask_names();
  names.insert(names.end(), extra_mask_names.begin(), extra_mask_names.end());
  for (const auto& t : batch.transcripts) {
    for (const auto& n : t.display_names) {
      if (!n.empty()) names.push_back(n);
    }
  }

  std::vector<SentimentRecord> records;
  if (!expects_reasoning(batch.cell.study)) return records;
  for (const auto& t : batch.transcripts) {
    if (!t.valid) continue;
    std::string game_id = batch.cell.label() + "#" + std::to_string(t.game_index);
    for (std::size_t p = 0; p < t.exchanges.size(); ++p) {
      const auto& log = t.exchanges[p];
      if (log.turns.empty()) continue;  // scripted player
      // The decision that counted is the last successfully parsed response
      // per round; walk turns and keep the final parseable one.
      std::map<int, std::string> reasoning_by_round;
      for (const auto& turn : log.turns) {
        try {
          ContributionDecision d =
              parse_decision(turn.response, true, t.config.endowment);
          if (d.reasoning && !d.reasoning->empty()) {
            reasoning_by_round[turn.round] = *d.reasoning;
          }
        } catch (const ParseError&) {
          // a re-prompted malformed attempt; the next turn supersedes it
        }
      }
      for (const auto& [round, reasoning] : reasoning_by_round) {
        records.push_back(
            {game_id, round, static_cast<int>(p), mask_reasoning(reasoning, names), 0.0});
      }
    }
  }
  return records;
}

std::vector<SentimentRecord> score_batch(const BatchResult& batch, Gateway& gateway,
                                         const JudgeSpec& judge,
                                         const std::vector<std::string>& extra_mask_names) {
  std::vector<std::string> names = default_mask_names();
  names.insert(names.end(), extra_mask_names.begin(), extra_mask_names.end());
  for (const auto& t : batch.transcripts) {
    for (const auto& n : t.display_names) {
      if (!n.empty()) names.push_back(n);
    }
  }
  auto records = collect_reasonings(batch, extra_mask_names);
  for (auto& r : records) {
    r.score = score_sentiment(r.masked_text, gateway, judge, names);
  }
  return records;
}

std::vector<SentimentCorrelation> sentiment_correlation(const BatchResult& batch,
                                                        const std::vector<SentimentRecord>& records,
                                                        SentimentAggregation aggregation) {
  // game_id -> transcript, to pair each score with its contribution.
  std::map<std::string, const GameTranscript*> by_id;
  for (const auto& t : batch.transcripts) {
    by_id[batch.cell.label() + "#" + std::to_string(t.game_index)] = &t;
  }

  int players = players_for_study(batch.cell.study);
  std::vector<SentimentCorrelation> out;
  for (int p = 0; p < players; ++p) {
    std::vector<double> scores, contributions;
    std::map<int, std::pair<std::vector<double>, std::vector<double>>> per_round;
    for (const auto& r : records) {
      if (r.player != p) continue;
      auto it = by_id.find(r.game_id);
      if (it == by_id.end()) {
        throw ValidationError("sentiment record references unknown game '" + r.game_id + "'");
      }
      const GameTranscript* t = it->second;
      if (r.round < 1 || r.round > static_cast<int>(t->rounds.size())) continue;
      double c = t->rounds[r.round - 1].contributions[p];
      if (aggregation == SentimentAggregation::Raw) {
        scores.push_back(r.score);
        contributions.push_back(c);
      } else {
        per_round[r.round].first.push_back(r.score);
        per_round[r.round].second.push_back(c);
      }
    }
    if (aggregation == SentimentAggregation::PerRoundAverage) {
      for (const auto& [round, pair] : per_round) {
        (void)round;
        double s = 0.0, c = 0.0;
        for (double v : pair.first) s += v;
        for (double v : pair.second) c += v;
        scores.push_back(s / pair.first.size());
        contributions.push_back(c / pair.second.size());
      }
    }
    SentimentCorrelation corr;
    corr.cell_label = batch.cell.label();
    corr.player = p;
    for (const auto& t : batch.transcripts) {
      if (t.valid && !t.display_names.empty()) {
        corr.player_name = t.display_names[p];
        break;
      }
    }
    corr.n = static_cast<int>(scores.size());
    if (corr.n >= 2) {
      corr.result = spearman(scores, contributions);
    } else {
      corr.result = {SpearmanResult::Kind::NoVariance, 0.0};
    }
    out.push_back(std::move(corr));
  }
  return out;
}

}  // namespace pgg
