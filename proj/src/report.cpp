#include "pgg/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "pgg/errors.hpp"

namespace pgg {

namespace {

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

/// Per-player stroke colors, one shade pair per condition.
const char* series_color(Condition condition, int player) {
  static const char* name_shades[] = {"#c62828", "#ef6c00", "#ad1457", "#6a1b9a"};
  static const char* noname_shades[] = {"#1565c0", "#00838f", "#2e7d32", "#4527a0"};
  const char** shades = condition == Condition::Name ? name_shades : noname_shades;
  return shades[player % 4];
}

struct PanelKey {
  std::string study;
  std::string pairing;
  auto operator<=>(const PanelKey&) const = default;
};

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) return "0";
  return std::string(buf, end);
}

CurveExport export_curves(const std::vector<BatchResult>& batches,
                          const std::filesystem::path& out_dir, CiMethod method) {
  if (batches.empty()) throw ValidationError("no batches to export");

  // cell (study_pairing) -> condition -> player stats
  std::map<PanelKey, std::map<Condition, std::vector<PerRoundStats>>> panels;
  for (const auto& batch : batches) {
    PanelKey key{to_string(batch.cell.study), batch.cell.pairing_label()};
    int players = players_for_study(batch.cell.study);
    for (int p = 0; p < players; ++p) {
      panels[key][batch.cell.condition].push_back(per_round_stats(batch, p, method));
    }
  }

  CurveExport result;
  result.csv = out_dir / "curves.csv";
  std::ofstream csv = open_out(result.csv);
  csv << "cell,condition,player,round,mean,ci_half,n\n";
  for (const auto& [key, by_condition] : panels) {
    std::string cell = key.study + "_" + key.pairing;
    for (const auto& [condition, players] : by_condition) {
      for (const auto& stats : players) {
        for (const auto& row : stats.per_round) {
          csv << csv_quote(cell) << ',' << to_string(condition) << ',' << stats.player << ','
              << row.round << ',' << format_double(row.mean) << ','
              << format_double(row.ci_half_width) << ',' << row.n << '\n';
        }
      }
    }
  }
  csv.flush();
  if (!csv) throw IoError("failed writing " + result.csv.string());

  for (const auto& [key, by_condition] : panels) {
    // Geometry shared by every panel.
    const double width = 720, height = 420;
    const double left = 56, right = 176, top = 40, bottom = 44;
    const double plot_w = width - left - right, plot_h = height - top - bottom;

    int rounds = 0, endowment = 0;
    for (const auto& [condition, players] : by_condition) {
      (void)condition;
      for (const auto& s : players) rounds = std::max(rounds, (int)s.per_round.size());
    }
    for (const auto& batch : batches) {
      if (to_string(batch.cell.study) == key.study &&
          batch.cell.pairing_label() == key.pairing) {
        for (const auto& t : batch.transcripts) {
          endowment = std::max(endowment, t.config.endowment);
        }
      }
    }
    if (rounds < 2 || endowment < 1) continue;

    auto x_of = [&](int round) {
      return left + (static_cast<double>(round - 1) / (rounds - 1)) * plot_w;
    };
    auto y_of = [&](double value) { return top + (1.0 - value / endowment) * plot_h; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << left << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\" "
           "font-weight=\"bold\">"
        << xml_escape(key.study + " " + key.pairing) << " — mean contribution per round</text>\n";

    // Gridlines and axes.
    for (int v = 0; v <= endowment; v += 2) {
      double y = y_of(v);
      svg << "<line x1=\"" << left << "\" y1=\"" << fmt2(y) << "\" x2=\"" << left + plot_w
          << "\" y2=\"" << fmt2(y) << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
      svg << "<text x=\"" << left - 8 << "\" y=\"" << fmt2(y + 4)
          << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << v
          << "</text>\n";
    }
    for (int r = 1; r <= rounds; r += (rounds > 10 ? 5 : 1)) {
      double x = x_of(r);
      svg << "<line x1=\"" << fmt2(x) << "\" y1=\"" << top + plot_h << "\" x2=\"" << fmt2(x)
          << "\" y2=\"" << top + plot_h + 4 << "\" stroke=\"#333333\"/>\n";
      svg << "<text x=\"" << fmt2(x) << "\" y=\"" << top + plot_h + 18
          << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" << r
          << "</text>\n";
    }
    svg << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 8
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">round</text>\n";
    svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\""
        << plot_h << "\" fill=\"none\" stroke=\"#333333\"/>\n";

    // Bands first so every line stays visible.
    for (const auto& [condition, players] : by_condition) {
      for (const auto& stats : players) {
        const char* color = series_color(condition, stats.player);
        std::ostringstream points;
        for (const auto& row : stats.per_round) {
          points << fmt2(x_of(row.round)) << ','
                 << fmt2(y_of(std::clamp(row.mean + row.ci_half_width, 0.0,
                                         static_cast<double>(endowment))))
                 << ' ';
        }
        for (auto it = stats.per_round.rbegin(); it != stats.per_round.rend(); ++it) {
          points << fmt2(x_of(it->round)) << ','
                 << fmt2(y_of(std::clamp(it->mean - it->ci_half_width, 0.0,
                                         static_cast<double>(endowment))))
                 << ' ';
        }
        svg << "<polygon points=\"" << points.str() << "\" fill=\"" << color
            << "\" fill-opacity=\"0.15\" stroke=\"none\"/>\n";
      }
    }
    int legend_slot = 0;
    for (const auto& [condition, players] : by_condition) {
      for (const auto& stats : players) {
        const char* color = series_color(condition, stats.player);
        std::ostringstream points;
        for (const auto& row : stats.per_round) {
          points << fmt2(x_of(row.round)) << ',' << fmt2(y_of(row.mean)) << ' ';
        }
        svg << "<polyline points=\"" << points.str() << "\" fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        double ly = top + 10 + 18 * legend_slot++;
        double lx = left + plot_w + 12;
        svg << "<line x1=\"" << lx << "\" y1=\"" << fmt2(ly) << "\" x2=\"" << lx + 22
            << "\" y2=\"" << fmt2(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        std::string label = "p" + std::to_string(stats.player) + " " +
                            std::string(to_string(condition)) +
                            (stats.player_name.empty() ? "" : " (" + stats.player_name + ")");
        svg << "<text x=\"" << lx + 28 << "\" y=\"" << fmt2(ly + 4)
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << xml_escape(label)
            << "</text>\n";
      }
    }
    svg << "</svg>\n";

    std::filesystem::path path = out_dir / ("curves_" + key.study + "_" + key.pairing + ".svg");
    std::ofstream out = open_out(path);
    out << svg.str();
    out.flush();
    if (!out) throw IoError("failed writing " + path.string());
    result.svgs.push_back(path);
  }
  return result;
}

TableExport export_deltas(const std::vector<DeltaRow>& rows,
                          const std::filesystem::path& out_dir) {
  if (rows.empty()) throw ValidationError("no delta rows to export");
  TableExport result;
  result.csv = out_dir / "deltas.csv";
  std::ofstream csv = open_out(result.csv);
  csv << "study,pairing,player,player_name,delta,p_value,significant\n";
  for (const auto& row : rows) {
    csv << row.study << ',' << row.pairing << ',' << row.player << ','
        << csv_quote(row.player_name) << ',' << format_double(row.delta) << ','
        << format_double(row.p_value) << ',' << (row.significant ? "true" : "false") << '\n';
  }
  csv.flush();
  if (!csv) throw IoError("failed writing " + result.csv.string());

  // Grid: one row per (study, player), one column per pairing.
  std::vector<std::string> pairings;
  std::vector<std::pair<std::string, int>> row_keys;  // (study, player)
  std::map<std::pair<std::string, int>, std::string> row_names;
  for (const auto& row : rows) {
    if (std::find(pairings.begin(), pairings.end(), row.pairing) == pairings.end()) {
      pairings.push_back(row.pairing);
    }
    std::pair<std::string, int> key{row.study, row.player};
    if (std::find(row_keys.begin(), row_keys.end(), key) == row_keys.end()) {
      row_keys.push_back(key);
      row_names[key] = row.player_name;
    }
  }
  std::map<std::pair<std::pair<std::string, int>, std::string>, const DeltaRow*> cells;
  for (const auto& row : rows) {
    cells[{{row.study, row.player}, row.pairing}] = &row;
  }

  const double cell_w = 72, cell_h = 30, label_w = 190, header_h = 30;
  double width = label_w + cell_w * pairings.size() + 16;
  double height = header_h + cell_h * row_keys.size() + 44;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  for (std::size_t c = 0; c < pairings.size(); ++c) {
    svg << "<text x=\"" << label_w + cell_w * c + cell_w / 2 << "\" y=\"20\" "
           "font-family=\"sans-serif\" font-size=\"12\" font-weight=\"bold\" "
           "text-anchor=\"middle\">"
        << xml_escape(pairings[c]) << "</text>\n";
  }
  for (std::size_t r = 0; r < row_keys.size(); ++r) {
    double y = header_h + cell_h * r;
    std::string label = row_keys[r].first + " p" + std::to_string(row_keys[r].second);
    if (!row_names[row_keys[r]].empty()) label += " (" + row_names[row_keys[r]] + ")";
    svg << "<text x=\"8\" y=\"" << fmt2(y + cell_h / 2 + 4)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << xml_escape(label) << "</text>\n";
    for (std::size_t c = 0; c < pairings.size(); ++c) {
      double x = label_w + cell_w * c;
      svg << "<rect x=\"" << x << "\" y=\"" << fmt2(y) << "\" width=\"" << cell_w
          << "\" height=\"" << cell_h << "\" fill=\"none\" stroke=\"#cccccc\"/>\n";
      auto it = cells.find({row_keys[r], pairings[c]});
      if (it == cells.end()) continue;
      const DeltaRow* cell = it->second;
      const char* fill = cell->delta < 0 ? "#b71c1c" : "#1b5e20";
      svg << "<text x=\"" << x + cell_w / 2 << "\" y=\"" << fmt2(y + cell_h / 2 + 4)
          << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" fill=\""
          << fill << "\"" << (cell->significant ? " font-weight=\"bold\"" : "") << ">"
          << fmt2(cell->delta) << "</text>\n";
    }
  }
  svg << "<text x=\"8\" y=\"" << height - 12
      << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#555555\">delta = name minus "
         "no-name mean contribution; bold: p &lt; 0.05</text>\n";
  svg << "</svg>\n";

  result.svg = out_dir / "deltas.svg";
  std::ofstream out = open_out(result.svg);
  out << svg.str();
  out.flush();
  if (!out) throw IoError("failed writing " + result.svg.string());
  return result;
}

TableExport export_sentiment(const std::vector<SentimentCorrelation>& correlations,
                             const std::filesystem::path& out_dir) {
  if (correlations.empty()) throw ValidationError("no correlations to export");
  TableExport result;
  result.csv = out_dir / "sentiment.csv";
  std::ofstream csv = open_out(result.csv);
  csv << "cell,player,player_name,rho,no_variance,n\n";
  for (const auto& c : correlations) {
    bool nv = c.result.kind == SpearmanResult::Kind::NoVariance;
    csv << csv_quote(c.cell_label) << ',' << c.player << ',' << csv_quote(c.player_name) << ','
        << (nv ? "" : format_double(c.result.rho)) << ',' << (nv ? "true" : "false") << ','
        << c.n << '\n';
  }
  csv.flush();
  if (!csv) throw IoError("failed writing " + result.csv.string());

  std::vector<std::string> cells;
  int max_player = 0;
  for (const auto& c : correlations) {
    if (std::find(cells.begin(), cells.end(), c.cell_label) == cells.end()) {
      cells.push_back(c.cell_label);
    }
    max_player = std::max(max_player, c.player);
  }
  std::map<std::pair<std::string, int>, const SentimentCorrelation*> lookup;
  for (const auto& c : correlations) lookup[{c.cell_label, c.player}] = &c;

  const double cell_w = 84, cell_h = 30, label_w = 170, header_h = 30;
  double width = label_w + cell_w * (max_player + 1) + 16;
  double height = header_h + cell_h * cells.size() + 44;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  for (int p = 0; p <= max_player; ++p) {
    svg << "<text x=\"" << label_w + cell_w * p + cell_w / 2 << "\" y=\"20\" "
           "font-family=\"sans-serif\" font-size=\"12\" font-weight=\"bold\" "
           "text-anchor=\"middle\">p"
        << p << "</text>\n";
  }
  for (std::size_t r = 0; r < cells.size(); ++r) {
    double y = header_h + cell_h * r;
    svg << "<text x=\"8\" y=\"" << fmt2(y + cell_h / 2 + 4)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << xml_escape(cells[r])
        << "</text>\n";
    for (int p = 0; p <= max_player; ++p) {
      double x = label_w + cell_w * p;
      auto it = lookup.find({cells[r], p});
      if (it == lookup.end()) continue;
      const SentimentCorrelation* c = it->second;
      bool nv = c->result.kind == SpearmanResult::Kind::NoVariance;
      // Diverging fill: blue for negative rho, green for positive, gray for
      // the no-variance marker.
      std::string fill = "#9e9e9e";
      if (!nv) {
        double mag = std::min(1.0, std::fabs(c->result.rho));
        int alpha = static_cast<int>(40 + 160 * mag);
        char buf[16];
        std::snprintf(buf, sizeof buf, "%02x", alpha);
        fill = (c->result.rho >= 0 ? std::string("#2e7d32") : std::string("#1565c0")) + buf;
      }
      svg << "<rect x=\"" << x + 2 << "\" y=\"" << fmt2(y + 2) << "\" width=\"" << cell_w - 4
          << "\" height=\"" << cell_h - 4 << "\" fill=\"" << fill << "\" stroke=\"#cccccc\"/>\n";
      svg << "<text x=\"" << x + cell_w / 2 << "\" y=\"" << fmt2(y + cell_h / 2 + 4)
          << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" "
             "fill=\"white\">"
          << (nv ? "n/v" : fmt2(c->result.rho)) << "</text>\n";
    }
  }
  svg << "<text x=\"8\" y=\"" << height - 12
      << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#555555\">rank correlation of "
         "reasoning sentiment with contribution; n/v: no variance</text>\n";
  svg << "</svg>\n";

  result.svg = out_dir / "sentiment.svg";
  std::ofstream out = open_out(result.svg);
  out << svg.str();
  out.flush();
  if (!out) throw IoError("failed writing " + result.svg.string());
  return result;
}

std::vector<Violation> validate_file(const std::filesystem::path& path) {
  std::vector<Violation> violations;
  std::ifstream in(path);
  if (!in) {
    violations.push_back({path, -1, 0, "cannot open file"});
    return violations;
  }
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    GameTranscript t;
    try {
      t = transcript_from_json(line);
    } catch (const Error& e) {
      violations.push_back({path, -1, 0,
                            "line " + std::to_string(line_number) + ": " + e.what()});
      continue;
    } catch (const std::exception& e) {
      violations.push_back({path, -1, 0,
                            "line " + std::to_string(line_number) + ": " + e.what()});
      continue;
    }

    auto flag = [&](int round, const std::string& what) {
      violations.push_back({path, t.game_index, round, what});
    };
    try {
      t.config.validate();
    } catch (const Error& e) {
      flag(0, std::string("config: ") + e.what());
      continue;
    }
    if (t.valid && static_cast<int>(t.rounds.size()) != t.config.num_rounds) {
      flag(0, "valid game has " + std::to_string(t.rounds.size()) + " rounds, expected " +
                  std::to_string(t.config.num_rounds));
    }
    if (!t.valid && t.abort_reason.empty()) {
      flag(0, "invalid game lacks an abort_reason");
    }
    try {
      check_prompt_conditions(t);
    } catch (const Error& e) {
      flag(0, e.what());
    }

    std::vector<Points> running(t.config.num_players, Points{});
    for (std::size_t r = 0; r < t.rounds.size(); ++r) {
      const RoundRecord& round = t.rounds[r];
      int expected_index = static_cast<int>(r) + 1;
      if (round.round_index != expected_index) {
        flag(round.round_index, "round numbering broken: got " +
                                    std::to_string(round.round_index) + ", expected " +
                                    std::to_string(expected_index));
        break;
      }
      std::vector<Points> gains;
      try {
        gains = round_payoff(round.contributions, t.config.endowment, t.config.multiplier_tenths,
                             t.config.num_players);
      } catch (const Error& e) {
        flag(round.round_index, std::string("contributions: ") + e.what());
        break;
      }
      if (static_cast<int>(round.gains.size()) != t.config.num_players ||
          static_cast<int>(round.cumulative.size()) != t.config.num_players) {
        flag(round.round_index, "gains/cumulative arrays have the wrong length");
        break;
      }
      int total = 0;
      for (int c : round.contributions) total += c;
      if (total != round.total) {
        flag(round.round_index, "total " + std::to_string(round.total) +
                                    " does not match contributions sum " + std::to_string(total));
      }
      if (gains != round.gains) {
        flag(round.round_index, "gains do not match the payoff rule");
      }
      std::int64_t gain_sum = 0;
      for (Points g : round.gains) gain_sum += g.tenths();
      std::int64_t expected_sum =
          static_cast<std::int64_t>(t.config.num_players) * t.config.endowment * 10 +
          (t.config.multiplier_tenths - 10) * total;
      if (gain_sum != expected_sum) {
        flag(round.round_index, "conservation broken: gains sum to " + format_tenths(gain_sum) +
                                    ", expected " + format_tenths(expected_sum));
      }
      for (int p = 0; p < t.config.num_players; ++p) {
        running[p] += round.gains[p];
        if (running[p] != round.cumulative[p]) {
          flag(round.round_index,
               "cumulative for player " + std::to_string(p) + " drifted from the running sum");
        }
      }
    }
  }
  return violations;
}

}  // namespace pgg
