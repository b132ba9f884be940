#include "govmine/report/tables.hpp"

#include <cstdio>
#include <map>
#include <vector>

namespace govmine::report {

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_fixed3(double v, bool forced_sign) {
  char buf[40];
  std::snprintf(buf, sizeof buf, forced_sign ? "%+.3f" : "%.3f", v);
  return buf;
}

namespace {

std::string pad(const std::string& s, std::size_t width, bool right) {
  if (s.size() >= width) return s;
  std::string fill(width - s.size(), ' ');
  return right ? fill + s : s + fill;
}

std::string ci_cell(const std::optional<metrics::BootstrapCI>& ci,
                    bool forced_sign) {
  if (!ci) return "-";
  std::string out = format_fixed3(ci->mean, forced_sign) + " [" +
                    format_fixed3(ci->lo, false) + ", " +
                    format_fixed3(ci->hi, false) + "]";
  if (ci->excludes_zero()) out += "*";
  return out;
}

std::string mean_cell(const std::optional<metrics::BootstrapCI>& ci) {
  return ci ? format_fixed3(ci->mean, false) : "-";
}

struct FeatureRow {
  std::map<std::string, AggregateRow> by_stat;
};

void render_table(std::string& text,
                  const std::vector<std::string>& features,
                  const std::map<std::string, FeatureRow>& rows,
                  const std::string& title, const std::string& n_stat,
                  const std::vector<std::pair<std::string, std::string>>&
                      columns /* statistic -> heading */,
                  const std::vector<std::string>& kinds /* mean | ci */) {
  text += title + "\n";
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> head = {"feature", "n"};
  for (const auto& [stat, heading] : columns) head.push_back(heading);
  cells.push_back(head);
  for (const auto& feature : features) {
    auto it = rows.find(feature);
    if (it == rows.end()) continue;
    const FeatureRow& row = it->second;
    std::vector<std::string> line = {feature};
    auto n_it = row.by_stat.find(n_stat);
    line.push_back(n_it == row.by_stat.end()
                       ? "0"
                       : std::to_string(n_it->second.n));
    for (std::size_t c = 0; c < columns.size(); ++c) {
      auto sit = row.by_stat.find(columns[c].first);
      if (sit == row.by_stat.end() || !sit->second.ci) {
        line.push_back("-");
      } else if (kinds[c] == "mean") {
        line.push_back(mean_cell(sit->second.ci));
      } else {
        bool forced = columns[c].first.rfind("delta", 0) == 0 ||
                      columns[c].first.rfind("rarefied", 0) == 0;
        line.push_back(ci_cell(sit->second.ci, forced));
      }
    }
    cells.push_back(line);
  }
  std::vector<std::size_t> widths(cells[0].size(), 0);
  for (const auto& line : cells)
    for (std::size_t c = 0; c < line.size(); ++c)
      widths[c] = std::max(widths[c], line[c].size());
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c) text += "  ";
      text += pad(line[c], widths[c], c != 0);
    }
    text += "\n";
  }
  text += "\n";
}

}  // namespace

EmittedTables emit_tables(const ReportBundle& bundle) {
  EmittedTables out;

  std::map<std::string, FeatureRow> rows;
  std::vector<std::string> features;
  for (const AggregateRow& row : bundle.rows) {
    if (rows.find(row.feature) == rows.end()) features.push_back(row.feature);
    rows[row.feature].by_stat[row.statistic] = row;
  }

  out.text = bundle.header + "\n\n";
  render_table(out.text, features, rows,
               "Entropy and drift (bits)", "delta_h",
               {{"h_initial", "initial_H"},
                {"h_latest", "latest_H"},
                {"delta_h", "delta_H [95% CI]"},
                {"jsd", "JSD [95% CI]"}},
               {"mean", "mean", "ci", "ci"});
  render_table(out.text, features, rows,
               "Distinct clusters (richness)", "delta_k",
               {{"k_initial", "initial_K"},
                {"k_latest", "latest_K"},
                {"delta_k", "delta_K [95% CI]"},
                {"rarefied_delta_k", "rarefied_dK [95% CI]"}},
               {"mean", "mean", "ci", "ci"});
  out.text += "* = CI excludes 0\n";

  out.csv =
      "feature,statistic,n,mean,ci_lo,ci_hi,excludes_zero,replicates,alpha\n";
  for (const AggregateRow& row : bundle.rows) {
    out.csv += row.feature + "," + row.statistic + "," +
               std::to_string(row.n) + ",";
    if (row.ci) {
      out.csv += format_full(row.ci->mean) + "," + format_full(row.ci->lo) +
                 "," + format_full(row.ci->hi) + "," +
                 (row.ci->excludes_zero() ? "true" : "false") + "," +
                 std::to_string(row.ci->replicates) + "," +
                 format_full(row.ci->alpha);
    } else {
      out.csv += ",,,,,";
    }
    out.csv += "\n";
  }
  return out;
}

}  // namespace govmine::report
