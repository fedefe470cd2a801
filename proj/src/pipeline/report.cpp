#include "miforge/pipeline/report.h"

#include <algorithm>
#include <set>

#include <fmt/format.h>

namespace miforge::pipeline {

namespace {

constexpr const char* kCheck = "✓";
constexpr const char* kCross = "✗";

const std::array<Ablation, 4> kVariants{
    Ablation{true, true}, Ablation{false, true}, Ablation{true, false}, Ablation{false, false}};

bool is_full(const Ablation& a) { return a.story_used && a.mi_code_used; }

std::string row(const std::vector<std::string>& cells) {
  std::string out = "|";
  for (const auto& c : cells) out += " " + c + " |";
  return out + "\n";
}

std::string rule(std::size_t columns) {
  std::string out = "|---|";
  for (std::size_t i = 1; i < columns; ++i) out += "---:|";
  return out + "\n";
}

// Rounded the way it is displayed, so ties in the table are ties here.
double shown(Metric m, double v) {
  const double scaled = info(m).percent ? v * 100.0 : v;
  return std::stod(fmt::format("{:.1f}", scaled));
}

bool better(Metric m, double a, double b) {
  return info(m).higher_is_better ? shown(m, a) > shown(m, b) : shown(m, a) < shown(m, b);
}

}  // namespace

MetricSummary summarize(std::span<const SessionMetrics> records) {
  MetricSummary s;
  s.sessions = records.size();
  for (std::size_t k = 0; k < kMetricCount; ++k) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& r : records) {
      if (r.values[k]) {
        sum += *r.values[k];
        ++n;
      }
    }
    if (n > 0) s.means[k] = sum / static_cast<double>(n);
  }
  return s;
}

std::string variant_name(const Ablation& a) {
  if (a.story_used && a.mi_code_used) return "full";
  if (a.mi_code_used) return "no-story";
  if (a.story_used) return "no-mi";
  return "no-both";
}

std::string variant_label(const Ablation& a) {
  if (a.story_used && a.mi_code_used) return "Full";
  if (a.mi_code_used) return "w/o Story";
  if (a.story_used) return "w/o MI";
  return "w/o Both";
}

std::string format_cell(Metric m, double value) {
  const auto& meta = info(m);
  std::string out = fmt::format("{:.1f}", meta.percent ? value * 100.0 : value);
  if (meta.threshold) out = std::string(value > *meta.threshold ? kCheck : kCross) + " " + out;
  return out;
}

std::string render_model_table(std::span<const SessionMetrics> records) {
  std::vector<SessionMetrics> full;
  for (const auto& r : records) {
    if (is_full(r.ablation)) full.push_back(r);
  }
  std::set<std::string> models;
  for (const auto& r : full) models.insert(r.model_name);

  std::vector<std::string> names(models.begin(), models.end());
  std::vector<MetricSummary> summaries;
  for (const auto& name : names) {
    std::vector<SessionMetrics> mine;
    for (const auto& r : full) {
      if (r.model_name == name) mine.push_back(r);
    }
    summaries.push_back(summarize(mine));
  }

  std::vector<std::string> head{"Metric"};
  head.insert(head.end(), names.begin(), names.end());
  head.push_back("Overall");
  std::string out = row(head) + rule(head.size());

  for (const auto& meta : metric_table()) {
    const Metric m = meta.metric;
    std::vector<std::optional<double>> vals;
    for (const auto& s : summaries) vals.push_back(s[m]);

    // Distinct displayed values, best first.
    std::vector<double> ranked;
    for (const auto& v : vals) {
      if (v) ranked.push_back(*v);
    }
    std::sort(ranked.begin(), ranked.end(), [&](double a, double b) { return better(m, a, b); });
    ranked.erase(std::unique(ranked.begin(), ranked.end(),
                             [&](double a, double b) { return shown(m, a) == shown(m, b); }),
                 ranked.end());

    std::vector<std::string> cells{std::string(meta.label)};
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& v : vals) {
      if (!v) {
        cells.push_back("n/a");
        continue;
      }
      sum += *v;
      ++n;
      std::string cell = format_cell(m, *v);
      if (names.size() >= 2 && shown(m, *v) == shown(m, ranked.front())) {
        cell = "**" + cell + "**";
      } else if (names.size() >= 3 && ranked.size() > 1 && shown(m, *v) == shown(m, ranked[1])) {
        cell = "_" + cell + "_";
      }
      cells.push_back(cell);
    }
    cells.push_back(n > 0 ? format_cell(m, sum / static_cast<double>(n)) : "n/a");
    out += row(cells);
  }
  return out;
}

std::string render_ablation_table(std::span<const SessionMetrics> records,
                                  const std::string& model_name) {
  std::array<MetricSummary, 4> summaries;
  std::array<bool, 4> present{};
  for (std::size_t v = 0; v < kVariants.size(); ++v) {
    std::vector<SessionMetrics> mine;
    for (const auto& r : records) {
      if (r.model_name == model_name && r.ablation == kVariants[v]) mine.push_back(r);
    }
    present[v] = !mine.empty();
    summaries[v] = summarize(mine);
  }

  std::vector<std::string> head{"Metric"};
  for (const auto& a : kVariants) head.push_back(variant_label(a));
  std::string out = row(head) + rule(head.size());

  for (const auto& meta : metric_table()) {
    const Metric m = meta.metric;
    const auto base = summaries[0][m];
    // Worst ablated column, if it is worse than Full.
    std::optional<std::size_t> worst;
    if (base) {
      for (std::size_t v = 1; v < kVariants.size(); ++v) {
        const auto x = summaries[v][m];
        if (!x || !better(m, *base, *x)) continue;
        if (!worst || better(m, *summaries[*worst][m], *x)) worst = v;
      }
    }
    std::vector<std::string> cells{std::string(meta.label)};
    for (std::size_t v = 0; v < kVariants.size(); ++v) {
      const auto x = summaries[v][m];
      if (!present[v] || !x) {
        cells.push_back("n/a");
        continue;
      }
      std::string cell = format_cell(m, *x);
      if (worst && *worst == v) cell = "**" + cell + "**";
      cells.push_back(cell);
    }
    out += row(cells);
  }
  return out;
}

std::string render_judge_table(std::span<const judge::RubricScore> scores) {
  const auto groups =
      judge::aggregate_scores(scores, [](const judge::RubricScore& s) { return s.judge_model; });
  std::vector<std::string> head{"Judge"};
  for (auto d : judge::kDimensions) {
    std::string name(d);
    name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
    head.push_back(name);
  }
  head.push_back("Overall");
  head.push_back("Sessions");
  std::string out = row(head) + rule(head.size());
  for (const auto& [model, means] : groups) {
    std::vector<std::string> cells{model};
    for (double v : means.means) cells.push_back(fmt::format("{:.2f}", v));
    cells.push_back(fmt::format("{:.2f}", means.overall));
    cells.push_back(std::to_string(means.count));
    out += row(cells);
  }
  return out;
}

std::string render_report(std::span<const SessionMetrics> records,
                          std::span<const judge::RubricScore> scores) {
  std::string out = "# MI dialogue evaluation\n\n";
  out += fmt::format("{} evaluated sessions.\n\n", records.size());
  out += "## Automatic metrics (full configuration)\n\n";
  out += "Percentages and ratios to one decimal. " + std::string(kCheck) + "/" + kCross +
         " marks whether a metric clears its recommended threshold. Self-BLEU is better "
         "when lower; every other row is better when higher.\n\n";
  out += render_model_table(records);

  std::set<std::string> models;
  for (const auto& r : records) models.insert(r.model_name);
  for (const auto& model : models) {
    std::set<std::string> variants;
    for (const auto& r : records) {
      if (r.model_name == model) variants.insert(variant_name(r.ablation));
    }
    if (variants.size() < 2) continue;
    out += fmt::format("\n## Ablation: {}\n\nBold marks the largest degradation against Full.\n\n",
                       model);
    out += render_ablation_table(records, model);
  }

  if (!scores.empty()) {
    out += "\n## Judge scores\n\nMeans on the 1-5 rubric; Overall is the mean of the six "
           "dimension means.\n\n";
    out += render_judge_table(scores);
  }
  return out;
}

}  // namespace miforge::pipeline
