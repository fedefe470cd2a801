#include "miforge/pipeline/metrics.h"

#include <exception>

#include <omp.h>

#include "miforge/core/errors.h"
#include "miforge/lexmetrics/lexmetrics.h"

namespace miforge::pipeline {

using nlohmann::json;

const std::array<MetricInfo, kMetricCount>& metric_table() {
  static const std::array<MetricInfo, kMetricCount> table{{
      {Metric::entropy, "entropy", "Entropy (%)", true, true, std::nullopt},
      {Metric::distinct2, "distinct2", "Distinct-2 (%)", true, true, std::nullopt},
      // Higher reads as less templatic phrasing.
      {Metric::perplexity, "perplexity", "Perplexity", false, true, std::nullopt},
      {Metric::self_bleu, "self_bleu", "Self-BLEU (%)", true, false, std::nullopt},
      {Metric::code_entropy, "code_entropy", "Code Entropy (%)", true, true, std::nullopt},
      {Metric::strategy_adherence, "strategy_adherence", "Strategy Adherence (%)", true, true,
       std::nullopt},
      {Metric::reflection_depth, "reflection_depth", "Reflection Depth (%)", true, true,
       std::nullopt},
      {Metric::complex_reflection_ratio, "complex_reflection_ratio",
       "Complex Reflection Ratio (>50%)", true, true, strategy::kComplexReflectionThreshold},
      {Metric::open_question_ratio, "open_question_ratio", "Open Question Ratio (>70%)", true,
       true, strategy::kOpenQuestionThreshold},
      {Metric::reflection_question_ratio, "reflection_question_ratio",
       "Reflection/Question Ratio (>2.0)", false, true, strategy::kReflectionQuestionThreshold},
  }};
  return table;
}

const MetricInfo& info(Metric m) { return metric_table()[static_cast<std::size_t>(m)]; }

namespace {

constexpr std::array<const char*, 4> kCountKeys{"reflection", "question", "input", "other"};

}  // namespace

void to_json(json& j, const SessionMetrics& m) {
  j = json{{"session_id", m.session_id}, {"model_name", m.model_name}, {"ablation", m.ablation}};
  for (const auto& row : metric_table()) {
    const auto v = m[row.metric];
    j[std::string(row.key)] = v ? json(*v) : json(nullptr);
  }
  j["pass_complex_reflection"] = m.pass_complex_reflection;
  j["pass_open_question"] = m.pass_open_question;
  j["pass_reflection_question"] = m.pass_reflection_question;
  json counts = json::object();
  for (std::size_t i = 0; i < kCountKeys.size(); ++i) counts[kCountKeys[i]] = m.code_counts[i];
  j["code_counts"] = counts;
  j["undefined"] = m.undefined;
}

void from_json(const json& j, SessionMetrics& m) {
  m.session_id = j.at("session_id").get<std::string>();
  m.model_name = j.at("model_name").get<std::string>();
  m.ablation = j.at("ablation").get<Ablation>();
  for (const auto& row : metric_table()) {
    const auto& v = j.at(std::string(row.key));  // present even when null
    m[row.metric] = v.is_null() ? std::nullopt : std::optional<double>(v.get<double>());
  }
  m.pass_complex_reflection = j.at("pass_complex_reflection").get<bool>();
  m.pass_open_question = j.at("pass_open_question").get<bool>();
  m.pass_reflection_question = j.at("pass_reflection_question").get<bool>();
  const auto& counts = j.at("code_counts");
  for (std::size_t i = 0; i < kCountKeys.size(); ++i) m.code_counts[i] = counts.at(kCountKeys[i]).get<long>();
  m.undefined = j.value("undefined", std::vector<std::string>{});
}

void validate(const SessionMetrics& m) {
  if (m.session_id.empty()) throw ValidationError("metrics record without session_id");
  for (const auto& row : metric_table()) {
    const auto v = m[row.metric];
    if (!v) continue;
    const std::string name(row.key);
    if (row.metric == Metric::perplexity) {
      if (!(*v >= 1.0)) throw ValidationError(name + " must be >= 1");
    } else if (row.metric == Metric::reflection_question_ratio) {
      if (!(*v >= 0.0)) throw ValidationError(name + " must be >= 0");
    } else if (!(*v >= 0.0 && *v <= 1.0)) {
      throw ValidationError(name + " must lie in [0, 1]");
    }
  }
  for (long c : m.code_counts) {
    if (c < 0) throw ValidationError("negative code count");
  }
}

SessionMetrics evaluate_session(const SessionRecord& record, const EvalContext& ctx) {
  SessionMetrics m;
  m.session_id = record.session_id;
  m.model_name = record.model_name;
  m.ablation = record.ablation;

  const auto tokens = lexmetrics::tokenize_session(record);
  auto lexical = [&](Metric metric, auto&& fn) {
    try {
      m[metric] = fn();
    } catch (const UndefinedMetricError& e) {
      m.undefined.push_back(std::string(info(metric).key) + ": " + e.what());
    }
  };
  lexical(Metric::entropy, [&] { return lexmetrics::token_entropy(tokens); });
  lexical(Metric::distinct2, [&] { return lexmetrics::distinct2(tokens); });
  lexical(Metric::perplexity, [&] { return lexmetrics::perplexity(tokens, ctx.scorer); });
  lexical(Metric::self_bleu, [&] { return lexmetrics::self_bleu_serial(tokens); });

  const auto report = strategy::evaluate_strategy(record, ctx.embedder, ctx.options);
  m[Metric::code_entropy] = report.code_entropy;
  m[Metric::strategy_adherence] = report.strategy_adherence;
  m[Metric::reflection_depth] = report.reflection_depth;
  m[Metric::complex_reflection_ratio] = report.complex_reflection_ratio;
  m[Metric::open_question_ratio] = report.open_question_ratio;
  m[Metric::reflection_question_ratio] = report.reflection_question_ratio;
  for (const auto& note : report.undefined) m.undefined.push_back(note);

  m.pass_complex_reflection =
      report.complex_reflection_ratio && strategy::passes_complex_reflection(*report.complex_reflection_ratio);
  m.pass_open_question =
      report.open_question_ratio && strategy::passes_open_question(*report.open_question_ratio);
  m.pass_reflection_question = report.reflection_question_ratio &&
                               strategy::passes_reflection_question(*report.reflection_question_ratio);
  for (std::size_t i = 0; i < 4; ++i) m.code_counts[i] = report.counts.counts[i];
  return m;
}

std::vector<SessionMetrics> evaluate_corpus(const std::vector<SessionRecord>& records,
                                            const EvalContext& ctx, int threads) {
  const auto n = static_cast<std::ptrdiff_t>(records.size());
  std::vector<SessionMetrics> out(records.size());
  std::vector<std::exception_ptr> errors(records.size());
  const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(team)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = evaluate_session(records[static_cast<std::size_t>(i)], ctx);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<SessionMetrics> evaluate_corpus_serial(const std::vector<SessionRecord>& records,
                                                   const EvalContext& ctx) {
  std::vector<SessionMetrics> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(evaluate_session(r, ctx));
  return out;
}

}  // namespace miforge::pipeline
