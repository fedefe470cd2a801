#include "miforge/pipeline/stages.h"

#include <algorithm>
#include <exception>
#include <functional>
#include <numeric>
#include <set>

#include <fmt/format.h>
#include <omp.h>
#include <spdlog/spdlog.h>

#include "miforge/core/errors.h"
#include "miforge/core/text.h"
#include "miforge/lexmetrics/scorer.h"
#include "miforge/orchestrator/session.h"
#include "miforge/pipeline/jsonl.h"
#include "miforge/pipeline/metrics.h"
#include "miforge/pipeline/report.h"
#include "miforge/profiler/profiler.h"
#include "miforge/stats/stats.h"

namespace miforge::pipeline {

using nlohmann::json;
namespace fs = std::filesystem;

PipelineConfig apply_options(PipelineConfig config, const CommandOptions& options) {
  if (options.seed) config.seed = *options.seed;
  if (options.no_story) config.session.use_story = false;
  if (options.no_mi_code) config.session.use_mi_code = false;
  return config;
}

OutputPaths output_paths(const PipelineConfig& config) {
  const fs::path dir(config.output_dir);
  return {dir / "profiles.jsonl", dir / "stories.jsonl",    dir / "sessions.jsonl",
          dir / "events.jsonl",   dir / "metrics.jsonl",    dir / "judgments.jsonl",
          dir / "agreement.json", dir / "correlations.json", dir / "report.md"};
}

void to_json(json& j, const ProfileEntry& e) {
  j = e.profile;
  j["profile_id"] = e.profile_id;
}

void from_json(const json& j, ProfileEntry& e) {
  e.profile_id = j.at("profile_id").get<std::string>();
  e.profile = j.get<ClientProfile>();
}

std::string profile_id(int index) { return fmt::format("p{:04d}", index); }

std::string session_id(const std::string& model, const std::string& profile, int dialogue,
                       const Ablation& ablation) {
  std::string m = model;
  for (char& c : m) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '.' && c != '-') c = '-';
  }
  return fmt::format("{}_{}_d{}_{}", m, profile, dialogue, variant_name(ablation));
}

std::uint64_t derive_seed(std::uint64_t seed, const std::string& id) {
  return text::fnv1a(id, seed ^ 0x9e3779b97f4a7c15ULL);
}

namespace {

// Runs fn(i) for i in [0, n) on up to `threads` threads. A throwing item is
// logged and counted; the others still run.
int parallel_each(std::size_t n, int threads, const std::function<void(std::size_t)>& fn,
                  const std::function<std::string(std::size_t)>& label) {
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, threads))
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  int failed = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!errors[i]) continue;
    ++failed;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      spdlog::error("{}: {}", label(i), e.what());
    }
  }
  return failed;
}

profiler::QuestionnaireInstrument instrument_for(const PipelineConfig& config) {
  return config.corpus.instrument.empty() ? profiler::default_instrument()
                                          : profiler::load_instrument(config.corpus.instrument);
}

std::vector<ProfileEntry> read_profiles(const fs::path& path) {
  return read_records<ProfileEntry>(path, [](const ProfileEntry& e) {
    if (e.profile_id.empty()) throw ValidationError("profile without profile_id");
    validate(e.profile);
  });
}

std::vector<SituationalStory> read_stories(const fs::path& path) {
  return read_records<SituationalStory>(path, [](const SituationalStory& s) { validate(s); });
}

std::vector<SessionRecord> read_sessions(const fs::path& path) {
  return read_records<SessionRecord>(path, [](const SessionRecord& r) { validate(r); });
}

std::vector<SessionMetrics> read_metrics(const fs::path& path) {
  return read_records<SessionMetrics>(path, [](const SessionMetrics& m) { validate(m); });
}

std::vector<judge::RubricScore> read_judgments(const fs::path& path) {
  return read_records<judge::RubricScore>(path, [](const judge::RubricScore& s) { validate(s); });
}

std::vector<backend::CallEvent> read_events(const fs::path& path) {
  return read_records<backend::CallEvent>(path, [](const backend::CallEvent&) {});
}

template <typename T, typename Key>
std::vector<json> sorted_lines(std::vector<T> records, Key key) {
  std::sort(records.begin(), records.end(),
            [&](const T& a, const T& b) { return key(a) < key(b); });
  std::vector<json> lines;
  lines.reserve(records.size());
  for (const auto& r : records) lines.emplace_back(r);
  return lines;
}

// Existing records stay unless --force asked for them to be redone.
template <typename T, typename Key>
std::map<std::string, T> existing(const fs::path& path, bool enabled,
                                  std::vector<T> (*reader)(const fs::path&), Key key) {
  std::map<std::string, T> out;
  if (!enabled || !fs::exists(path)) return out;
  for (auto& r : reader(path)) out.emplace(key(r), std::move(r));
  return out;
}

std::string pick_name(std::uint64_t seed) {
  static constexpr std::array<const char*, 16> kNames{
      "Alex",  "Jordan", "Sam",   "Taylor", "Casey", "Riley",  "Morgan", "Jamie",
      "Avery", "Quinn",  "Drew",  "Robin",  "Kai",   "Rowan",  "Sasha",  "Noor"};
  return kNames[seed % kNames.size()];
}

backend::GenerationParams params_for(const PipelineConfig& c) { return c.session.params; }

}  // namespace

StageResult cmd_profile(const PipelineConfig& base, const CommandOptions& options) {
  const auto config = apply_options(base, options);
  const auto paths = output_paths(config);
  const auto instrument = instrument_for(config);
  auto have = existing<ProfileEntry>(paths.profiles, fs::exists(paths.profiles), read_profiles,
                                     [](const ProfileEntry& e) { return e.profile_id; });

  std::vector<std::string> todo;
  StageResult result;
  for (int i = 1; i <= config.corpus.num_profiles; ++i) {
    const auto id = profile_id(i);
    if (!options.force && have.count(id)) {
      ++result.skipped;
    } else {
      todo.push_back(id);
    }
  }

  std::vector<std::optional<ProfileEntry>> made(todo.size());
  result.failed = parallel_each(
      todo.size(), config.backend.concurrency,
      [&](std::size_t i) {
        const auto seed = derive_seed(config.seed, todo[i]);
        backend::Backend backend(make_chat_provider(config.backend, seed));
        const auto demographics = profiler::sample_demographics(pick_name(seed), seed);
        profiler::ProfilerOptions po{params_for(config), todo[i]};
        made[i] = ProfileEntry{todo[i],
                               profiler::fill_questionnaire(instrument, demographics, backend, po)};
      },
      [&](std::size_t i) { return "profile " + todo[i]; });

  for (auto& m : made) {
    if (!m) continue;
    have[m->profile_id] = std::move(*m);
    ++result.written;
  }
  std::vector<ProfileEntry> all;
  for (auto& [id, e] : have) all.push_back(std::move(e));
  write_json_lines(paths.profiles,
                   sorted_lines(std::move(all), [](const ProfileEntry& e) { return e.profile_id; }));
  spdlog::info("profile: {} written, {} kept, {} failed", result.written, result.skipped,
               result.failed);
  return result;
}

StageResult cmd_story(const PipelineConfig& base, const CommandOptions& options) {
  const auto config = apply_options(base, options);
  const auto paths = output_paths(config);
  const auto instrument = instrument_for(config);
  const auto profiles = read_profiles(paths.profiles);
  auto have = existing<SituationalStory>(paths.stories, true, read_stories,
                                         [](const SituationalStory& s) { return s.profile_id; });

  StageResult result;
  std::vector<const ProfileEntry*> todo;
  for (const auto& p : profiles) {
    if (!options.force && have.count(p.profile_id)) {
      ++result.skipped;
    } else {
      todo.push_back(&p);
    }
  }

  std::vector<std::optional<SituationalStory>> made(todo.size());
  result.failed = parallel_each(
      todo.size(), config.backend.concurrency,
      [&](std::size_t i) {
        const auto& id = todo[i]->profile_id;
        backend::Backend backend(make_chat_provider(config.backend, derive_seed(config.seed, "story:" + id)));
        profiler::ProfilerOptions po{params_for(config), "story:" + id};
        auto story = profiler::generate_story(todo[i]->profile, instrument, backend, po);
        story.profile_id = id;
        validate(story);
        made[i] = std::move(story);
      },
      [&](std::size_t i) { return "story " + todo[i]->profile_id; });

  for (auto& m : made) {
    if (!m) continue;
    have[m->profile_id] = std::move(*m);
    ++result.written;
  }
  std::vector<SituationalStory> all;
  for (auto& [id, s] : have) all.push_back(std::move(s));
  write_json_lines(paths.stories,
                   sorted_lines(std::move(all), [](const SituationalStory& s) { return s.profile_id; }));
  spdlog::info("story: {} written, {} kept, {} failed", result.written, result.skipped,
               result.failed);
  return result;
}

StageResult cmd_simulate(const PipelineConfig& base, const CommandOptions& options) {
  const auto config = apply_options(base, options);
  const auto paths = output_paths(config);
  const auto profiles = read_profiles(paths.profiles);
  std::map<std::string, SituationalStory> stories;
  if (config.session.use_story) {
    for (auto& s : read_stories(paths.stories)) stories.emplace(s.profile_id, std::move(s));
  }
  auto have = existing<SessionRecord>(paths.sessions, true, read_sessions,
                                      [](const SessionRecord& r) { return r.session_id; });
  std::vector<backend::CallEvent> events;
  if (fs::exists(paths.events)) events = read_events(paths.events);

  const Ablation ablation{config.session.use_story, config.session.use_mi_code};
  struct Job {
    std::string id;
    const ProfileEntry* profile;
  };
  StageResult result;
  std::vector<Job> todo;
  for (const auto& p : profiles) {
    for (int d = 1; d <= config.corpus.dialogues_per_profile; ++d) {
      auto id = session_id(config.backend.model, p.profile_id, d, ablation);
      if (!options.force && have.count(id)) {
        ++result.skipped;
      } else {
        todo.push_back({std::move(id), &p});
      }
    }
  }

  std::vector<std::optional<SessionRecord>> made(todo.size());
  std::vector<std::vector<backend::CallEvent>> logs(todo.size());
  result.failed = parallel_each(
      todo.size(), config.backend.concurrency,
      [&](std::size_t i) {
        const auto& job = todo[i];
        backend::Backend backend(make_chat_provider(config.backend, derive_seed(config.seed, job.id)));
        orchestrator::SessionInputs inputs;
        inputs.session_id = job.id;
        inputs.profile = &job.profile->profile;
        inputs.profile_ref = job.profile->profile_id;
        if (config.session.use_story) {
          const auto it = stories.find(job.profile->profile_id);
          if (it == stories.end()) {
            throw ValidationError("no story for profile " + job.profile->profile_id +
                                  " (run the story stage or pass --no-story)");
          }
          inputs.story = &it->second;
          inputs.story_ref = it->second.profile_id;
        }
        try {
          made[i] = orchestrator::run_session(config.session, inputs, backend);
        } catch (...) {
          logs[i] = backend.events();
          throw;
        }
        logs[i] = backend.events();
      },
      [&](std::size_t i) { return "session " + todo[i].id; });

  std::set<std::string> redone;
  for (const auto& job : todo) redone.insert(job.id);
  std::erase_if(events, [&](const backend::CallEvent& e) { return redone.count(e.session_id) > 0; });
  for (auto& log : logs) events.insert(events.end(), log.begin(), log.end());
  for (auto& m : made) {
    if (!m) continue;
    have[m->session_id] = std::move(*m);
    ++result.written;
  }

  std::vector<SessionRecord> all;
  for (auto& [id, r] : have) all.push_back(std::move(r));
  write_json_lines(paths.sessions,
                   sorted_lines(std::move(all), [](const SessionRecord& r) { return r.session_id; }));
  write_json_lines(paths.events, sorted_lines(std::move(events), [](const backend::CallEvent& e) {
                     return std::make_pair(e.session_id, e.session_seq);
                   }));
  spdlog::info("simulate: {} written, {} kept, {} failed", result.written, result.skipped,
               result.failed);
  return result;
}

StageResult cmd_eval(const PipelineConfig& base, const CommandOptions& options) {
  const auto config = apply_options(base, options);
  const auto paths = output_paths(config);
  const auto sessions = read_sessions(paths.sessions);
  auto have = existing<SessionMetrics>(paths.metrics, true, read_metrics,
                                       [](const SessionMetrics& m) { return m.session_id; });

  StageResult result;
  std::vector<SessionRecord> todo;
  for (const auto& s : sessions) {
    if (!options.force && have.count(s.session_id)) {
      ++result.skipped;
    } else {
      todo.push_back(s);
    }
  }

  lexmetrics::TrigramScorer scorer;
  if (!config.reference_corpus.empty()) {
    scorer.fit_file(config.reference_corpus);
  } else {
    spdlog::warn("eval: no reference_corpus configured; fitting the perplexity scorer on the "
                 "evaluated sessions");
    std::vector<std::string> lines;
    for (const auto& s : sessions) {
      for (const auto& u : s.utterances) lines.push_back(u.text);
    }
    scorer.fit(lines);
  }

  std::unique_ptr<backend::Backend> embedder;
  if (auto e = make_embedder(config.embedder, config.backend)) {
    embedder = std::make_unique<backend::Backend>(make_chat_provider(config.backend, config.seed), e);
  }
  strategy::StrategyOptions so;
  if (!config.stop_words.empty()) {
    so.analyzer = strategy::ContentAnalyzer(strategy::load_stop_words(config.stop_words),
                                            strategy::strip_suffix);
  }
  EvalContext ctx{scorer, embedder.get(), so};
  // Local embedders are CPU bound; remote ones respect the request limit.
  const bool remote = config.embedder.kind == "openai" || config.embedder.kind == "ollama";
  const int threads = remote ? config.backend.concurrency : 0;

  std::vector<std::optional<SessionMetrics>> made(todo.size());
  result.failed = parallel_each(
      todo.size(), threads > 0 ? threads : omp_get_max_threads(),
      [&](std::size_t i) {
        auto m = evaluate_session(todo[i], ctx);
        validate(m);
        made[i] = std::move(m);
      },
      [&](std::size_t i) { return "eval " + todo[i].session_id; });

  for (auto& m : made) {
    if (!m) continue;
    have[m->session_id] = std::move(*m);
    ++result.written;
  }
  std::vector<SessionMetrics> all;
  for (auto& [id, m] : have) all.push_back(std::move(m));
  write_json_lines(paths.metrics,
                   sorted_lines(std::move(all), [](const SessionMetrics& m) { return m.session_id; }));
  spdlog::info("eval: {} written, {} kept, {} failed", result.written, result.skipped,
               result.failed);
  return result;
}

StageResult cmd_judge(const PipelineConfig& base, const CommandOptions& options) {
  const auto config = apply_options(base, options);
  const auto paths = output_paths(config);
  const auto sessions = read_sessions(paths.sessions);
  const std::string judge_model = config.judge.model;
  auto key = [](const judge::RubricScore& s) { return s.session_id + '\n' + s.judge_model; };
  auto have = existing<judge::RubricScore>(paths.judgments, true, read_judgments, key);

  judge::JudgeOptions jo;
  if (!config.rubric.empty()) jo.rubric = judge::load_rubric(config.rubric);
  jo.include_codes = config.judge_include_codes;
  jo.max_retries = config.session.params.max_retries;

  StageResult result;
  std::vector<const SessionRecord*> todo;
  for (const auto& s : sessions) {
    if (!options.force && have.count(s.session_id + '\n' + judge_model)) {
      ++result.skipped;
    } else {
      todo.push_back(&s);
    }
  }

  std::vector<std::optional<judge::RubricScore>> made(todo.size());
  result.failed = parallel_each(
      todo.size(), config.judge.concurrency,
      [&](std::size_t i) {
        const auto& s = *todo[i];
        backend::Backend backend(
            make_chat_provider(config.judge, derive_seed(config.seed, "judge:" + s.session_id)));
        auto score = judge::judge_session(s, backend, jo);
        score.judge_model = judge_model;
        made[i] = std::move(score);
      },
      [&](std::size_t i) { return "judge " + todo[i]->session_id; });

  for (auto& m : made) {
    if (!m) continue;
    have[key(*m)] = std::move(*m);
    ++result.written;
  }
  std::vector<judge::RubricScore> all;
  for (auto& [k, s] : have) all.push_back(std::move(s));
  write_json_lines(paths.judgments, sorted_lines(std::move(all), key));
  spdlog::info("judge: {} written, {} kept, {} failed", result.written, result.skipped,
               result.failed);
  return result;
}

namespace {

json stars_json(const stats::Correlation& c) {
  return json{{"value", c.value}, {"p", c.p}, {"stars", std::string(stats::to_string(stats::significance_stars(c.p)))}};
}

// Wraps a statistic that may be undefined on degenerate input.
template <typename Fn>
json guarded(Fn fn) {
  try {
    return fn();
  } catch (const UndefinedMetricError& e) {
    return json{{"undefined", e.what()}};
  } catch (const ValidationError& e) {
    return json{{"undefined", e.what()}};
  }
}

double row_mean(const std::array<double, judge::kDimensionCount>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

json agreement_json(std::span<const stats::HumanRating> ratings) {
  std::set<std::string> names;
  for (const auto& r : ratings) names.insert(r.annotator);
  json out{{"annotators", std::vector<std::string>(names.begin(), names.end())}, {"sessions", 0}};
  if (names.size() < 2) {
    out["note"] = "agreement needs ratings from two annotators";
    return out;
  }
  const std::string a = *names.begin();
  const std::string b = *std::next(names.begin());
  if (names.size() > 2) out["note"] = "only the first two annotators (" + a + ", " + b + ") are compared";
  out["compared"] = {a, b};

  std::map<std::string, std::array<int, judge::kDimensionCount>> ra, rb;
  for (const auto& r : ratings) {
    auto& target = r.annotator == a ? ra : rb;
    if (r.annotator != a && r.annotator != b) continue;
    if (!target.emplace(r.session_id, r.scores).second) {
      throw ValidationError("annotator " + r.annotator + " rated " + r.session_id + " twice");
    }
  }
  std::vector<std::string> common;
  for (const auto& [id, s] : ra) {
    if (rb.count(id)) common.push_back(id);
  }
  out["sessions"] = common.size();
  if (common.empty()) {
    out["note"] = "the two annotators share no sessions";
    return out;
  }

  json per = json::object();
  std::vector<int> pooled_a, pooled_b;
  double sum = 0.0;
  for (std::size_t d = 0; d < judge::kDimensionCount; ++d) {
    std::vector<int> xa, xb;
    for (const auto& id : common) {
      xa.push_back(ra[id][d]);
      xb.push_back(rb[id][d]);
    }
    const double k = stats::weighted_kappa(xa, xb);
    per[std::string(judge::kDimensions[d])] = k;
    sum += k;
    pooled_a.insert(pooled_a.end(), xa.begin(), xa.end());
    pooled_b.insert(pooled_b.end(), xb.begin(), xb.end());
  }
  out["kappa_per_dimension"] = per;
  out["kappa_pooled"] = stats::weighted_kappa(pooled_a, pooled_b);
  out["kappa_dimension_mean"] = sum / static_cast<double>(judge::kDimensionCount);
  out["weighting"] = "quadratic";
  return out;
}

json correlations_json(std::span<const stats::HumanRating> ratings,
                       std::span<const judge::RubricScore> scores,
                       const std::map<std::string, std::string>& session_models) {
  // Human mean per session and dimension.
  std::map<std::string, std::pair<std::array<double, judge::kDimensionCount>, int>> human;
  for (const auto& r : ratings) {
    auto& [sum, n] = human[r.session_id];
    for (std::size_t d = 0; d < judge::kDimensionCount; ++d) sum[d] += r.scores[d];
    ++n;
  }
  std::map<std::string, std::map<std::string, std::array<double, judge::kDimensionCount>>> by_judge;
  for (const auto& s : scores) {
    auto& row = by_judge[s.judge_model][s.session_id];
    for (std::size_t d = 0; d < judge::kDimensionCount; ++d) row[d] = s.scores[d];
  }

  std::vector<std::string> columns(judge::kDimensions.begin(), judge::kDimensions.end());
  columns.emplace_back("overall");
  auto column = [&](const std::array<double, judge::kDimensionCount>& v, std::size_t c) {
    return c < judge::kDimensionCount ? v[c] : row_mean(v);
  };

  json out{{"human_sessions", human.size()}};
  json judges = json::object();
  for (const auto& [model, rows] : by_judge) {
    std::vector<std::string> ids;
    for (const auto& [id, v] : rows) {
      if (human.count(id)) ids.push_back(id);
    }
    json dims = json::object();
    for (std::size_t c = 0; c < columns.size(); ++c) {
      std::vector<double> h, j;
      for (const auto& id : ids) {
        const auto& [sum, n] = human.at(id);
        std::array<double, judge::kDimensionCount> mean{};
        for (std::size_t d = 0; d < judge::kDimensionCount; ++d) mean[d] = sum[d] / n;
        h.push_back(column(mean, c));
        j.push_back(column(rows.at(id), c));
      }
      dims[columns[c]] = {
          {"n", ids.size()},
          {"pearson", guarded([&] { return stars_json(stats::pearson_test(h, j)); })},
          {"spearman", guarded([&] { return stars_json(stats::spearman_test(h, j)); })},
          {"kendall", guarded([&] { return stars_json(stats::kendall_test(h, j)); })}};
    }
    judges[model] = {{"sessions", ids.size()}, {"dimensions", dims}};

    if (!session_models.empty()) {
      std::map<std::string, std::pair<double, int>> per_model;
      for (const auto& [id, v] : rows) {
        const auto it = session_models.find(id);
        if (it == session_models.end()) continue;
        auto& [sum, n] = per_model[it->second];
        sum += row_mean(v);
        ++n;
      }
      std::vector<std::pair<std::string, double>> ranked;
      for (const auto& [m, sn] : per_model) ranked.emplace_back(m, sn.first / sn.second);
      std::stable_sort(ranked.begin(), ranked.end(),
                       [](const auto& x, const auto& y) { return x.second > y.second; });
      json ranking = json::array();
      for (std::size_t i = 0; i < ranked.size(); ++i) {
        ranking.push_back({{"model", ranked[i].first}, {"overall", ranked[i].second}, {"rank", i + 1}});
      }
      judges[model]["model_ranking"] = ranking;
    }
  }
  out["judges"] = judges;

  if (by_judge.size() >= 2) {
    const auto& [name_a, rows_a] = *by_judge.begin();
    const auto& [name_b, rows_b] = *std::next(by_judge.begin());
    std::vector<std::string> ids;
    for (const auto& [id, v] : rows_a) {
      if (rows_b.count(id)) ids.push_back(id);
    }
    json dims = json::object();
    for (std::size_t c = 0; c < columns.size(); ++c) {
      std::vector<double> x, y;
      for (const auto& id : ids) {
        x.push_back(column(rows_a.at(id), c));
        y.push_back(column(rows_b.at(id), c));
      }
      const double mx = x.empty() ? 0.0 : std::accumulate(x.begin(), x.end(), 0.0) / x.size();
      const double my = y.empty() ? 0.0 : std::accumulate(y.begin(), y.end(), 0.0) / y.size();
      dims[columns[c]] = {{"mean_a", mx},
                          {"mean_b", my},
                          {"diff", mx - my},
                          {"paired_t", guarded([&] {
                             const auto t = stats::paired_t_test(x, y);
                             return json{{"t", t.t},
                                         {"p", t.p},
                                         {"df", t.df},
                                         {"stars", std::string(stats::to_string(stats::significance_stars(t.p)))}};
                           })}};
    }
    out["evaluator_comparison"] = {
        {"a", name_a}, {"b", name_b}, {"sessions", ids.size()}, {"dimensions", dims}};
  }
  return out;
}

StageResult cmd_stats(const PipelineConfig& base, const CommandOptions& options) {
  const auto config = apply_options(base, options);
  const auto paths = output_paths(config);
  std::vector<stats::HumanRating> ratings;
  for (const auto& file : config.human_ratings) {
    auto part = stats::read_ratings_csv(file);
    ratings.insert(ratings.end(), part.begin(), part.end());
  }
  if (ratings.empty()) spdlog::warn("stats: no human ratings configured");
  std::vector<judge::RubricScore> scores;
  if (fs::exists(paths.judgments)) scores = read_judgments(paths.judgments);
  std::map<std::string, std::string> models;
  if (fs::exists(paths.sessions)) {
    for (const auto& s : read_sessions(paths.sessions)) models[s.session_id] = s.model_name;
  }
  write_json_file(paths.agreement, agreement_json(ratings));
  write_json_file(paths.correlations, correlations_json(ratings, scores, models));
  spdlog::info("stats: {} human ratings, {} judgments", ratings.size(), scores.size());
  return StageResult{2, 0, 0};
}

StageResult cmd_report(const PipelineConfig& base, const CommandOptions& options) {
  const auto config = apply_options(base, options);
  const auto paths = output_paths(config);
  const auto metrics = read_metrics(paths.metrics);
  std::vector<judge::RubricScore> scores;
  if (fs::exists(paths.judgments)) scores = read_judgments(paths.judgments);
  write_text_file(paths.report, render_report(metrics, scores));
  spdlog::info("report: {} sessions -> {}", metrics.size(), paths.report.string());
  return StageResult{1, 0, 0};
}

StageResult cmd_all(const PipelineConfig& config, const CommandOptions& options) {
  using Stage = StageResult (*)(const PipelineConfig&, const CommandOptions&);
  constexpr std::array<Stage, 7> kStages{cmd_profile, cmd_story,  cmd_simulate, cmd_eval,
                                         cmd_judge,   cmd_stats, cmd_report};
  StageResult total;
  for (std::size_t i = 0; i < kStages.size(); ++i) {
    // Without a story the story stage has nothing to feed.
    if (kStages[i] == cmd_story && (options.no_story || !config.session.use_story)) continue;
    const auto r = kStages[i](config, options);
    total.written += r.written;
    total.skipped += r.skipped;
    total.failed += r.failed;
    if (r.failed > 0) break;
  }
  return total;
}

}  // namespace miforge::pipeline
