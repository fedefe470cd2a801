#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "miforge/core/profile.h"
#include "miforge/judge/judge.h"
#include "miforge/pipeline/config.h"
#include "miforge/stats/ratings.h"

namespace miforge::pipeline {

/// Command-line overrides applied on top of the config file.
struct CommandOptions {
  bool no_story = false;
  bool no_mi_code = false;
  bool force = false;
  std::optional<std::uint64_t> seed;
};

PipelineConfig apply_options(PipelineConfig config, const CommandOptions& options);

/// What a stage did. A nonzero `failed` makes the CLI exit nonzero.
struct StageResult {
  int written = 0;
  int skipped = 0;
  int failed = 0;
};

/// Output files inside output_dir.
struct OutputPaths {
  std::filesystem::path profiles, stories, sessions, events, metrics, judgments, agreement,
      correlations, report;
};
OutputPaths output_paths(const PipelineConfig& config);

struct ProfileEntry {
  std::string profile_id;
  ClientProfile profile;
  friend bool operator==(const ProfileEntry&, const ProfileEntry&) = default;
};
void to_json(nlohmann::json& j, const ProfileEntry& e);
void from_json(const nlohmann::json& j, ProfileEntry& e);

/// p0001, p0002, ...
std::string profile_id(int index);
/// `<model>_<profile>_d<k>_<variant>` with the model name reduced to
/// [A-Za-z0-9.-].
std::string session_id(const std::string& model, const std::string& profile, int dialogue,
                       const Ablation& ablation);
/// Seed of one unit of work: depends on the run seed and the unit id only.
std::uint64_t derive_seed(std::uint64_t seed, const std::string& id);

StageResult cmd_profile(const PipelineConfig& config, const CommandOptions& options = {});
StageResult cmd_story(const PipelineConfig& config, const CommandOptions& options = {});
StageResult cmd_simulate(const PipelineConfig& config, const CommandOptions& options = {});
StageResult cmd_eval(const PipelineConfig& config, const CommandOptions& options = {});
StageResult cmd_judge(const PipelineConfig& config, const CommandOptions& options = {});
StageResult cmd_stats(const PipelineConfig& config, const CommandOptions& options = {});
StageResult cmd_report(const PipelineConfig& config, const CommandOptions& options = {});

/// profile, story, simulate, eval, judge, stats, report in order; stops at
/// the first stage that fails.
StageResult cmd_all(const PipelineConfig& config, const CommandOptions& options = {});

/// Quadratic-weighted kappa between the first two annotators (by name)
/// over the sessions both rated: per dimension, pooled over all dimensions,
/// and the mean of the six per-dimension values.
nlohmann::json agreement_json(std::span<const stats::HumanRating> ratings);

/// Per judge model and dimension: Pearson, Spearman and Kendall between the
/// human mean and the judge score, with p-values and stars. With two or
/// more judge models, a paired t-test between the first two per dimension.
/// `session_models` (session id -> generating model) adds a per-model
/// ranking under each judge.
nlohmann::json correlations_json(std::span<const stats::HumanRating> ratings,
                                 std::span<const judge::RubricScore> scores,
                                 const std::map<std::string, std::string>& session_models = {});

}  // namespace miforge::pipeline
