#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "miforge/backend/backend.h"
#include "miforge/orchestrator/session.h"

namespace miforge::pipeline {

struct BackendConfig {
  std::string kind = "scripted";  // scripted | openai | ollama
  std::string base_url;
  std::string model = "scripted";
  std::string api_key_env = "MIFORGE_API_KEY";
  int timeout_seconds = 120;
  int concurrency = 4;
  std::string fixtures;  // scripted only: JSONL of canned replies
};

struct EmbedderConfig {
  std::string kind = "stub";  // stub | openai | ollama | none
  std::string base_url;
  std::string model;
  std::string synonyms;  // stub only
};

struct CorpusConfig {
  int num_profiles = 1000;
  int dialogues_per_profile = 6;
  std::string instrument;  // empty: bundled default
};

struct PipelineConfig {
  BackendConfig backend;
  /// Judge backend; defaults to `backend` when absent from the file.
  BackendConfig judge;
  EmbedderConfig embedder;
  orchestrator::SessionConfig session;
  CorpusConfig corpus;
  std::string output_dir = "out";
  std::uint64_t seed = 42;
  std::string reference_corpus;
  std::string stop_words;
  std::vector<std::string> human_ratings;
  bool judge_include_codes = false;
  std::string rubric;  // empty: bundled rubric
};

/// Throws ValidationError on bad values.
void validate(const PipelineConfig& config);

/// Parses a JSON config; relative paths resolve against the file's folder.
PipelineConfig load_config(const std::filesystem::path& path);
PipelineConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
nlohmann::json config_to_json(const PipelineConfig& config);

/// Chat backend for generation (or judging) built from the config. The
/// scripted kind answers from fixtures, then from the synthetic responder
/// seeded with `seed`.
std::shared_ptr<backend::ChatProvider> make_chat_provider(const BackendConfig& config,
                                                          std::uint64_t seed);
/// Null when the embedder kind is "none".
std::shared_ptr<backend::EmbeddingProvider> make_embedder(const EmbedderConfig& config,
                                                          const BackendConfig& chat);

}  // namespace miforge::pipeline
