#include "miforge/pipeline/config.h"

#include <cstdlib>
#include <fstream>

#include "miforge/backend/http.h"
#include "miforge/backend/scripted.h"
#include "miforge/backend/stub_embedder.h"
#include "miforge/core/errors.h"

namespace miforge::pipeline {

using nlohmann::json;

namespace {

std::string resolve(const std::string& p, const std::filesystem::path& base) {
  if (p.empty()) return p;
  const std::filesystem::path path(p);
  return path.is_absolute() ? p : (base / path).lexically_normal().string();
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key) && !j.at(key).is_null()) out = j.at(key).get<T>();
}

BackendConfig backend_from(const json& j, BackendConfig out) {
  read(j, "kind", out.kind);
  read(j, "base_url", out.base_url);
  read(j, "model", out.model);
  read(j, "api_key_env", out.api_key_env);
  read(j, "timeout_seconds", out.timeout_seconds);
  read(j, "concurrency", out.concurrency);
  read(j, "fixtures", out.fixtures);
  return out;
}

json backend_to(const BackendConfig& b) {
  return json{{"kind", b.kind},
              {"base_url", b.base_url},
              {"model", b.model},
              {"api_key_env", b.api_key_env},
              {"timeout_seconds", b.timeout_seconds},
              {"concurrency", b.concurrency},
              {"fixtures", b.fixtures}};
}

void validate_backend(const BackendConfig& b, const char* what) {
  if (b.kind != "scripted" && b.kind != "openai" && b.kind != "ollama") {
    throw ValidationError(std::string(what) + ".kind must be scripted, openai or ollama");
  }
  if (b.kind != "scripted" && b.base_url.empty()) {
    throw ValidationError(std::string(what) + ".base_url is required for " + b.kind);
  }
  if (b.concurrency < 1) throw ValidationError(std::string(what) + ".concurrency must be >= 1");
  if (b.timeout_seconds < 1) throw ValidationError(std::string(what) + ".timeout_seconds must be >= 1");
}

backend::HttpSettings http_settings(const BackendConfig& b) {
  backend::HttpSettings s;
  s.protocol = b.kind == "ollama" ? backend::WireProtocol::ollama : backend::WireProtocol::openai;
  s.base_url = b.base_url;
  s.model = b.model;
  s.timeout_seconds = b.timeout_seconds;
  if (!b.api_key_env.empty()) {
    if (const char* key = std::getenv(b.api_key_env.c_str())) s.api_key = key;
  }
  return s;
}

}  // namespace

void validate(const PipelineConfig& c) {
  validate_backend(c.backend, "backend");
  validate_backend(c.judge, "judge");
  if (c.embedder.kind != "stub" && c.embedder.kind != "openai" && c.embedder.kind != "ollama" &&
      c.embedder.kind != "none") {
    throw ValidationError("embedder.kind must be stub, openai, ollama or none");
  }
  orchestrator::validate(c.session);
  if (c.corpus.num_profiles < 1) throw ValidationError("corpus.num_profiles must be >= 1");
  if (c.corpus.dialogues_per_profile < 1) {
    throw ValidationError("corpus.dialogues_per_profile must be >= 1");
  }
  if (c.output_dir.empty()) throw ValidationError("output_dir must not be empty");
}

PipelineConfig config_from_json(const json& j, const std::filesystem::path& base) {
  PipelineConfig c;
  if (j.contains("backend")) c.backend = backend_from(j.at("backend"), c.backend);
  c.judge = j.contains("judge") ? backend_from(j.at("judge"), c.backend) : c.backend;
  if (j.contains("embedder")) {
    const auto& e = j.at("embedder");
    read(e, "kind", c.embedder.kind);
    read(e, "base_url", c.embedder.base_url);
    read(e, "model", c.embedder.model);
    read(e, "synonyms", c.embedder.synonyms);
  }
  if (j.contains("session")) {
    const auto& s = j.at("session");
    read(s, "t_min", c.session.t_min);
    read(s, "t_max", c.session.t_max);
    read(s, "context_window_k", c.session.context_window_k);
    read(s, "temperature", c.session.params.temperature);
    read(s, "top_p", c.session.params.top_p);
    read(s, "max_retries", c.session.params.max_retries);
  }
  if (j.contains("ablation")) {
    read(j.at("ablation"), "use_story", c.session.use_story);
    read(j.at("ablation"), "use_mi_code", c.session.use_mi_code);
  }
  if (j.contains("corpus")) {
    const auto& k = j.at("corpus");
    read(k, "num_profiles", c.corpus.num_profiles);
    read(k, "dialogues_per_profile", c.corpus.dialogues_per_profile);
    read(k, "instrument", c.corpus.instrument);
  }
  read(j, "output_dir", c.output_dir);
  read(j, "seed", c.seed);
  read(j, "reference_corpus", c.reference_corpus);
  read(j, "stop_words", c.stop_words);
  if (j.contains("human_ratings")) {
    const auto& h = j.at("human_ratings");
    if (h.is_string()) {
      c.human_ratings.push_back(h.get<std::string>());
    } else if (h.is_array()) {
      c.human_ratings = h.get<std::vector<std::string>>();
    }
  }
  read(j, "judge_include_codes", c.judge_include_codes);
  read(j, "rubric", c.rubric);

  c.output_dir = resolve(c.output_dir, base);
  c.backend.fixtures = resolve(c.backend.fixtures, base);
  c.judge.fixtures = resolve(c.judge.fixtures, base);
  c.embedder.synonyms = resolve(c.embedder.synonyms, base);
  c.corpus.instrument = resolve(c.corpus.instrument, base);
  c.reference_corpus = resolve(c.reference_corpus, base);
  c.stop_words = resolve(c.stop_words, base);
  c.rubric = resolve(c.rubric, base);
  for (auto& h : c.human_ratings) h = resolve(h, base);
  validate(c);
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  try {
    return config_from_json(j, std::filesystem::absolute(path).parent_path());
  } catch (const json::exception& e) {
    throw ValidationError("config " + path.string() + ": " + e.what());
  }
}

json config_to_json(const PipelineConfig& c) {
  return json{{"backend", backend_to(c.backend)},
              {"judge", backend_to(c.judge)},
              {"embedder",
               {{"kind", c.embedder.kind},
                {"base_url", c.embedder.base_url},
                {"model", c.embedder.model},
                {"synonyms", c.embedder.synonyms}}},
              {"session",
               {{"t_min", c.session.t_min},
                {"t_max", c.session.t_max},
                {"context_window_k", c.session.context_window_k},
                {"temperature", c.session.params.temperature},
                {"top_p", c.session.params.top_p},
                {"max_retries", c.session.params.max_retries}}},
              {"ablation", {{"use_story", c.session.use_story}, {"use_mi_code", c.session.use_mi_code}}},
              {"corpus",
               {{"num_profiles", c.corpus.num_profiles},
                {"dialogues_per_profile", c.corpus.dialogues_per_profile},
                {"instrument", c.corpus.instrument}}},
              {"output_dir", c.output_dir},
              {"seed", c.seed},
              {"reference_corpus", c.reference_corpus},
              {"stop_words", c.stop_words},
              {"human_ratings", c.human_ratings},
              {"judge_include_codes", c.judge_include_codes},
              {"rubric", c.rubric}};
}

std::shared_ptr<backend::ChatProvider> make_chat_provider(const BackendConfig& config,
                                                          std::uint64_t seed) {
  if (config.kind == "scripted") {
    auto p = std::make_shared<backend::ScriptedProvider>(config.model);
    if (!config.fixtures.empty()) p->load_fixtures(config.fixtures);
    p->set_fallback(backend::synthetic_responder(seed));
    return p;
  }
  return std::make_shared<backend::HttpChatProvider>(http_settings(config));
}

std::shared_ptr<backend::EmbeddingProvider> make_embedder(const EmbedderConfig& config,
                                                          const BackendConfig& chat) {
  if (config.kind == "none") return nullptr;
  if (config.kind == "stub") {
    auto stub = std::make_shared<backend::StubEmbedder>();
    if (!config.synonyms.empty()) stub->load_synonyms(config.synonyms);
    return stub;
  }
  BackendConfig b = chat;
  b.kind = config.kind;
  if (!config.base_url.empty()) b.base_url = config.base_url;
  auto settings = http_settings(b);
  settings.embedding_model = config.model.empty() ? b.model : config.model;
  return std::make_shared<backend::HttpEmbeddingProvider>(settings);
}

}  // namespace miforge::pipeline
