#include "miforge/judge/judge.h"

#include <fstream>
#include <sstream>

#include "miforge/core/errors.h"
#include "miforge/orchestrator/prompts.h"

namespace miforge::judge {

using nlohmann::json;

void validate(const RubricScore& score) {
  if (score.session_id.empty()) throw ValidationError("rubric score without session_id");
  for (std::size_t d = 0; d < kDimensionCount; ++d) {
    if (score.scores[d] < kMinScore || score.scores[d] > kMaxScore) {
      throw ValidationError("rubric score " + std::string(kDimensions[d]) + "=" +
                            std::to_string(score.scores[d]) + " outside [1, 5]");
    }
  }
}

void to_json(json& j, const RubricScore& s) {
  j = json{{"session_id", s.session_id}, {"judge_model", s.judge_model}};
  for (std::size_t d = 0; d < kDimensionCount; ++d) j[std::string(kDimensions[d])] = s.scores[d];
}

void from_json(const json& j, RubricScore& s) {
  s.session_id = j.at("session_id").get<std::string>();
  s.judge_model = j.at("judge_model").get<std::string>();
  for (std::size_t d = 0; d < kDimensionCount; ++d) {
    s.scores[d] = j.at(std::string(kDimensions[d])).get<int>();
  }
}

std::string load_rubric(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open rubric " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json judge_schema() {
  json props = json::object();
  json required = json::array();
  for (auto d : kDimensions) {
    props[std::string(d)] = {{"type", "integer"}, {"minimum", kMinScore}, {"maximum", kMaxScore}};
    required.push_back(std::string(d));
  }
  return json{{"type", "object"}, {"required", required}, {"properties", props}};
}

backend::ChatRequest judge_request(const SessionRecord& session, const JudgeOptions& options) {
  backend::ChatRequest r;
  r.system_prompt =
      "You are an expert evaluator of Motivational Interviewing counseling dialogues. Score the "
      "conversation on each criterion using the rubric.";
  std::string keys;
  for (auto d : kDimensions) keys += (keys.empty() ? "\"" : ", \"") + std::string(d) + "\": <1-5>";
  r.messages.push_back(
      {"user", "Rubric:\n" + options.rubric + "\n\nConversation:\n" +
                   orchestrator::render_transcript(session.utterances, options.include_codes) +
                   "\n\nOutput: return only JSON {" + keys + "} with integer scores."});
  r.json_schema = judge_schema();
  r.role = backend::CallRole::judge;
  r.session_id = "judge:" + session.session_id;
  r.params.temperature = options.temperature;
  r.params.max_retries = options.max_retries;
  return r;
}

RubricScore judge_session(const SessionRecord& session, backend::Backend& backend,
                          const JudgeOptions& options) {
  if (session.utterances.empty()) throw ValidationError("cannot judge an empty session");
  const json reply = backend.chat_structured(judge_request(session, options));
  RubricScore s;
  s.session_id = session.session_id;
  s.judge_model = backend.model_name();
  for (std::size_t d = 0; d < kDimensionCount; ++d) {
    s.scores[d] = reply.at(std::string(kDimensions[d])).get<int>();
  }
  validate(s);
  return s;
}

DimensionMeans from_dimension_means(const std::array<double, kDimensionCount>& means) {
  DimensionMeans out;
  out.means = means;
  double sum = 0.0;
  for (double m : means) sum += m;
  out.overall = sum / static_cast<double>(kDimensionCount);
  return out;
}

DimensionMeans mean_scores(std::span<const RubricScore> scores) {
  if (scores.empty()) throw UndefinedMetricError("no rubric scores to aggregate");
  std::array<double, kDimensionCount> sums{};
  for (const auto& s : scores) {
    for (std::size_t d = 0; d < kDimensionCount; ++d) sums[d] += s.scores[d];
  }
  for (auto& x : sums) x /= static_cast<double>(scores.size());
  auto out = from_dimension_means(sums);
  out.count = scores.size();
  return out;
}

std::map<std::string, DimensionMeans> aggregate_scores(std::span<const RubricScore> scores,
                                                       const GroupKey& group_key) {
  if (scores.empty()) throw UndefinedMetricError("no rubric scores to aggregate");
  std::map<std::string, std::vector<RubricScore>> groups;
  for (const auto& s : scores) groups[group_key(s)].push_back(s);
  std::map<std::string, DimensionMeans> out;
  for (const auto& [key, members] : groups) out.emplace(key, mean_scores(members));
  return out;
}

}  // namespace miforge::judge
