#include "miforge/profiler/instrument.h"

#include <algorithm>
#include <fstream>
#include <set>

#include "miforge/core/errors.h"
#include "miforge/core/profile.h"

namespace miforge::profiler {

using nlohmann::json;

std::vector<std::string> QuestionnaireInstrument::domains() const {
  std::vector<std::string> out;
  for (const auto& item : items) {
    if (std::find(out.begin(), out.end(), item.domain) == out.end()) out.push_back(item.domain);
  }
  return out;
}

std::vector<std::string> QuestionnaireInstrument::item_domains() const {
  std::vector<std::string> out;
  out.reserve(items.size());
  for (const auto& item : items) out.push_back(item.domain);
  return out;
}

const QuestionnaireInstrument& default_instrument() {
  static const QuestionnaireInstrument instrument = [] {
    const auto& d = default_domains();
    QuestionnaireInstrument q;
    auto add = [&q](std::string text, std::string_view domain) {
      q.items.push_back({"Q" + std::to_string(q.items.size() + 1), std::move(text),
                         std::string(domain)});
    };
    add("Finding little enjoyment in activities you usually like", d[0]);
    add("Feeling low, hopeless, or down", d[0]);
    add("Feeling more irritable or easily angered than usual", d[1]);
    add("Sleeping much less than usual yet still feeling full of energy", d[2]);
    add("Taking on far more projects or risks than usual", d[2]);
    add("Feeling nervous, worried, or on edge", d[3]);
    add("Feeling sudden fear or panic", d[3]);
    add("Staying away from situations that make you anxious", d[3]);
    add("Aches or pains without a clear explanation", d[4]);
    add("Feeling that your physical complaints are not taken seriously", d[4]);
    add("Thoughts of harming yourself", d[5]);
    add("Hearing or seeing things other people do not", d[6]);
    add("Feeling that others can read or control your thoughts", d[6]);
    add("Trouble with sleep that affects how you feel during the day", d[7]);
    add("Trouble remembering things or finding your way", d[8]);
    add("Unwanted thoughts or images that keep coming back", d[9]);
    add("Feeling driven to repeat certain actions or mental routines", d[9]);
    add("Feeling detached from yourself, your body, or your surroundings", d[10]);
    add("Feeling unsure about who you are or what you want from life", d[11]);
    add("Feeling distant from other people or not enjoying relationships", d[11]);
    add("Having four or more alcoholic drinks in a single day", d[12]);
    add("Smoking or using tobacco products", d[12]);
    add("Using medicines or drugs beyond what was prescribed", d[12]);
    q.scale_labels = {"Not at all", "Rarely", "Several days", "More than half the days",
                      "Almost always"};
    return q;
  }();
  return instrument;
}

void validate(const QuestionnaireInstrument& instrument) {
  if (instrument.items.size() != kItemCount) {
    throw ValidationError("instrument must have 23 items, has " +
                          std::to_string(instrument.items.size()));
  }
  std::set<std::string> ids;
  for (const auto& item : instrument.items) {
    if (item.text.empty() || item.domain.empty() || item.id.empty()) {
      throw ValidationError("instrument item with empty id, text or domain");
    }
    if (!ids.insert(item.id).second) throw ValidationError("duplicate item id " + item.id);
  }
  if (instrument.domains().size() != kDomainCount) {
    throw ValidationError("instrument must span 13 domains, spans " +
                          std::to_string(instrument.domains().size()));
  }
  for (const auto& label : instrument.scale_labels) {
    if (label.empty()) throw ValidationError("empty scale label");
  }
}

void to_json(json& j, const QuestionnaireInstrument& instrument) {
  json items = json::array();
  for (const auto& item : instrument.items) {
    items.push_back({{"id", item.id}, {"text", item.text}, {"domain", item.domain}});
  }
  j = json{{"items", items}, {"scale_labels", instrument.scale_labels}};
}

void from_json(const json& j, QuestionnaireInstrument& instrument) {
  instrument.items.clear();
  for (const auto& item : j.at("items")) {
    instrument.items.push_back({item.at("id").get<std::string>(),
                                item.at("text").get<std::string>(),
                                item.at("domain").get<std::string>()});
  }
  const auto labels = j.at("scale_labels").get<std::vector<std::string>>();
  if (labels.size() != 5) throw ValidationError("scale_labels must have 5 entries");
  std::copy(labels.begin(), labels.end(), instrument.scale_labels.begin());
}

QuestionnaireInstrument load_instrument(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open instrument file " + path.string());
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ValidationError(path.string() + " is not valid JSON");
  auto instrument = j.get<QuestionnaireInstrument>();
  validate(instrument);
  return instrument;
}

}  // namespace miforge::profiler
