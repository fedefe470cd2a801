#pragma once

#include <string>

#include "miforge/backend/types.h"
#include "miforge/core/profile.h"
#include "miforge/profiler/instrument.h"

namespace miforge::profiler {

struct Demographics;

backend::ChatRequest profiling_request(const QuestionnaireInstrument& instrument,
                                       const Demographics& demographics);

backend::ChatRequest story_request(const ClientProfile& profile,
                                   const QuestionnaireInstrument& instrument,
                                   const std::string& primary_symptom);

}  // namespace miforge::profiler
