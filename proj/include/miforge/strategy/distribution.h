#pragma once

#include <array>
#include <cstddef>
#include <string_view>

#include "miforge/core/mi_code.h"
#include "miforge/core/session.h"

namespace miforge::strategy {

/// Coarse therapist categories in fixed order.
enum class Coarse : std::size_t { reflection = 0, question = 1, input = 2, other = 3 };
inline constexpr std::size_t kCoarseCount = 4;
std::string_view to_string(Coarse c);

/// Throws ValidationError for client codes.
Coarse coarse_of(const MICode& code);

struct CodeCounts {
  std::array<long, kCoarseCount> counts{};

  long total() const;
  long operator[](Coarse c) const { return counts[static_cast<std::size_t>(c)]; }
  void add(Coarse c, long n = 1);

  /// Therapist codes of every exchange; the opening greeting is left out.
  static CodeCounts from_session(const SessionRecord& record);
};

inline constexpr std::array<double, kCoarseCount> kIdealDistribution{0.50, 0.25, 0.20, 0.05};
inline constexpr double kSmoothingEpsilon = 1e-6;

/// Shannon entropy (bits) over observed categories, normalized by log2 of
/// their number; 0 with a single observed category.
double code_entropy(const CodeCounts& counts);

/// exp(-KL(P_obs || P_ideal)), natural log, epsilon added to every category
/// of P_obs before renormalizing.
double strategy_adherence(const CodeCounts& counts);
double distribution_adherence(const std::array<double, kCoarseCount>& observed);

/// Reflections per question; UndefinedMetricError when there are no
/// questions.
double reflection_question_ratio(const CodeCounts& counts);

}  // namespace miforge::strategy
