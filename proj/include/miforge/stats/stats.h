#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace miforge::stats {

/// Quadratic-weighted Cohen's kappa over the integer categories
/// [min_category, max_category]. When the expected weighted disagreement is
/// zero (both raters use one identical category) the result is 1.0 and a
/// warning is logged.
double weighted_kappa(std::span<const int> a, std::span<const int> b, int min_category = 1,
                      int max_category = 5);

double pearson(std::span<const double> a, std::span<const double> b);
/// Pearson correlation of average ranks.
double spearman(std::span<const double> a, std::span<const double> b);
double kendall_tau_b(std::span<const double> a, std::span<const double> b);

/// 1-based ranks, ties sharing the mean of their positions.
std::vector<double> average_ranks(std::span<const double> x);

struct Correlation {
  double value = 0.0;
  double p = 1.0;  // two-sided
};

/// p from Student t with n - 2 degrees of freedom.
Correlation pearson_test(std::span<const double> a, std::span<const double> b);
Correlation spearman_test(std::span<const double> a, std::span<const double> b);
/// p from the normal approximation with tie-corrected variance.
Correlation kendall_test(std::span<const double> a, std::span<const double> b);

struct TTest {
  double t = 0.0;
  double p = 1.0;  // two-sided
  int df = 0;
};

/// Paired test on a - b. UndefinedMetricError when the differences have
/// zero variance.
TTest paired_t_test(std::span<const double> a, std::span<const double> b);

/// Two-sided tail probability P(|T| >= |t|), via the regularized
/// incomplete beta function.
double student_t_two_sided_p(double t, double df);

enum class Stars { none, one, two, three };
/// Strict thresholds: < .05, < .01, < .001.
Stars significance_stars(double p);
std::string_view to_string(Stars s);

}  // namespace miforge::stats
