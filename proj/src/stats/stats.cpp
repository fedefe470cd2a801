#include "miforge/stats/stats.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/special_functions/beta.hpp>
#include <spdlog/spdlog.h>

#include "miforge/core/errors.h"

namespace miforge::stats {

namespace {

template <typename T>
void require_paired(std::span<const T> a, std::span<const T> b, std::size_t min_n,
                    const char* what) {
  if (a.size() != b.size()) throw ValidationError(std::string(what) + ": unequal lengths");
  if (a.size() < min_n) {
    throw ValidationError(std::string(what) + ": needs at least " + std::to_string(min_n) +
                          " pairs");
  }
}

int sign(double x) { return (x > 0) - (x < 0); }

// Sum over tie groups of f(group size).
template <typename F>
double tie_sum(std::span<const double> x, F f) {
  std::vector<double> v(x.begin(), x.end());
  std::sort(v.begin(), v.end());
  double out = 0.0;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    out += f(static_cast<double>(j - i));
    i = j;
  }
  return out;
}

double correlation_p(double r, std::size_t n) {
  if (n <= 2) return 1.0;
  if (std::abs(r) >= 1.0) return 0.0;
  const double df = static_cast<double>(n - 2);
  return student_t_two_sided_p(r * std::sqrt(df / (1.0 - r * r)), df);
}

}  // namespace

double weighted_kappa(std::span<const int> a, std::span<const int> b, int min_category,
                      int max_category) {
  require_paired(a, b, 1, "weighted_kappa");
  if (max_category <= min_category) throw ValidationError("weighted_kappa: empty category range");
  const auto k = static_cast<std::size_t>(max_category - min_category + 1);
  std::vector<double> observed(k * k, 0.0), row(k, 0.0), col(k, 0.0);
  const double n = static_cast<double>(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < min_category || a[i] > max_category || b[i] < min_category || b[i] > max_category) {
      throw ValidationError("weighted_kappa: rating outside the category range");
    }
    const auto x = static_cast<std::size_t>(a[i] - min_category);
    const auto y = static_cast<std::size_t>(b[i] - min_category);
    observed[x * k + y] += 1.0 / n;
    row[x] += 1.0 / n;
    col[y] += 1.0 / n;
  }
  const double scale = static_cast<double>((k - 1) * (k - 1));
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const double d = static_cast<double>(i) - static_cast<double>(j);
      const double w = d * d / scale;
      num += w * observed[i * k + j];
      den += w * row[i] * col[j];
    }
  }
  if (den == 0.0) {
    spdlog::warn("weighted_kappa: both raters used one identical category; kappa set to 1.0");
    return 1.0;
  }
  return 1.0 - num / den;
}

double pearson(std::span<const double> a, std::span<const double> b) {
  require_paired(a, b, 3, "pearson");
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) throw UndefinedMetricError("correlation of a constant vector");
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

std::vector<double> average_ranks(std::span<const double> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return x[i] < x[j]; });
  std::vector<double> ranks(x.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && x[order[j]] == x[order[i]]) ++j;
    const double r = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t m = i; m < j; ++m) ranks[order[m]] = r;
    i = j;
  }
  return ranks;
}

double spearman(std::span<const double> a, std::span<const double> b) {
  require_paired(a, b, 3, "spearman");
  const auto ra = average_ranks(a);
  const auto rb = average_ranks(b);
  return pearson(ra, rb);
}

double kendall_tau_b(std::span<const double> a, std::span<const double> b) {
  require_paired(a, b, 3, "kendall_tau_b");
  long long s = 0, tied_a = 0, tied_b = 0, pairs = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const int da = sign(a[i] - a[j]);
      const int db = sign(b[i] - b[j]);
      ++pairs;
      if (da == 0) ++tied_a;
      if (db == 0) ++tied_b;
      s += da * db;
    }
  }
  const double den = std::sqrt(static_cast<double>(pairs - tied_a) * static_cast<double>(pairs - tied_b));
  if (den == 0.0) throw UndefinedMetricError("kendall tau-b of a constant vector");
  return std::clamp(static_cast<double>(s) / den, -1.0, 1.0);
}

Correlation pearson_test(std::span<const double> a, std::span<const double> b) {
  const double r = pearson(a, b);
  return {r, correlation_p(r, a.size())};
}

Correlation spearman_test(std::span<const double> a, std::span<const double> b) {
  const double r = spearman(a, b);
  return {r, correlation_p(r, a.size())};
}

Correlation kendall_test(std::span<const double> a, std::span<const double> b) {
  const double tau = kendall_tau_b(a, b);
  long long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) s += sign(a[i] - a[j]) * sign(b[i] - b[j]);
  }
  const double n = static_cast<double>(a.size());
  const auto t2 = [](double t) { return t * (t - 1); };
  const auto t3 = [](double t) { return t * (t - 1) * (t - 2); };
  const auto t5 = [](double t) { return t * (t - 1) * (2 * t + 5); };
  const double v0 = n * (n - 1) * (2 * n + 5);
  const double v1 = tie_sum(a, t2) * tie_sum(b, t2) / (2 * n * (n - 1));
  const double v2 = tie_sum(a, t3) * tie_sum(b, t3) / (9 * n * (n - 1) * (n - 2));
  const double var = (v0 - tie_sum(a, t5) - tie_sum(b, t5)) / 18.0 + v1 + v2;
  if (var <= 0.0) return {tau, 1.0};
  const double z = static_cast<double>(s) / std::sqrt(var);
  return {tau, std::erfc(std::abs(z) / std::sqrt(2.0))};
}

double student_t_two_sided_p(double t, double df) {
  if (!(df > 0.0)) throw ValidationError("student t needs positive degrees of freedom");
  if (std::isinf(t)) return 0.0;
  const double x = df / (df + t * t);
  return std::clamp(boost::math::ibeta(df / 2.0, 0.5, x), 0.0, 1.0);
}

TTest paired_t_test(std::span<const double> a, std::span<const double> b) {
  require_paired(a, b, 2, "paired_t_test");
  const double n = static_cast<double>(a.size());
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  const double mean = std::accumulate(d.begin(), d.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : d) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / (n - 1));
  if (sd == 0.0) throw UndefinedMetricError("paired t-test with zero-variance differences");
  TTest out;
  out.df = static_cast<int>(a.size()) - 1;
  out.t = mean / (sd / std::sqrt(n));
  out.p = student_t_two_sided_p(out.t, out.df);
  return out;
}

Stars significance_stars(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("p-value outside [0, 1]");
  if (p < 0.001) return Stars::three;
  if (p < 0.01) return Stars::two;
  if (p < 0.05) return Stars::one;
  return Stars::none;
}

std::string_view to_string(Stars s) {
  switch (s) {
    case Stars::none: return "";
    case Stars::one: return "*";
    case Stars::two: return "**";
    case Stars::three: return "***";
  }
  return "";
}

}  // namespace miforge::stats
