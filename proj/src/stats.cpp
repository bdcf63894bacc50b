#include "cmcts/stats.hpp"

#include <cmath>

namespace cmcts {

double mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double sample_std(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

SigmaBand two_sigma_band(double center, double stddev) {
  return SigmaBand{center - 2.0 * stddev, center + 2.0 * stddev};
}

double success_rate(const std::vector<bool>& outcomes) {
  if (outcomes.empty()) return 0.0;
  std::size_t hits = 0;
  for (bool b : outcomes) {
    if (b) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(outcomes.size());
}

double diff_standard_error(double std_a, std::size_t n_a, double std_b,
                           std::size_t n_b) {
  if (n_a == 0 || n_b == 0) return 0.0;
  return std::sqrt(std_a * std_a / static_cast<double>(n_a) +
                   std_b * std_b / static_cast<double>(n_b));
}

bool significantly_greater(double rate_a, double std_a, std::size_t n_a,
                           double rate_b, double std_b, std::size_t n_b) {
  const double se = diff_standard_error(std_a, n_a, std_b, n_b);
  return rate_a - rate_b > 2.0 * se;
}

}  // namespace cmcts
