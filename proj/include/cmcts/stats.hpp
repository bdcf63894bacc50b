#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cmcts {

double mean(std::span<const double> xs);

// Sample standard deviation (n-1 denominator); 0 for fewer than two samples.
double sample_std(std::span<const double> xs);

struct SigmaBand {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x) const { return x >= lo && x <= hi; }
};

SigmaBand two_sigma_band(double center, double stddev);

double success_rate(const std::vector<bool>& outcomes);

// Standard error of the difference of two independent sample means.
double diff_standard_error(double std_a, std::size_t n_a, double std_b,
                           std::size_t n_b);

// One-sided comparison: does rate_a exceed rate_b by more than two standard
// errors of the difference?
bool significantly_greater(double rate_a, double std_a, std::size_t n_a,
                           double rate_b, double std_b, std::size_t n_b);

}  // namespace cmcts
