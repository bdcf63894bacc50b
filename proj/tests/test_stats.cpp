#include <doctest.h>

#include <cmath>
#include <vector>

#include "cmcts/stats.hpp"

using namespace cmcts;

TEST_CASE("mean and sample std of a success indicator") {
  // 25 of 50 successes: textbook binomial sample sigma 0.5*sqrt(50/49).
  std::vector<double> xs(50, 0.0);
  for (int i = 0; i < 25; ++i) xs[i] = 1.0;
  CHECK(mean(xs) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(sample_std(xs) ==
        doctest::Approx(0.5 * std::sqrt(50.0 / 49.0)).epsilon(1e-12));
}

TEST_CASE("all successes have zero deviation") {
  std::vector<double> xs(50, 1.0);
  CHECK(mean(xs) == 1.0);
  CHECK(sample_std(xs) == 0.0);
}

TEST_CASE("degenerate sample sizes") {
  std::vector<double> one{0.25};
  CHECK(mean(one) == 0.25);
  CHECK(sample_std(one) == 0.0);
  CHECK(mean({}) == 0.0);
}

TEST_CASE("two sigma band") {
  const SigmaBand band = two_sigma_band(0.5, 0.1);
  CHECK(band.lo == doctest::Approx(0.3));
  CHECK(band.hi == doctest::Approx(0.7));
  CHECK(band.contains(0.5));
  CHECK(band.contains(0.3));
  CHECK(!band.contains(0.71));
}

TEST_CASE("success rate over bool outcomes") {
  const std::vector<bool> outcomes{true, false, true, true};
  CHECK(success_rate(outcomes) == doctest::Approx(0.75));
}

TEST_CASE("significance of a rate difference") {
  // sigma 0.5 at n=50 gives SE(diff) ~ 0.1; a 0.3 gap clears 2 SE, 0.1 not.
  CHECK(significantly_greater(0.8, 0.4, 50, 0.5, 0.5, 50));
  CHECK(!significantly_greater(0.6, 0.5, 50, 0.5, 0.5, 50));
}
