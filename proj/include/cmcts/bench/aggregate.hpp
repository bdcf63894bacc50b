#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cmcts/bench/records.hpp"

namespace cmcts::bench {

// Per-(scenario, strategy, workers, budget) success statistics: mean, sample
// standard deviation of the per-repetition success indicator, and the
// mean +/- 2 sigma band.
struct AggregateRow {
  std::string scenario;
  std::string strategy;
  int workers = 1;
  std::uint64_t budget = 0;
  std::size_t n = 0;
  double success_mean = 0.0;
  double success_std = 0.0;
  double band_lo = 0.0;
  double band_hi = 0.0;
};

inline constexpr std::string_view kAggregateCsvHeader =
    "scenario,strategy,workers,budget,n,success_mean,success_std,band_lo,"
    "band_hi";

// Groups records in order of first appearance.
std::vector<AggregateRow> aggregate(std::span<const RunRecord> records);

void write_aggregate_csv(std::ostream& out, std::span<const AggregateRow> rows);
std::vector<AggregateRow> read_aggregate_csv(std::istream& in);

// Emits per-figure tabular files: one fig_<scenario>_<strategy>.csv per
// strategy (budget rows with a log10 budget column for the logarithmic
// x-axis) and one baseline_<scenario>.csv holding the single-thread band.
void write_plot_data(std::span<const AggregateRow> rows,
                     const std::filesystem::path& out_dir);

}  // namespace cmcts::bench
