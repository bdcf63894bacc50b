#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cmcts::bench {

// One benchmark episode outcome. The CSV schema is frozen as
// kRunRecordCsvHeader; the chosen-action trace is auxiliary in-memory data
// and is not part of the CSV surface.
struct RunRecord {
  std::string scenario;
  std::string strategy;
  int workers = 1;
  std::uint64_t budget = 0;
  int rep = 0;
  std::uint64_t seed = 0;
  bool success = false;
  int steps = 0;
  double wall_ms = 0.0;
  std::vector<double> action_trace;  // flattened joint action per replan
};

inline constexpr std::string_view kRunRecordCsvHeader =
    "scenario,strategy,workers,budget,rep,seed,success,steps,wall_ms";

void write_csv(std::ostream& out, std::span<const RunRecord> records);
std::vector<RunRecord> read_csv(std::istream& in);

// Equality over the frozen CSV columns.
bool csv_fields_equal(const RunRecord& a, const RunRecord& b);
bool csv_fields_equal(std::span<const RunRecord> a,
                      std::span<const RunRecord> b);

}  // namespace cmcts::bench
