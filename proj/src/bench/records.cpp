#include "cmcts/bench/records.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cmcts::bench {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& s) {
  try {
    return std::stod(s);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad CSV number: " + s);
  }
}

std::uint64_t parse_u64(const std::string& s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad CSV integer: " + s);
  }
  return v;
}

}  // namespace

void write_csv(std::ostream& out, std::span<const RunRecord> records) {
  out << kRunRecordCsvHeader << '\n';
  char wall[64];
  for (const RunRecord& r : records) {
    // %.17g round-trips doubles exactly.
    std::snprintf(wall, sizeof(wall), "%.17g", r.wall_ms);
    out << r.scenario << ',' << r.strategy << ',' << r.workers << ','
        << r.budget << ',' << r.rep << ',' << r.seed << ','
        << (r.success ? 1 : 0) << ',' << r.steps << ',' << wall << '\n';
  }
}

std::vector<RunRecord> read_csv(std::istream& in) {
  std::vector<RunRecord> records;
  std::string line;
  if (!std::getline(in, line)) return records;
  if (line != kRunRecordCsvHeader) {
    throw std::invalid_argument("unexpected CSV header: " + line);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split_line(line);
    if (f.size() != 9) {
      throw std::invalid_argument("bad CSV row: " + line);
    }
    RunRecord r;
    r.scenario = f[0];
    r.strategy = f[1];
    r.workers = static_cast<int>(parse_u64(f[2]));
    r.budget = parse_u64(f[3]);
    r.rep = static_cast<int>(parse_u64(f[4]));
    r.seed = parse_u64(f[5]);
    r.success = parse_u64(f[6]) != 0;
    r.steps = static_cast<int>(parse_u64(f[7]));
    r.wall_ms = parse_double(f[8]);
    records.push_back(std::move(r));
  }
  return records;
}

bool csv_fields_equal(const RunRecord& a, const RunRecord& b) {
  return a.scenario == b.scenario && a.strategy == b.strategy &&
         a.workers == b.workers && a.budget == b.budget && a.rep == b.rep &&
         a.seed == b.seed && a.success == b.success && a.steps == b.steps &&
         a.wall_ms == b.wall_ms;
}

bool csv_fields_equal(std::span<const RunRecord> a,
                      std::span<const RunRecord> b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!csv_fields_equal(a[i], b[i])) return false;
  }
  return true;
}

}  // namespace cmcts::bench
