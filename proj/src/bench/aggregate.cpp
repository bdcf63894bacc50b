#include "cmcts/bench/aggregate.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "cmcts/stats.hpp"

namespace cmcts::bench {

std::vector<AggregateRow> aggregate(std::span<const RunRecord> records) {
  if (records.empty()) throw std::invalid_argument("no records to aggregate");

  using Key = std::tuple<std::string, std::string, int, std::uint64_t>;
  std::vector<Key> order;
  std::map<Key, std::vector<double>> groups;
  for (const RunRecord& r : records) {
    Key key{r.scenario, r.strategy, r.workers, r.budget};
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(r.success ? 1.0 : 0.0);
  }

  std::vector<AggregateRow> rows;
  rows.reserve(order.size());
  for (const Key& key : order) {
    const std::vector<double>& outcomes = groups[key];
    AggregateRow row;
    row.scenario = std::get<0>(key);
    row.strategy = std::get<1>(key);
    row.workers = std::get<2>(key);
    row.budget = std::get<3>(key);
    row.n = outcomes.size();
    row.success_mean = mean(outcomes);
    row.success_std = sample_std(outcomes);
    const SigmaBand band = two_sigma_band(row.success_mean, row.success_std);
    row.band_lo = band.lo;
    row.band_hi = band.hi;
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

void write_row(std::ostream& out, const AggregateRow& r) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g", r.success_mean,
                r.success_std, r.band_lo, r.band_hi);
  out << r.scenario << ',' << r.strategy << ',' << r.workers << ','
      << r.budget << ',' << r.n << ',' << buf << '\n';
}

std::string sanitize(std::string name) {
  for (char& c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c))) c = '-';
  }
  return name;
}

}  // namespace

void write_aggregate_csv(std::ostream& out,
                         std::span<const AggregateRow> rows) {
  out << kAggregateCsvHeader << '\n';
  for (const AggregateRow& r : rows) write_row(out, r);
}

std::vector<AggregateRow> read_aggregate_csv(std::istream& in) {
  std::vector<AggregateRow> rows;
  std::string line;
  if (!std::getline(in, line)) return rows;
  if (line != kAggregateCsvHeader) {
    throw std::invalid_argument("unexpected aggregate header: " + line);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string field;
    std::vector<std::string> f;
    while (std::getline(fields, field, ',')) f.push_back(field);
    if (f.size() != 9) throw std::invalid_argument("bad aggregate row: " + line);
    AggregateRow r;
    r.scenario = f[0];
    r.strategy = f[1];
    r.workers = std::stoi(f[2]);
    r.budget = std::stoull(f[3]);
    r.n = std::stoull(f[4]);
    r.success_mean = std::stod(f[5]);
    r.success_std = std::stod(f[6]);
    r.band_lo = std::stod(f[7]);
    r.band_hi = std::stod(f[8]);
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_plot_data(std::span<const AggregateRow> rows,
                     const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);

  using Key = std::pair<std::string, std::string>;  // scenario, strategy
  std::vector<Key> order;
  std::map<Key, std::vector<const AggregateRow*>> figures;
  for (const AggregateRow& row : rows) {
    Key key{row.scenario, row.strategy};
    auto [it, inserted] = figures.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(&row);
  }

  for (const Key& key : order) {
    auto figure_rows = figures[key];
    std::sort(figure_rows.begin(), figure_rows.end(),
              [](const AggregateRow* a, const AggregateRow* b) {
                return a->budget != b->budget ? a->budget < b->budget
                                              : a->workers < b->workers;
              });
    const bool is_baseline = key.second == "single";
    const std::filesystem::path file =
        out_dir / (is_baseline
                       ? "baseline_" + sanitize(key.first) + ".csv"
                       : "fig_" + sanitize(key.first) + "_" + key.second +
                             ".csv");
    std::ofstream out(file);
    if (!out) {
      throw std::runtime_error("cannot write plot file: " + file.string());
    }
    out << "budget,log10_budget,workers,success_mean,success_std,band_lo,"
           "band_hi\n";
    char buf[200];
    for (const AggregateRow* r : figure_rows) {
      std::snprintf(buf, sizeof(buf), "%llu,%.6f,%d,%.6f,%.6f,%.6f,%.6f",
                    static_cast<unsigned long long>(r->budget),
                    std::log10(static_cast<double>(r->budget)), r->workers,
                    r->success_mean, r->success_std, r->band_lo, r->band_hi);
      out << buf << '\n';
    }
  }
}

}  // namespace cmcts::bench
