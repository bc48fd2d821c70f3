#include "fairsub/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <set>
#include <unordered_map>
#include <utility>

#include "fairsub/errors.hpp"
#include "fairsub/rng.hpp"

namespace fairsub {

Dataset::Dataset(std::string name, Schema schema, std::vector<std::string> universe,
                 std::vector<DataPoint> rows, SplitRole role)
    : name_(std::move(name)),
      schema_(std::move(schema)),
      universe_(std::move(universe)),
      rows_(std::move(rows)),
      role_(role) {
  if (universe_.size() < 2) {
    throw DataError("dataset '" + name_ + "': need at least 2 groups, found " +
                    std::to_string(universe_.size()));
  }
  if (std::set<std::string>(universe_.begin(), universe_.end()).size() != universe_.size()) {
    throw DataError("dataset '" + name_ + "': duplicate group label in universe");
  }
  std::set<std::size_t> seen;
  for (const auto& row : rows_) {
    if (row.group >= universe_.size()) {
      throw DataError("row " + std::to_string(row.index) + ": group id outside universe");
    }
    if (row.outcome > 1) {
      throw DataError("row " + std::to_string(row.index) + ": outcome must be 0 or 1");
    }
    if (!seen.insert(row.index).second) {
      throw DataError("row index " + std::to_string(row.index) + " appears twice");
    }
  }
}

Dataset Dataset::with_role(SplitRole role) const {
  Dataset copy = *this;
  copy.role_ = role;
  return copy;
}

Dataset Dataset::with_name(std::string name) const {
  Dataset copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

bool operator==(const Dataset& a, const Dataset& b) {
  return a.schema_ == b.schema_ && a.universe_ == b.universe_ && a.rows_ == b.rows_ &&
         a.role_ == b.role_;
}

namespace {

std::size_t find_column(const csv::Record& header, const std::string& column) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == column) return i;
  }
  throw ConfigError("column '" + column + "' not found in header");
}

bool is_blank(const csv::Record& r) { return r.size() == 1 && r[0].empty(); }

}  // namespace

Dataset from_records(const std::vector<csv::Record>& records, const LoadOptions& options,
                     std::string name) {
  if (records.empty()) throw DataError("'" + name + "': empty file");
  const csv::Record& header = records.front();
  Schema schema;
  schema.header = header;
  schema.group_column = find_column(header, options.group_column);
  schema.outcome_column = find_column(header, options.outcome_column);
  if (schema.group_column == schema.outcome_column) {
    throw ConfigError("group and outcome column must differ");
  }
  schema.positive_label = options.positive_label;
  std::optional<std::string> negative;
  if (!options.negative_label.empty()) {
    negative = options.negative_label;
  } else if (options.positive_label == "1") {
    negative = "0";
  }
  if (negative && *negative == schema.positive_label) {
    throw ConfigError("positive and negative outcome labels are identical");
  }

  std::vector<std::string> universe;
  std::unordered_map<std::string, GroupId> group_ids;
  const bool fixed_universe = options.universe.has_value();
  if (fixed_universe) {
    universe = *options.universe;
    for (GroupId g = 0; g < universe.size(); ++g) {
      if (!group_ids.emplace(universe[g], g).second) {
        throw ConfigError("duplicate label '" + universe[g] + "' in supplied group universe");
      }
    }
  }

  std::vector<DataPoint> rows;
  rows.reserve(records.size() - 1);
  for (std::size_t r = 1; r < records.size(); ++r) {
    const csv::Record& rec = records[r];
    if (is_blank(rec)) continue;
    const std::size_t row_number = rows.size();
    if (rec.size() != header.size()) {
      throw DataError("data row " + std::to_string(row_number + 1) + " has " + std::to_string(rec.size()) +
                      " fields, header has " + std::to_string(header.size()));
    }
    DataPoint p;
    p.index = row_number;
    const std::string& raw_outcome = rec[schema.outcome_column];
    if (raw_outcome == schema.positive_label) {
      p.outcome = 1;
    } else if (!negative) {
      negative = raw_outcome;
      p.outcome = 0;
    } else if (raw_outcome == *negative) {
      p.outcome = 0;
    } else {
      throw DataError("data row " + std::to_string(row_number + 1) + ": outcome value '" + raw_outcome +
                      "' is neither '" + schema.positive_label + "' nor '" + *negative + "'");
    }
    const std::string& label = rec[schema.group_column];
    auto it = group_ids.find(label);
    if (it == group_ids.end()) {
      if (fixed_universe) {
        throw DataError("data row " + std::to_string(row_number + 1) + ": group '" + label +
                        "' not in supplied universe");
      }
      it = group_ids.emplace(label, universe.size()).first;
      universe.push_back(label);
    }
    p.group = it->second;
    for (std::size_t c = 0; c < rec.size(); ++c) {
      if (c != schema.group_column && c != schema.outcome_column) p.features.push_back(rec[c]);
    }
    rows.push_back(std::move(p));
  }
  if (rows.empty()) throw DataError("'" + name + "': no data rows");
  if (universe.size() < 2) {
    throw DataError("'" + name + "': column '" + options.group_column + "' has " +
                    std::to_string(universe.size()) + " distinct group(s), need at least 2");
  }
  schema.negative_label = negative.value_or("0");
  return Dataset(std::move(name), std::move(schema), std::move(universe), std::move(rows));
}

Dataset load_csv(const std::string& path, const LoadOptions& options) {
  return from_records(csv::read_file(path), options, path);
}

void write_csv(std::ostream& out, const Dataset& d, const std::string& index_column) {
  const Schema& s = d.schema();
  csv::Record header = s.header;
  if (!index_column.empty()) header.push_back(index_column);
  csv::write_record(out, header);
  csv::Record rec(header.size());
  for (const auto& row : d.rows()) {
    std::size_t f = 0;
    for (std::size_t c = 0; c < s.header.size(); ++c) {
      if (c == s.group_column) {
        rec[c] = d.group_label(row.group);
      } else if (c == s.outcome_column) {
        rec[c] = row.outcome ? s.positive_label : s.negative_label;
      } else {
        rec[c] = row.features.at(f++);
      }
    }
    if (!index_column.empty()) rec.back() = std::to_string(row.index);
    csv::write_record(out, rec);
  }
}

void write_csv_file(const std::string& path, const Dataset& d, const std::string& index_column) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  write_csv(out, d, index_column);
}

Dataset subset(const Dataset& d, const SolutionVector& mask) {
  if (mask.size() != d.size()) {
    throw UsageError("subset: mask length " + std::to_string(mask.size()) + " != dataset size " +
                     std::to_string(d.size()));
  }
  std::vector<DataPoint> kept;
  kept.reserve(mask.popcount());
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (mask[i]) kept.push_back(d.rows()[i]);
  }
  return Dataset(d.name(), d.schema(), d.group_universe(), std::move(kept), d.role());
}

SplitPair stratified_split(const Dataset& d, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ConfigError("test fraction must lie strictly between 0 and 1");
  }
  std::vector<std::vector<std::size_t>> by_group(d.group_count());
  for (std::size_t i = 0; i < d.size(); ++i) by_group[d.rows()[i].group].push_back(i);

  Rng rng(seed);
  std::vector<std::uint8_t> in_test(d.size(), 0);
  for (GroupId g = 0; g < by_group.size(); ++g) {
    auto& members = by_group[g];
    const std::size_t count = members.size();
    if (count < 2) {
      throw DataError("group '" + d.group_label(g) + "' has " + std::to_string(count) +
                      " row(s); stratified split needs at least 2");
    }
    auto take = static_cast<std::size_t>(std::floor(static_cast<double>(count) * test_fraction + 0.5));
    take = std::clamp<std::size_t>(take, 1, count - 1);
    // partial Fisher-Yates: the first `take` slots become the test rows
    for (std::size_t k = 0; k < take; ++k) {
      const std::size_t j = k + rng.uniform_index(count - k);
      std::swap(members[k], members[j]);
      in_test[members[k]] = 1;
    }
  }
  std::vector<DataPoint> train_rows, test_rows;
  for (std::size_t i = 0; i < d.size(); ++i) {
    (in_test[i] ? test_rows : train_rows).push_back(d.rows()[i]);
  }
  return SplitPair{
      Dataset(d.name() + ":train", d.schema(), d.group_universe(), std::move(train_rows), SplitRole::train),
      Dataset(d.name() + ":test", d.schema(), d.group_universe(), std::move(test_rows), SplitRole::test),
      test_fraction};
}

Dataset synthesize(const SynthSpec& spec) {
  const auto& w = spec.group_weights;
  const auto& r = spec.positive_rates;
  if (w.size() < 2) throw ConfigError("synthesize: need at least 2 group weights");
  if (w.size() != r.size()) throw ConfigError("synthesize: weight and rate lists differ in length");
  for (double x : w) {
    if (!(x >= 0.0)) throw ConfigError("synthesize: group weights must be nonnegative");
  }
  if (std::abs(std::accumulate(w.begin(), w.end(), 0.0) - 1.0) > 1e-9) {
    throw ConfigError("synthesize: group weights must sum to 1");
  }
  for (double x : r) {
    if (!(x >= 0.0 && x <= 1.0)) throw ConfigError("synthesize: positive rates must lie in [0,1]");
  }

  std::vector<double> cumulative(w.size());
  std::partial_sum(w.begin(), w.end(), cumulative.begin());
  cumulative.back() = 1.0;

  Schema schema{{"feature", "group", "outcome"}, 1, 2, "1", "0"};
  std::vector<std::string> universe;
  for (std::size_t g = 0; g < w.size(); ++g) universe.push_back(std::to_string(g));

  Rng rng(spec.seed);
  std::vector<DataPoint> rows(spec.n);
  char buf[32];
  for (std::size_t i = 0; i < spec.n; ++i) {
    const double u = rng.uniform01();
    GroupId g = 0;
    while (g + 1 < cumulative.size() && !(u < cumulative[g])) ++g;
    rows[i].index = i;
    rows[i].group = g;
    rows[i].outcome = rng.bernoulli(r[g]) ? 1 : 0;
    std::snprintf(buf, sizeof buf, "%.6f", rng.uniform01());
    rows[i].features = {buf};
  }
  return Dataset("synthetic", std::move(schema), std::move(universe), std::move(rows));
}

}  // namespace fairsub
