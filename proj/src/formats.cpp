#include "fairsub/formats.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "fairsub/errors.hpp"

namespace fairsub {

using nlohmann::json;

RunLengthMask encode_rle(const SolutionVector& mask) {
  RunLengthMask rle;
  rle.n = mask.size();
  if (mask.size() == 0) return rle;
  rle.first = mask[0] ? 1 : 0;
  bool value = mask[0];
  std::size_t run = 0;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i] == value) {
      ++run;
    } else {
      rle.runs.push_back(run);
      value = mask[i];
      run = 1;
    }
  }
  rle.runs.push_back(run);
  return rle;
}

SolutionVector decode_rle(const RunLengthMask& rle) {
  if (rle.first != 0 && rle.first != 1) throw DataError("run-length mask: first must be 0 or 1");
  SolutionVector mask(rle.n);
  std::size_t pos = 0;
  bool value = rle.first != 0;
  for (std::size_t run : rle.runs) {
    if (run == 0 || pos + run > rle.n) throw DataError("run-length mask: runs inconsistent with n");
    for (std::size_t k = 0; k < run; ++k) mask.set(pos++, value);
    value = !value;
  }
  if (pos != rle.n) throw DataError("run-length mask: runs sum to " + std::to_string(pos) + ", n is " +
                                    std::to_string(rle.n));
  return mask;
}

void write_front_jsonl(std::ostream& out, const ParetoFront& front, const Dataset& parent) {
  for (const auto& member : front.members) {
    if (member.mask.size() != parent.size()) throw UsageError("front mask length does not match dataset");
    const RunLengthMask rle = encode_rle(member.mask);
    json missing = json::array();
    std::vector<std::uint8_t> present(parent.group_count(), 0);
    for (std::size_t i = 0; i < parent.size(); ++i) {
      if (member.mask[i]) present[parent.rows()[i].group] = 1;
    }
    for (GroupId g = 0; g < present.size(); ++g) {
      if (!present[g]) missing.push_back(parent.group_label(g));
    }
    json record = {
        {"mask", {{"n", rle.n}, {"first", rle.first}, {"runs", rle.runs}}},
        {"f1", member.point.f1},
        {"f2", member.point.f2},
        {"popcount", member.mask.popcount()},
        {"missing_groups", std::move(missing)},
    };
    out << record.dump() << '\n';
  }
}

ParetoFront read_front_jsonl(std::istream& in) {
  ParetoFront front;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const json record = json::parse(line);
      RunLengthMask rle;
      rle.n = record.at("mask").at("n").get<std::size_t>();
      rle.first = record.at("mask").at("first").get<int>();
      rle.runs = record.at("mask").at("runs").get<std::vector<std::size_t>>();
      front.members.push_back(
          {decode_rle(rle), ObjectivePoint{record.at("f1").get<double>(), record.at("f2").get<double>()}});
    } catch (const json::exception& e) {
      throw DataError("front line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return front;
}

std::string report_json(const PreprocessReport& r, const std::string& dataset_name, bool include_timing) {
  const auto& ops = r.config.operators;
  json j = {
      {"schema_version", kReportSchemaVersion},
      {"dataset", dataset_name},
      {"mode", to_string(r.mode)},
      {"psi_original", r.psi_original},
      {"psi_fair", r.psi_fair},
      {"rows_original", r.rows_original},
      {"rows_fair", r.rows_fair},
      {"retained", r.retained},
      {"data_loss", r.data_loss},
      {"missing_groups", r.missing_groups},
      {"alpha", r.alpha},
      {"beta_mode", to_string(r.beta_mode)},
      {"beta", r.beta},
      {"beta_fell_back", r.beta_fell_back},
      {"epsilon", r.epsilon},
      {"aggregation", to_string(r.aggregation)},
      {"objective", r.objective},
      {"seed", r.config.seed},
      {"solver",
       {{"population_size", r.config.population_size},
        {"generations", r.config.generations},
        {"mutation_rate", r.config.mutation_rate},
        {"initializer",
         {{"kind", to_string(ops.initializer.kind)},
          {"p", ops.initializer.p},
          {"p_min", ops.initializer.p_min},
          {"p_max", ops.initializer.p_max}}},
        {"selection", to_string(ops.selection)},
        {"crossover", to_string(ops.crossover)},
        {"mutation", to_string(ops.mutation)}}},
      {"warnings", r.warnings},
  };
  if (r.mode == SolverMode::multi) j["front_size"] = r.front_size;
  if (include_timing) j["wall_clock_seconds"] = r.wall_clock_seconds;
  return j.dump(2) + "\n";
}

MetricsSummary summarize(const Dataset& d, const PenaltyConfig& penalty) {
  MetricsSummary m;
  m.labels = d.group_universe();
  m.stats = group_stats(d);
  m.psi = psi(m.stats, penalty.aggregation);
  m.psi_penalized = psi_penalized(m.stats, penalty);
  m.penalty = penalty;
  for (GroupId g : coverage_report(m.stats)) m.missing_groups.push_back(d.group_label(g));
  return m;
}

std::string metrics_json(const MetricsSummary& m, const std::string& dataset_name) {
  json groups = json::array();
  for (GroupId g = 0; g < m.labels.size(); ++g) {
    json entry = {{"label", m.labels[g]}, {"total", m.stats.total[g]}, {"positive", m.stats.positive[g]}};
    entry["rate"] = m.stats.total[g] ? json(m.stats.rate(g)) : json(nullptr);
    groups.push_back(std::move(entry));
  }
  json j = {
      {"schema_version", kReportSchemaVersion},
      {"dataset", dataset_name},
      {"rows", m.stats.rows()},
      {"aggregation", to_string(m.penalty.aggregation)},
      {"epsilon", m.penalty.epsilon},
      {"psi", m.psi},
      {"psi_penalized", m.psi_penalized},
      {"missing_groups", m.missing_groups},
      {"groups", std::move(groups)},
  };
  return j.dump(2) + "\n";
}

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

std::string metrics_table(const MetricsSummary& m) {
  std::size_t width = 5;
  for (const auto& l : m.labels) width = std::max(width, l.size());
  std::ostringstream out;
  auto pad = [](std::string s, std::size_t w) {
    if (s.size() < w) s.insert(0, w - s.size(), ' ');
    return s;
  };
  out << pad("group", width) << "  " << pad("total", 8) << "  " << pad("positive", 8) << "  " << pad("rate", 8)
      << '\n';
  for (GroupId g = 0; g < m.labels.size(); ++g) {
    const std::string rate = m.stats.total[g] ? format_fixed(m.stats.rate(g), 4) : "-";
    out << pad(m.labels[g], width) << "  " << pad(std::to_string(m.stats.total[g]), 8) << "  "
        << pad(std::to_string(m.stats.positive[g]), 8) << "  " << pad(rate, 8) << '\n';
  }
  out << "psi (" << to_string(m.penalty.aggregation) << ")        " << format_fixed(m.psi, 4) << '\n';
  out << "psi penalized    " << format_fixed(m.psi_penalized, 4) << '\n';
  out << "missing groups   ";
  if (m.missing_groups.empty()) out << "none";
  for (std::size_t i = 0; i < m.missing_groups.size(); ++i) out << (i ? ", " : "") << m.missing_groups[i];
  out << '\n';
  return out.str();
}

}  // namespace fairsub
