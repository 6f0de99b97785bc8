#pragma once

// Checkpoint CSV rows, the JSON sidecar describing the run, and resume.
// Byte layout is specified in docs/FORMATS.md.

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sepprob/estimator.hpp"
#include "sepprob/rmt.hpp"

namespace sepprob {

inline constexpr std::string_view kCsvHeader =
    "scenario,n,total,skipped,ppt,ppt_det_greater,realign_entangled,bound_entangled,p_ppt,det_greater_frac,"
    "conjecture_ratio,unix_time";

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything needed to reconstruct a run besides the counters.
struct RunMetadata {
  std::string scenario_id;
  Scenario scenario;
  std::size_t d = 0;
  double alpha0 = 0.5;
  std::uint64_t n_start = 0;
  bool realign = false;
  std::string conjecture_name;  // empty: no conjecture attached
  std::optional<double> conjecture_value;
};

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_row(const Checkpoint& cp) {
  const auto& c = cp.counters;
  std::ostringstream os;
  os << cp.scenario << ',' << cp.n << ',' << c.n_total << ',' << c.n_skipped << ',' << c.n_ppt << ','
     << c.n_ppt_det_greater << ',' << c.n_realign_entangled << ',' << c.n_bound_entangled << ','
     << format_double(cp.p_ppt()) << ',' << format_double(cp.det_greater_fraction()) << ',';
  if (const auto r = cp.conjecture_ratio()) os << format_double(*r);
  os << ',' << cp.unix_time;
  return os.str();
}

struct CsvRow {
  std::string scenario;
  std::uint64_t n = 0;
  Counters counters;
  double p_ppt = 0;
  double det_greater_frac = 0;
  std::optional<double> conjecture_ratio;
  std::int64_t unix_time = 0;
};

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    out.push_back(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

template <class V>
V parse_field(std::string_view s, const char* column) {
  V v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw CheckpointError(std::string("checkpoint: bad value in column ") + column + ": '" + std::string(s) + "'");
  return v;
}

}  // namespace detail

/// Parses one data row and checks it for internal consistency (counter
/// invariants, derived columns recomputed exactly).
inline CsvRow parse_row(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const auto f = detail::split_fields(line);
  if (f.size() != 12) throw CheckpointError("checkpoint: expected 12 columns, got " + std::to_string(f.size()));
  CsvRow r;
  r.scenario = std::string(f[0]);
  if (r.scenario.empty()) throw CheckpointError("checkpoint: empty scenario column");
  r.n = detail::parse_field<std::uint64_t>(f[1], "n");
  r.counters.n_total = detail::parse_field<std::uint64_t>(f[2], "total");
  r.counters.n_skipped = detail::parse_field<std::uint64_t>(f[3], "skipped");
  r.counters.n_ppt = detail::parse_field<std::uint64_t>(f[4], "ppt");
  r.counters.n_ppt_det_greater = detail::parse_field<std::uint64_t>(f[5], "ppt_det_greater");
  r.counters.n_realign_entangled = detail::parse_field<std::uint64_t>(f[6], "realign_entangled");
  r.counters.n_bound_entangled = detail::parse_field<std::uint64_t>(f[7], "bound_entangled");
  r.p_ppt = detail::parse_field<double>(f[8], "p_ppt");
  r.det_greater_frac = detail::parse_field<double>(f[9], "det_greater_frac");
  if (!f[10].empty()) r.conjecture_ratio = detail::parse_field<double>(f[10], "conjecture_ratio");
  r.unix_time = detail::parse_field<std::int64_t>(f[11], "unix_time");

  if (!r.counters.consistent()) throw CheckpointError("checkpoint: counters violate n_ppt <= n_total etc.");
  Checkpoint cp;
  cp.counters = r.counters;
  if (format_double(cp.p_ppt()) != f[8] || format_double(cp.det_greater_fraction()) != f[9])
    throw CheckpointError("checkpoint: derived columns do not match counters");
  return r;
}

inline nlohmann::json to_json(const RunMetadata& m) {
  nlohmann::json j;
  j["format"] = "sepprob-checkpoint";
  j["version"] = 1;
  j["scenario"] = m.scenario_id;
  j["n_a"] = m.scenario.n_a;
  j["n_b"] = m.scenario.n_b;
  j["field"] = to_string(m.scenario.field);
  if (m.scenario.measure.kind == Measure::Kind::induced) {
    j["measure"] = "induced";
    j["k"] = m.scenario.measure.k;
  } else {
    j["measure"] = "osz";
    j["x"] = m.scenario.measure.x;
  }
  j["d"] = m.d;
  j["alpha0"] = m.alpha0;
  j["n_start"] = m.n_start;
  j["realign"] = m.realign;
  if (m.conjecture_value) {
    j["conjecture"] = {{"name", m.conjecture_name}, {"value", *m.conjecture_value}};
  } else {
    j["conjecture"] = nullptr;
  }
  return j;
}

inline RunMetadata metadata_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format") != "sepprob-checkpoint" || j.at("version") != 1)
      throw CheckpointError("sidecar: unknown format or version");
    RunMetadata m;
    m.scenario_id = j.at("scenario").get<std::string>();
    m.scenario.n_a = j.at("n_a").get<unsigned>();
    m.scenario.n_b = j.at("n_b").get<unsigned>();
    const auto field = j.at("field").get<std::string>();
    if (field == "real") {
      m.scenario.field = Field::real;
    } else if (field == "complex") {
      m.scenario.field = Field::complex;
    } else {
      throw CheckpointError("sidecar: bad field '" + field + "'");
    }
    const auto measure = j.at("measure").get<std::string>();
    if (measure == "induced") {
      m.scenario.measure = Measure::induced(j.at("k").get<int>());
    } else if (measure == "osz") {
      m.scenario.measure = Measure::osz(j.at("x").get<double>());
    } else {
      throw CheckpointError("sidecar: bad measure '" + measure + "'");
    }
    m.d = j.at("d").get<std::size_t>();
    m.alpha0 = j.at("alpha0").get<double>();
    m.n_start = j.at("n_start").get<std::uint64_t>();
    m.realign = j.at("realign").get<bool>();
    const auto& c = j.at("conjecture");
    if (!c.is_null()) {
      m.conjecture_name = c.at("name").get<std::string>();
      m.conjecture_value = c.at("value").get<double>();
    }
    validate(m.scenario);
    if (m.d != variate_count(m.scenario)) throw CheckpointError("sidecar: d does not match the scenario");
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointError(std::string("sidecar: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw CheckpointError(std::string("sidecar: ") + e.what());
  }
}

inline std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
  auto p = csv;
  p += ".json";
  return p;
}

inline void write_sidecar(const std::filesystem::path& csv, const RunMetadata& m) {
  std::ofstream out(sidecar_path(csv), std::ios::trunc);
  out << to_json(m).dump(2) << '\n';
  if (!out) throw CheckpointError("cannot write " + sidecar_path(csv).string());
}

inline RunMetadata read_sidecar(const std::filesystem::path& csv) {
  std::ifstream in(sidecar_path(csv));
  if (!in) throw CheckpointError("cannot open " + sidecar_path(csv).string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointError("sidecar: " + std::string(e.what()));
  }
  return metadata_from_json(j);
}

/// Streams checkpoint rows to a CSV. A fresh file gets the header and a new
/// sidecar; append mode (resume) leaves both untouched.
class CheckpointWriter {
 public:
  CheckpointWriter(const std::filesystem::path& path, const RunMetadata& meta, bool append) : path_(path) {
    if (!append) write_sidecar(path, meta);
    out_.open(path, append ? std::ios::app : std::ios::trunc);
    if (!out_) throw CheckpointError("cannot open " + path.string() + " for writing");
    if (!append) out_ << kCsvHeader << '\n';
    out_.flush();
    if (!out_) throw CheckpointError("write failed: " + path.string());
  }

  void write(const Checkpoint& cp) {
    out_ << format_row(cp) << '\n';
    out_.flush();
    if (!out_) throw CheckpointError("write failed: " + path_.string());
  }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

struct ResumePoint {
  RunMetadata meta;
  std::uint64_t n = 0;  // next index to process
  Counters counters;
};

/// Reads the sidecar and the last CSV row. With `expected_scenario` set, a
/// different scenario id is an error.
inline ResumePoint resume(const std::filesystem::path& csv,
                          const std::optional<std::string>& expected_scenario = std::nullopt) {
  std::ifstream in(csv);
  if (!in) throw CheckpointError("cannot open " + csv.string());
  std::string line;
  if (!std::getline(in, line)) throw CheckpointError("checkpoint: empty file " + csv.string());
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw CheckpointError("checkpoint: unexpected header in " + csv.string());

  ResumePoint rp;
  rp.meta = read_sidecar(csv);
  rp.n = rp.meta.n_start;
  std::string last;
  std::uint64_t prev_n = rp.meta.n_start;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const CsvRow r = parse_row(line);  // every row is checked, not only the last
    if (r.scenario != rp.meta.scenario_id) throw CheckpointError("checkpoint: row scenario differs from sidecar");
    if (r.n < prev_n) throw CheckpointError("checkpoint: n decreases between rows");
    if (r.n - rp.meta.n_start != r.counters.consumed())
      throw CheckpointError("checkpoint: n does not match the number of processed samples");
    prev_n = r.n;
    rp.n = r.n;
    rp.counters = r.counters;
  }
  if (expected_scenario && *expected_scenario != rp.meta.scenario_id)
    throw CheckpointError("checkpoint: scenario '" + rp.meta.scenario_id + "' does not match requested '" +
                          *expected_scenario + "'");
  return rp;
}

}  // namespace sepprob
