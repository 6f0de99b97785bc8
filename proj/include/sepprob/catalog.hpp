#pragma once

// Named scenarios for the usual small bipartite systems, plus the
// parser for explicit "nA,nB,field,measure[,k|x]" strings.

#include <algorithm>
#include <charconv>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sepprob/rmt.hpp"

namespace sepprob {

struct ScenarioEntry {
  std::string name;
  Scenario scenario;
  std::string conjecture;  // registry name; empty when none is attached
};

inline const std::vector<ScenarioEntry>& scenario_catalog() {
  const auto hs = Measure::hilbert_schmidt();
  const auto bures = Measure::bures();
  static const std::vector<ScenarioEntry> entries = {
      {"two-rebit-hs", {2, 2, Field::real, hs}, "hs_two_rebit"},
      {"two-qubit-hs", {2, 2, Field::complex, hs}, "hs_two_qubit"},
      {"two-qubit-induced-1", {2, 2, Field::complex, Measure::induced(1)}, "induced_k1_two_qubit"},
      {"two-rebit-bures", {2, 2, Field::real, bures}, "bures_two_rebit"},
      {"two-qubit-bures", {2, 2, Field::complex, bures}, "bures_two_qubit"},
      {"rebit-retrit-hs", {2, 3, Field::real, hs}, "hs_rebit_retrit"},
      {"qubit-qutrit-hs", {2, 3, Field::complex, hs}, "hs_qubit_qutrit"},
      {"rebit-retrit-bures", {2, 3, Field::real, bures}, ""},
      {"qubit-qutrit-bures", {2, 3, Field::complex, bures}, "bures_qubit_qutrit"},
      {"rebit-redit-2x4-hs", {2, 4, Field::real, hs}, "hs_rebit_redit_2x4_ppt"},
      {"qubit-qudit-2x4-hs", {2, 4, Field::complex, hs}, "hs_2x4_ppt"},
      {"qubit-qudit-2x4-bures", {2, 4, Field::complex, bures}, "bures_2x4_ppt"},
      {"two-qutrit-hs", {3, 3, Field::complex, hs}, "hs_two_qutrit_ppt"},
      {"two-qutrit-bures", {3, 3, Field::complex, bures}, "bures_two_qutrit_ppt"},
      {"rebit-redit-2x5-hs", {2, 5, Field::real, hs}, "hs_rebit_redit_2x5_ppt"},
      {"qubit-qudit-2x5-hs", {2, 5, Field::complex, hs}, "hs_2x5_ppt"},
  };
  return entries;
}

inline const ScenarioEntry* find_scenario(std::string_view name) {
  const auto& cat = scenario_catalog();
  auto it = std::find_if(cat.begin(), cat.end(), [&](const ScenarioEntry& e) { return e.name == name; });
  return it == cat.end() ? nullptr : &*it;
}

namespace detail {

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

template <class V>
V parse_number(const std::string& s, const char* what) {
  V v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument(std::string("custom scenario: bad ") + what + " '" + s + "'");
  return v;
}

}  // namespace detail

/// "nA,nB,field,measure[,k|x]" with field in {real, complex} and measure in
/// {induced, osz, hs, bures}; induced takes k (default 0), osz takes x.
inline Scenario parse_custom_scenario(std::string_view spec) {
  const auto parts = detail::split(spec, ',');
  if (parts.size() < 4 || parts.size() > 5)
    throw std::invalid_argument("custom scenario: expected nA,nB,field,measure[,k|x]");
  Scenario s;
  s.n_a = detail::parse_number<unsigned>(parts[0], "nA");
  s.n_b = detail::parse_number<unsigned>(parts[1], "nB");
  if (parts[2] == "real") {
    s.field = Field::real;
  } else if (parts[2] == "complex") {
    s.field = Field::complex;
  } else {
    throw std::invalid_argument("custom scenario: field must be real or complex");
  }
  const std::string& m = parts[3];
  const bool has_param = parts.size() == 5;
  if (m == "induced") {
    s.measure = Measure::induced(has_param ? detail::parse_number<int>(parts[4], "k") : 0);
  } else if (m == "osz") {
    if (!has_param) throw std::invalid_argument("custom scenario: osz needs x");
    s.measure = Measure::osz(detail::parse_number<double>(parts[4], "x"));
  } else if (m == "hs" && !has_param) {
    s.measure = Measure::hilbert_schmidt();
  } else if (m == "bures" && !has_param) {
    s.measure = Measure::bures();
  } else {
    throw std::invalid_argument("custom scenario: unknown measure '" + m + "'");
  }
  validate(s);
  return s;
}

inline std::string describe_measure(const Measure& m) {
  std::ostringstream os;
  if (m.kind == Measure::Kind::induced) {
    os << "induced," << m.k;
  } else {
    os << "osz," << m.x;
  }
  return os.str();
}

/// Stable identifier for a custom scenario, e.g. "custom-2x3-complex-induced-0".
inline std::string custom_scenario_id(const Scenario& s) {
  std::string m = describe_measure(s.measure);
  std::replace(m.begin(), m.end(), ',', '-');
  return "custom-" + std::to_string(s.n_a) + "x" + std::to_string(s.n_b) + "-" + to_string(s.field) + "-" + m;
}

}  // namespace sepprob
