#pragma once

// Human-readable tables and CSV dumps for the constants registry and the
// X-state identity checks.

#include <cstdio>
#include <iomanip>
#include <ostream>
#include <string>
#include <string_view>

#include "sepprob/constants.hpp"
#include "sepprob/exact.hpp"

namespace sepprob {

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

namespace detail {
inline std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace detail

inline void write_registry_table(std::ostream& os) {
  os << std::left << std::setw(38) << "name" << std::setw(30) << "closed form" << std::setw(24) << "value"
     << std::setw(13) << "status" << "context\n";
  for (const auto& e : constants_registry()) {
    char val[40];
    std::snprintf(val, sizeof val, "%.15g", e.value);
    os << std::setw(38) << e.name << std::setw(30) << e.closed_form << std::setw(24) << val << std::setw(13)
       << to_string(e.status) << e.context << '\n';
  }
  os << std::right;
}

inline void write_registry_csv(std::ostream& os) {
  os << "name,closed_form,value,status,context\n";
  for (const auto& e : constants_registry())
    os << csv_field(e.name) << ',' << csv_field(e.closed_form) << ',' << detail::g17(e.value) << ','
       << to_string(e.status) << ',' << csv_field(e.context) << '\n';
}

inline void write_identity_table(std::ostream& os, const IdentityReport& rep) {
  os << std::left << std::setw(28) << "identity" << std::setw(20) << "closed form" << std::setw(24) << "expected"
     << std::setw(24) << "computed" << std::setw(12) << "rel.err" << "result\n";
  for (const auto& c : rep.checks) {
    char e[40], v[40], r[24];
    std::snprintf(e, sizeof e, "%.17g", c.expected);
    std::snprintf(v, sizeof v, "%.17g", c.computed);
    std::snprintf(r, sizeof r, "%.2e", c.rel_error);
    os << std::setw(28) << c.label << std::setw(20) << c.closed_form << std::setw(24) << e << std::setw(24) << v
       << std::setw(12) << r << (c.pass ? "PASS" : "FAIL") << '\n';
  }
  os << std::right;
}

inline void write_identity_csv(std::ostream& os, const IdentityReport& rep) {
  os << "identity,closed_form,expected,computed,rel_error,tolerance,pass\n";
  for (const auto& c : rep.checks)
    os << csv_field(c.label) << ',' << csv_field(c.closed_form) << ',' << detail::g17(c.expected) << ','
       << detail::g17(c.computed) << ',' << detail::g17(c.rel_error) << ',' << detail::g17(c.tol) << ','
       << (c.pass ? "true" : "false") << '\n';
}

}  // namespace sepprob
