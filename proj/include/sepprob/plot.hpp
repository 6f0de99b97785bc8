#pragma once

// Ratio-vs-iterations chart from a checkpoint CSV, as a standalone SVG:
// one <polyline> for the estimate / conjecture ratio and one dashed <line>
// at ratio 1. The frame is a <rect>; labels are <text>.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sepprob/checkpoint_io.hpp"

namespace sepprob {

struct RatioSeries {
  std::vector<std::uint64_t> n;
  std::vector<double> ratio;
};

/// Reads (n, ratio) pairs. With `conjecture` set the ratio is recomputed as
/// p_ppt / conjecture; otherwise the CSV's conjecture_ratio column is used.
inline RatioSeries read_ratio_series(const std::filesystem::path& csv, std::optional<double> conjecture = {}) {
  std::ifstream in(csv);
  if (!in) throw CheckpointError("cannot open " + csv.string());
  std::string line;
  if (!std::getline(in, line)) throw CheckpointError("plot: empty file " + csv.string());
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw CheckpointError("plot: not a checkpoint CSV: " + csv.string());
  RatioSeries s;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const CsvRow r = parse_row(line);
    double v;
    if (conjecture) {
      v = r.p_ppt / *conjecture;
    } else if (r.conjecture_ratio) {
      v = *r.conjecture_ratio;
    } else {
      throw CheckpointError("plot: row without conjecture_ratio; pass a conjecture");
    }
    s.n.push_back(r.n);
    s.ratio.push_back(v);
  }
  if (s.n.empty()) throw CheckpointError("plot: no data rows in " + csv.string());
  return s;
}

inline std::string render_ratio_svg(const RatioSeries& s, const std::string& title) {
  if (s.n.empty() || s.n.size() != s.ratio.size()) throw std::invalid_argument("render_ratio_svg: empty series");
  constexpr double W = 720, H = 420, left = 90, right = 20, top = 40, bottom = 60;
  const double pw = W - left - right, ph = H - top - bottom;

  const auto [nmin_it, nmax_it] = std::minmax_element(s.n.begin(), s.n.end());
  const double nmin = static_cast<double>(*nmin_it), nmax = static_cast<double>(*nmax_it);
  double ylo = std::min(1.0, *std::min_element(s.ratio.begin(), s.ratio.end()));
  double yhi = std::max(1.0, *std::max_element(s.ratio.begin(), s.ratio.end()));
  const double pad = std::max((yhi - ylo) * 0.1, 1e-3);
  ylo -= pad;
  yhi += pad;

  auto px = [&](double n) { return nmax > nmin ? left + (n - nmin) / (nmax - nmin) * pw : left + pw / 2; };
  auto py = [&](double r) { return top + (yhi - r) / (yhi - ylo) * ph; };

  std::ostringstream os;
  os.precision(10);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
     << ' ' << H << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
     << title << "</text>\n";
  os << "<text x=\"" << left << "\" y=\"" << H - bottom + 20 << "\" font-family=\"sans-serif\" font-size=\"12\">"
     << *nmin_it << "</text>\n";
  os << "<text x=\"" << W - right << "\" y=\"" << H - bottom + 20
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << *nmax_it << "</text>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"" << H - 15
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">iterations</text>\n";
  os << "<text x=\"" << left - 6 << "\" y=\"" << top + 4
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << yhi << "</text>\n";
  os << "<text x=\"" << left - 6 << "\" y=\"" << top + ph
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << ylo << "</text>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << py(1.0) << "\" x2=\"" << left + pw << "\" y2=\"" << py(1.0)
     << "\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";
  os << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < s.n.size(); ++i)
    os << (i ? " " : "") << px(static_cast<double>(s.n[i])) << ',' << py(s.ratio[i]);
  os << "\"/>\n</svg>\n";
  return os.str();
}

inline void write_ratio_svg(const std::filesystem::path& out, const RatioSeries& s, const std::string& title) {
  std::ofstream f(out, std::ios::trunc);
  f << render_ratio_svg(s, title);
  if (!f) throw CheckpointError("cannot write " + out.string());
}

}  // namespace sepprob
