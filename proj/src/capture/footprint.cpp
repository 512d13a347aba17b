#include "h3lab/capture/footprint.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

#include "h3lab/common/error.hpp"
#include "h3lab/common/text.hpp"

namespace h3lab::capture {

std::uint64_t FootprintSeries::total() const noexcept {
  return std::accumulate(normal.begin(), normal.end(), std::uint64_t{0}) +
         std::accumulate(malicious.begin(), malicious.end(), std::uint64_t{0});
}

FootprintSeries footprint(const std::vector<LabeledPacket>& packets, double bucket) {
  if (!(bucket > 0.0)) throw ParameterError("footprint bucket must be positive");
  FootprintSeries s;
  s.bucket = bucket;
  if (packets.empty()) return s;
  auto index = [&](double ts) { return static_cast<long long>(std::floor(ts / bucket)); };
  long long lo = 0;
  long long hi = 0;
  for (const auto& p : packets) {
    lo = std::min(lo, index(p.record.ts));
    hi = std::max(hi, index(p.record.ts));
  }
  const auto n = static_cast<std::size_t>(hi - lo + 1);
  s.normal.assign(n, 0);
  s.malicious.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) s.t.push_back(static_cast<double>(lo + static_cast<long long>(i)) * bucket);
  for (const auto& p : packets) {
    const auto i = static_cast<std::size_t>(index(p.record.ts) - lo);
    if (p.cls == features::ClassLabel::Normal) {
      ++s.normal[i];
    } else {
      ++s.malicious[i];
    }
  }
  return s;
}

void write_footprint_csv(std::ostream& out, const FootprintSeries& s) {
  out << "t,normal_pps,malicious_pps\n";
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    out << format_double(s.t[i]) << ',' << format_double(static_cast<double>(s.normal[i]) / s.bucket)
        << ',' << format_double(static_cast<double>(s.malicious[i]) / s.bucket) << '\n';
  }
}

std::string render_footprint_svg(const FootprintSeries& s, const std::string& title) {
  constexpr double kWidth = 900, kHeight = 360, kPad = 50;
  double peak = 1.0;
  for (std::size_t i = 0; i < s.t.size(); ++i) {
    peak = std::max({peak, static_cast<double>(s.normal[i]) / s.bucket,
                     static_cast<double>(s.malicious[i]) / s.bucket});
  }
  const double t0 = s.t.empty() ? 0.0 : s.t.front();
  const double t1 = s.t.empty() ? 1.0 : std::max(s.t.back() + s.bucket, t0 + s.bucket);
  auto x = [&](double t) { return kPad + (t - t0) / (t1 - t0) * (kWidth - 2 * kPad); };
  auto y = [&](double v) { return kHeight - kPad - v / peak * (kHeight - 2 * kPad); };
  auto polyline = [&](const std::vector<std::uint64_t>& v, const char* colour) {
    std::ostringstream p;
    p << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.2\" points=\"";
    for (std::size_t i = 0; i < v.size(); ++i) {
      p << format_fixed(x(s.t[i]), 1) << ',' << format_fixed(y(static_cast<double>(v[i]) / s.bucket), 1)
        << ' ';
    }
    p << "\"/>\n";
    return p.str();
  };
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kPad << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">" << title
      << "</text>\n"
      << "<line x1=\"" << kPad << "\" y1=\"" << kHeight - kPad << "\" x2=\"" << kWidth - kPad
      << "\" y2=\"" << kHeight - kPad << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << kPad << "\" y1=\"" << kPad << "\" x2=\"" << kPad << "\" y2=\""
      << kHeight - kPad << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << kPad << "\" y=\"" << kHeight - 15 << "\" font-size=\"11\">"
      << format_double(t0) << " s</text>\n"
      << "<text x=\"" << kWidth - kPad - 40 << "\" y=\"" << kHeight - 15 << "\" font-size=\"11\">"
      << format_double(t1) << " s</text>\n"
      << "<text x=\"4\" y=\"" << kPad << "\" font-size=\"11\">" << format_fixed(peak, 0)
      << "</text>\n"
      << polyline(s.normal, "#1f77b4") << polyline(s.malicious, "#d62728")
      << "<text x=\"" << kWidth - 200 << "\" y=\"24\" font-size=\"12\" fill=\"#1f77b4\">normal PPS</text>\n"
      << "<text x=\"" << kWidth - 110 << "\" y=\"24\" font-size=\"12\" fill=\"#d62728\">malicious PPS</text>\n"
      << "</svg>\n";
  return svg.str();
}

}  // namespace h3lab::capture
