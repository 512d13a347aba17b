#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "h3lab/capture/label.hpp"

namespace h3lab::capture {

/// Packets per bucket, split into normal and malicious.
struct FootprintSeries {
  double bucket = 1.0;
  std::vector<double> t;  // bucket start times
  std::vector<std::uint64_t> normal;
  std::vector<std::uint64_t> malicious;

  std::uint64_t total() const noexcept;
};

/// Throws ParameterError unless bucket > 0.
FootprintSeries footprint(const std::vector<LabeledPacket>& packets, double bucket = 1.0);

/// CSV columns: t,normal_pps,malicious_pps.
void write_footprint_csv(std::ostream& out, const FootprintSeries& series);

/// Static SVG line plot of both series.
std::string render_footprint_svg(const FootprintSeries& series, const std::string& title);

}  // namespace h3lab::capture
