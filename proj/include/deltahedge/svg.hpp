#pragma once

#include <string>
#include <vector>

#include "deltahedge/dates.hpp"

namespace deltahedge {

struct SvgSeries {
  std::string name;
  std::vector<Date> dates;
  std::vector<double> values;
};

/// Minimal multi-series line chart (equity-curve style).
void write_line_chart(const std::string& path, const std::string& title,
                      const std::vector<SvgSeries>& series);

}  // namespace deltahedge
