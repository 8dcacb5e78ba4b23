#include "deltahedge/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "deltahedge/errors.hpp"

namespace deltahedge {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

void write_line_chart(const std::string& path, const std::string& title,
                      const std::vector<SvgSeries>& series) {
  const double width = 900, height = 480;
  const double left = 70, right = 20, top = 40, bottom = 40;

  double lo = 1e300, hi = -1e300;
  std::int64_t d0 = 0, d1 = 1;
  bool any = false;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      lo = std::min(lo, s.values[i]);
      hi = std::max(hi, s.values[i]);
      const std::int64_t d = s.dates[i].serial();
      if (!any) {
        d0 = d1 = d;
        any = true;
      } else {
        d0 = std::min(d0, d);
        d1 = std::max(d1, d);
      }
    }
  }
  if (!any) throw DataError("write_line_chart: no data");
  if (hi <= lo) hi = lo + 1.0;
  if (d1 <= d0) d1 = d0 + 1;

  auto x_of = [&](Date d) {
    return left + (width - left - right) * static_cast<double>(d.serial() - d0) /
                      static_cast<double>(d1 - d0);
  };
  auto y_of = [&](double v) {
    return height - bottom - (height - top - bottom) * (v - lo) / (hi - lo);
  };

  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(path + ": cannot write");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\" "
      << "font-family=\"sans-serif\">" << title << "</text>\n";

  for (int i = 0; i <= 4; ++i) {
    const double v = lo + (hi - lo) * i / 4.0;
    const double y = y_of(v);
    out << "<line x1=\"" << left << "\" y1=\"" << num(y) << "\" x2=\"" << width - right
        << "\" y2=\"" << num(y) << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << left - 6 << "\" y=\"" << num(y + 4)
        << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" << num(v)
        << "</text>\n";
  }
  out << "<text x=\"" << left << "\" y=\"" << height - 10
      << "\" font-size=\"11\" font-family=\"sans-serif\">" << Date(d0).to_string()
      << "</text>\n";
  out << "<text x=\"" << width - right << "\" y=\"" << height - 10
      << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">"
      << Date(d1).to_string() << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % std::size(kPalette)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < series[s].values.size(); ++i) {
      if (i) out << ' ';
      out << num(x_of(series[s].dates[i])) << ',' << num(y_of(series[s].values[i]));
    }
    out << "\"/>\n";
    out << "<text x=\"" << left + 8 << "\" y=\"" << top + 16 * static_cast<double>(s)
        << "\" font-size=\"12\" font-family=\"sans-serif\" fill=\"" << color << "\">"
        << series[s].name << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace deltahedge
