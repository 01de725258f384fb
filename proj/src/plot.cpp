#include "biphoton/plot.hpp"

#include "biphoton/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace biphoton {

void write_xy_svg(std::span<const double> xs, std::span<const double> ys,
                  const std::string &x_label, const std::string &y_label,
                  const std::filesystem::path &destination) {
  if (xs.size() != ys.size() || xs.empty())
    throw ConfigError("write_xy_svg: need equally sized, non-empty x/y data");

  const double width = 800, height = 500;
  const double ml = 80, mr = 25, mt = 25, mb = 60; // margins
  const double pw = width - ml - mr, ph = height - mt - mb;

  double x_min = *std::min_element(xs.begin(), xs.end());
  double x_max = *std::max_element(xs.begin(), xs.end());
  double y_min = *std::min_element(ys.begin(), ys.end());
  double y_max = *std::max_element(ys.begin(), ys.end());
  if (x_max == x_min)
    x_max = x_min + 1.0;
  if (y_max == y_min)
    y_max = y_min + 1.0;
  const double y_pad = 0.05 * (y_max - y_min);
  y_min -= y_pad;
  y_max += y_pad;

  auto px = [&](double x) { return ml + pw * (x - x_min) / (x_max - x_min); };
  auto py = [&](double y) { return mt + ph * (1.0 - (y - y_min) / (y_max - y_min)); };

  std::ofstream out(destination);
  if (!out)
    throw IoError("write_xy_svg: cannot open " + destination.string());

  char buf[160];
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // axes
  std::snprintf(buf, sizeof(buf),
                "<line class=\"axis\" x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" "
                "stroke=\"black\"/>\n",
                ml, mt + ph, ml + pw, mt + ph);
  out << buf;
  std::snprintf(buf, sizeof(buf),
                "<line class=\"axis\" x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" "
                "stroke=\"black\"/>\n",
                ml, mt, ml, mt + ph);
  out << buf;

  // min/max tick labels
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%g\" y=\"%g\" font-size=\"12\" text-anchor=\"middle\">%.6g</text>\n",
                ml, mt + ph + 18, x_min);
  out << buf;
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%g\" y=\"%g\" font-size=\"12\" text-anchor=\"middle\">%.6g</text>\n",
                ml + pw, mt + ph + 18, x_max);
  out << buf;
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%g\" y=\"%g\" font-size=\"12\" text-anchor=\"end\">%.6g</text>\n",
                ml - 6, mt + ph, y_min + y_pad);
  out << buf;
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%g\" y=\"%g\" font-size=\"12\" text-anchor=\"end\">%.6g</text>\n",
                ml - 6, mt + 10, y_max - y_pad);
  out << buf;

  // axis labels
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%g\" y=\"%g\" font-size=\"14\" text-anchor=\"middle\">%s</text>\n",
                ml + pw / 2, height - 15.0, x_label.c_str());
  out << buf;
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%g\" y=\"%g\" font-size=\"14\" text-anchor=\"middle\" "
                "transform=\"rotate(-90 %g %g)\">%s</text>\n",
                18.0, mt + ph / 2, 18.0, mt + ph / 2, y_label.c_str());
  out << buf;

  out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", px(xs[i]), py(ys[i]));
    out << buf;
  }
  out << "\"/>\n</svg>\n";
  out.flush();
  if (!out)
    throw IoError("write_xy_svg: write failed for " + destination.string());
}

} // namespace biphoton
