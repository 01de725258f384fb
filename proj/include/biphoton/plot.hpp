#pragma once

#include <filesystem>
#include <span>
#include <string>

namespace biphoton {

/// Minimal static plot: one polyline on two labeled axes with min/max tick
/// marks. Dependency-free; enough for scan curves.
void write_xy_svg(std::span<const double> xs, std::span<const double> ys,
                  const std::string &x_label, const std::string &y_label,
                  const std::filesystem::path &destination);

} // namespace biphoton
