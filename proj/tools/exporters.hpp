#pragma once

#include <array>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "halfelastica/curvegen.hpp"

namespace halfelastica::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "halfelastica/1";

// %.17g; non-finite values become "nan", "inf" or "-inf".
std::string format_double(double x);

// Pretty JSON with 17-significant-digit floats and non-finite numbers as null.
std::string dump_json(const Json& j);

void write_curve_csv(std::ostream& os, const CurveSamples& curve);

struct Circle {
  double cx, cy, r;  // disk coordinates
  std::string css_class;
};

struct DiskFigure {
  std::vector<std::vector<std::array<double, 2>>> paths;
  std::vector<Circle> circles;
  std::string title;
};

// Unit disk mapped to a 1000 x 1000 viewBox; no external references.
std::string disk_svg(const DiskFigure& fig);

// Boundary circles confining the Poincare trajectory: horocycles for BL,
// hypercycle arcs for BS, the annulus for BT.
std::vector<Circle> confining_circles(const CurveSamples& curve);

struct PlaneFigure {
  std::vector<std::vector<std::array<double, 2>>> paths;
  std::string x_label, y_label, title;
};

// Generic x-y plot fitted to a 1000 x 1000 viewBox.
std::string plane_svg(const PlaneFigure& fig);

}  // namespace halfelastica::io
