#include "exporters.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "halfelastica/curvegen.hpp"

namespace halfelastica::io {
namespace {

constexpr double kCentre = 500, kScale = 480;

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

void dump(std::ostringstream& os, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  const std::string inner(static_cast<std::size_t>(indent + 2), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << inner << Json(it.key()).dump() << ": ";
        dump(os, it.value(), indent + 2);
      }
      os << "\n" << pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << inner;
        dump(os, j[i], indent + 2);
      }
      os << "\n" << pad << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      os << (std::isfinite(x) ? format_double(x) : "null");
      return;
    }
    default:
      os << j.dump();
  }
}

std::string polyline(const std::vector<std::array<double, 2>>& pts) {
  std::ostringstream os;
  for (std::size_t i = 0; i < pts.size(); ++i)
    os << (i ? " L" : "M") << px(kCentre + kScale * pts[i][0]) << "," << px(kCentre - kScale * pts[i][1]);
  return os.str();
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string dump_json(const Json& j) {
  std::ostringstream os;
  dump(os, j, 0);
  os << "\n";
  return os.str();
}

void write_curve_csv(std::ostream& os, const CurveSamples& curve) {
  os << "s,mu,mu_dot,x1,x2,x3,u,v,theta\n";
  for (std::size_t i = 0; i < curve.samples.size(); ++i) {
    const auto& c = curve.samples[i];
    const double th = i < curve.theta.size() ? curve.theta[i] : std::numeric_limits<double>::quiet_NaN();
    os << format_double(c.s) << ',' << format_double(c.mu) << ',' << format_double(c.mu_dot) << ','
       << format_double(c.gamma.x1) << ',' << format_double(c.gamma.x2) << ',' << format_double(c.gamma.x3) << ','
       << format_double(c.poincare[0]) << ',' << format_double(c.poincare[1]) << ',' << format_double(th) << '\n';
  }
}

std::vector<Circle> confining_circles(const CurveSamples& curve) {
  const double e1 = curve.roots.e1, e2 = curve.roots.e2;
  std::vector<Circle> out;
  switch (curve.kind) {
    case CurveKind::BL:
      // x1 - x3 = 1 / (sqrt2 mu): horocycles tangent at (0, 1).
      for (double mu : {e2, e1}) {
        const double k = 1 / (std::sqrt(2.0) * mu);
        out.push_back({0, 1 / (1 + k), k / (1 + k), "bound"});
      }
      break;
    case CurveKind::BS: {
      // x3 = 1 / (2 sqrt(c) mu): hypercycles orthogonal to the x2 axis.
      const double rc = std::sqrt(curve.roots.c);
      for (double mu : {e2, e1}) {
        const double k = 1 / (2 * rc * mu);
        out.push_back({0, -1 / k, std::sqrt(1 + 1 / (k * k)), "bound"});
      }
      break;
    }
    case CurveKind::BT: {
      const auto [inner, outer] = curvegen::annulus_radii(curve.modulus);
      if (inner > 0) out.push_back({0, 0, inner, "bound"});
      out.push_back({0, 0, outer, "bound"});
      break;
    }
  }
  return out;
}

std::string disk_svg(const DiskFigure& fig) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\" width=\"1000\" height=\"1000\">\n";
  if (!fig.title.empty()) os << "<title>" << fig.title << "</title>\n";
  os << "<defs><clipPath id=\"disk\"><circle cx=\"500\" cy=\"500\" r=\"480\"/></clipPath></defs>\n";
  os << "<style>.boundary{fill:none;stroke:#000;stroke-width:2}.bound{fill:none;stroke:#888;stroke-width:1.5;"
        "stroke-dasharray:6 4}.path{fill:none;stroke:#c03;stroke-width:1.5}</style>\n";
  os << "<circle class=\"boundary\" cx=\"500\" cy=\"500\" r=\"480\"/>\n";
  os << "<g clip-path=\"url(#disk)\">\n";
  for (const auto& c : fig.circles)
    os << "<circle class=\"" << c.css_class << "\" cx=\"" << px(kCentre + kScale * c.cx) << "\" cy=\""
       << px(kCentre - kScale * c.cy) << "\" r=\"" << px(kScale * c.r) << "\"/>\n";
  for (const auto& p : fig.paths) os << "<path class=\"path\" d=\"" << polyline(p) << "\"/>\n";
  os << "</g>\n</svg>\n";
  return os.str();
}

std::string plane_svg(const PlaneFigure& fig) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (const auto& p : fig.paths)
    for (const auto& q : p) {
      xmin = std::min(xmin, q[0]);
      xmax = std::max(xmax, q[0]);
      ymin = std::min(ymin, q[1]);
      ymax = std::max(ymax, q[1]);
    }
  if (!(xmax > xmin)) xmax = xmin + 1;
  if (!(ymax > ymin)) ymax = ymin + 1;
  const double m = 60, span = 1000 - 2 * m;
  auto X = [&](double x) { return m + span * (x - xmin) / (xmax - xmin); };
  auto Y = [&](double y) { return 1000 - m - span * (y - ymin) / (ymax - ymin); };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\" width=\"1000\" height=\"1000\">\n";
  if (!fig.title.empty()) os << "<title>" << fig.title << "</title>\n";
  os << "<style>.axis{fill:none;stroke:#000;stroke-width:1}.path{fill:none;stroke:#036;stroke-width:1.2}"
        "text{font:20px sans-serif}</style>\n";
  os << "<rect class=\"axis\" x=\"" << m << "\" y=\"" << m << "\" width=\"" << span << "\" height=\"" << span
     << "\"/>\n";
  os << "<text x=\"500\" y=\"990\" text-anchor=\"middle\">" << fig.x_label << " [" << format_double(xmin) << ", "
     << format_double(xmax) << "]</text>\n";
  os << "<text x=\"20\" y=\"40\">" << fig.y_label << " [" << format_double(ymin) << ", " << format_double(ymax)
     << "]</text>\n";
  for (const auto& p : fig.paths) {
    os << "<path class=\"path\" d=\"";
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? " L" : "M") << px(X(p[i][0])) << "," << px(Y(p[i][1]));
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace halfelastica::io
