#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "exporters.hpp"
#include "halfelastica/curvegen.hpp"
#include "halfelastica/dynamics.hpp"
#include "halfelastica/errors.hpp"
#include "halfelastica/kernels.hpp"
#include "halfelastica/moduli.hpp"
#include "halfelastica/periodmap.hpp"
#include "halfelastica/rational.hpp"

namespace halfelastica::cli {
namespace {

enum class Format { Json, Csv, Svg };

struct RunConfig {
  std::string command;
  double lambda = std::numeric_limits<double>::quiet_NaN();
  double e2 = std::numeric_limits<double>::quiet_NaN();
  std::string q;
  int samples = 2048;
  double periods = 1;
  double tol = 1e-9;
  std::string output;
  std::optional<Format> format;
};

// Exit with a specific code after reporting.
struct Exit {
  int code;
  std::string message;
};

io::Json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw Exit{kUsage, "cannot open output file '" + path + "'"};
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

Format format_or(const RunConfig& cfg, Format fallback, std::initializer_list<Format> allowed) {
  const Format f = cfg.format.value_or(fallback);
  for (Format a : allowed)
    if (a == f) return f;
  throw Exit{kUsage, "format not supported by '" + cfg.command + "'"};
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Exit{kUsage, what};
}

ModulusPoint require_modulus(const RunConfig& cfg) {
  require(std::isfinite(cfg.lambda) && std::isfinite(cfg.e2), cfg.command + ": --lambda and --e2 are required");
  const auto p = moduli::classify_region(cfg.lambda, cfg.e2);
  if (!in_moduli_space(p.region))
    throw DomainError(cfg.command + ": (" + io::format_double(cfg.lambda) + ", " + io::format_double(cfg.e2) +
                      ") is not in the moduli space (" + region_name(p.region) + ")");
  return p;
}

Rational require_q(const RunConfig& cfg) {
  require(!cfg.q.empty(), cfg.command + ": --q is required");
  try {
    return parse_rational(cfg.q);
  } catch (const std::invalid_argument& e) {
    throw Exit{kUsage, e.what()};
  }
}

io::Json header(const RunConfig& cfg) {
  io::Json j;
  j["schema"] = io::kSchema;
  j["command"] = cfg.command;
  return j;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
  require(std::isfinite(cfg.lambda) && std::isfinite(cfg.e2), "classify: --lambda and --e2 are required");
  format_or(cfg, Format::Json, {Format::Json});
  const auto p = moduli::classify_region(cfg.lambda, cfg.e2);
  auto j = header(cfg);
  j["lambda"] = cfg.lambda;
  j["e2"] = cfg.e2;
  j["region"] = region_name(p.region);
  const bool has_eta = cfg.lambda <= moduli::lambda_equilibrium();
  const auto eta = has_eta ? moduli::eta_pm(cfg.lambda)
                           : std::pair{std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
  if (in_moduli_space(p.region)) {
    const auto r = moduli::roots_from_modulus(p);
    j["e1"] = r.e1;
    j["e3"] = r.e3;
    j["e4"] = r.e4;
    j["c"] = r.c;
  } else {
    j["e1"] = nullptr;
    j["e3"] = nullptr;
    j["e4"] = nullptr;
    j["c"] = nullptr;
  }
  j["eta_minus"] = num(eta.first);
  j["eta_plus"] = num(eta.second);
  j["wavelength"] = in_moduli_space(p.region) ? num(dynamics::wavelength(p)) : io::Json(nullptr);
  out << io::dump_json(j);
  return in_moduli_space(p.region) ? kOk : kNotInModuli;
}

int cmd_curve(const RunConfig& cfg, std::ostream& out) {
  const auto p = require_modulus(cfg);
  require(cfg.periods > 0, "curve: --periods must be positive");
  const Format f = format_or(cfg, Format::Csv, {Format::Csv, Format::Svg, Format::Json});
  const auto curve = curvegen::generate_curve(p, cfg.periods, cfg.samples);
  if (f == Format::Csv) {
    io::write_curve_csv(out, curve);
  } else if (f == Format::Svg) {
    io::DiskFigure fig;
    std::vector<std::array<double, 2>> path;
    for (const auto& s : curve.samples) path.push_back(s.poincare);
    fig.paths.push_back(std::move(path));
    fig.circles = io::confining_circles(curve);
    fig.title = std::string(curve_kind_name(curve.kind)) + " lambda=" + io::format_double(p.lambda) +
                " e2=" + io::format_double(p.e2);
    out << io::disk_svg(fig);
  } else {
    auto j = header(cfg);
    j["lambda"] = p.lambda;
    j["e2"] = p.e2;
    j["region"] = region_name(p.region);
    j["kind"] = curve_kind_name(curve.kind);
    j["wavelength"] = curve.wavelength;
    j["samples"] = curve.samples.size();
    j["theta_end"] = curve.theta.empty() ? io::Json(nullptr) : num(curve.theta.back());
    j["bending_energy"] = curvegen::bending_energy(curve, p.lambda);
    out << io::dump_json(j);
  }
  return kOk;
}

int cmd_signature(const RunConfig& cfg, std::ostream& out) {
  const auto p = require_modulus(cfg);
  const Format f = format_or(cfg, Format::Csv, {Format::Csv, Format::Json});
  const auto sig = dynamics::signature(p, cfg.samples);
  if (f == Format::Csv) {
    out << "mu,mu_dot\n";
    for (const auto& s : sig) out << io::format_double(s[0]) << ',' << io::format_double(s[1]) << '\n';
  } else {
    auto j = header(cfg);
    j["lambda"] = p.lambda;
    j["e2"] = p.e2;
    io::Json pts = io::Json::array();
    for (const auto& s : sig) pts.push_back({s[0], s[1]});
    j["points"] = pts;
    out << io::dump_json(j);
  }
  return kOk;
}

int cmd_scan_period(const RunConfig& cfg, std::ostream& out) {
  require(std::isfinite(cfg.lambda), "scan-period: --lambda is required");
  const Format f = format_or(cfg, Format::Csv, {Format::Csv, Format::Json, Format::Svg});
  const auto scan = kernels::scan_period_map(cfg.lambda, cfg.samples, Exec::Parallel);
  if (f == Format::Csv) {
    out << "e2,P\n";
    for (const auto& s : scan) out << io::format_double(s[0]) << ',' << io::format_double(s[1]) << '\n';
  } else if (f == Format::Svg) {
    io::PlaneFigure fig;
    fig.paths.push_back({scan.begin(), scan.end()});
    fig.x_label = "e2";
    fig.y_label = "P";
    fig.title = "period map lambda=" + io::format_double(cfg.lambda);
    out << io::plane_svg(fig);
  } else {
    auto j = header(cfg);
    j["lambda"] = cfg.lambda;
    const auto J = periodmap::j_interval(cfg.lambda);
    j["J"] = {num(J.first), num(J.second)};
    io::Json pts = io::Json::array();
    for (const auto& s : scan) pts.push_back({s[0], s[1]});
    j["points"] = pts;
    out << io::dump_json(j);
  }
  return kOk;
}

io::Json record_json(const StringRecord& r) {
  io::Json j;
  j["q"] = r.q.str();
  j["lambda"] = r.modulus.lambda;
  j["e2"] = r.modulus.e2;
  j["region"] = region_name(r.modulus.region);
  j["period_value"] = r.period_value;
  j["wavelength"] = r.wavelength;
  j["length"] = r.length;
  j["wave_number"] = r.wave_number;
  j["turning_number"] = r.turning_number;
  j["punctured_class"] = r.punctured_class ? io::Json(*r.punctured_class) : io::Json(nullptr);
  j["isotopy_count"] = r.isotopy_count;
  return j;
}

int cmd_find_string(const RunConfig& cfg, std::ostream& out) {
  require(std::isfinite(cfg.lambda), "find-string: --lambda is required");
  const Rational q = require_q(cfg);
  const Format f = format_or(cfg, Format::Json, {Format::Json, Format::Svg});
  const auto all = periodmap::find_strings(cfg.lambda, q);
  for (const auto& r : all)
    if (!(std::abs(r.period_value - q.value()) <= cfg.tol))
      throw ConvergenceError("find-string: |P - q| exceeds --tol", std::abs(r.period_value - q.value()));
  const auto& rec = all.front();
  if (f == Format::Json) {
    auto j = header(cfg);
    j["q_input"] = cfg.q;
    j["q"] = q.str();
    const auto J = periodmap::j_interval(cfg.lambda);
    j["J"] = {num(J.first), num(J.second)};
    j["string"] = record_json(rec);
    io::Json others = io::Json::array();
    for (std::size_t i = 1; i < all.size(); ++i) others.push_back(record_json(all[i]));
    j["other_solutions"] = others;
    out << io::dump_json(j);
  } else {
    const auto grid = dynamics::period_grid(rec.wavelength, cfg.samples, static_cast<double>(rec.wave_number));
    const auto curve = curvegen::bt_curve(rec.modulus, grid);
    io::DiskFigure fig;
    std::vector<std::array<double, 2>> path;
    for (const auto& s : curve.samples) path.push_back(s.poincare);
    fig.paths.push_back(std::move(path));
    fig.circles = io::confining_circles(curve);
    fig.title = "string q=" + q.str() + " lambda=" + io::format_double(rec.modulus.lambda) +
                " e2=" + io::format_double(rec.modulus.e2);
    out << io::disk_svg(fig);
  }
  return kOk;
}

int cmd_fiber(const RunConfig& cfg, std::ostream& out) {
  const Rational q = require_q(cfg);
  const Format f = format_or(cfg, Format::Csv, {Format::Csv, Format::Json});
  const auto tr = periodmap::trace_fiber(q, cfg.samples);
  if (f == Format::Csv) {
    out << "lambda,e2,region\n";
    for (const auto& p : tr.points)
      out << io::format_double(p.lambda) << ',' << io::format_double(p.e2) << ',' << region_name(p.region) << '\n';
  } else {
    auto j = header(cfg);
    j["q"] = q.str();
    j["start"] = {tr.start.first, tr.start.second};
    j["end"] = {tr.end.first, tr.end.second};
    j["exceptional"] = {num(tr.exceptional.lambda), num(tr.exceptional.e2)};
    io::Json pts = io::Json::array();
    for (const auto& p : tr.points) pts.push_back({{"lambda", p.lambda}, {"e2", p.e2}, {"region", region_name(p.region)}});
    j["points"] = pts;
    out << io::dump_json(j);
  }
  return kOk;
}

int cmd_phase_portrait(const RunConfig& cfg, std::ostream& out) {
  require(std::isfinite(cfg.lambda), "phase-portrait: --lambda is required");
  const Format f = format_or(cfg, Format::Svg, {Format::Svg, Format::Csv});
  if (!(cfg.lambda < moduli::lambda_equilibrium()))
    throw DomainError("phase-portrait: need lambda < -2/27^(1/4)");
  const auto [em, ep] = moduli::eta_pm(cfg.lambda);
  constexpr int kOrbits = 12;
  std::vector<double> levels;
  for (int k = 0; k < kOrbits; ++k) levels.push_back(em + (ep - em) * (k + 0.5) / kOrbits);
  std::vector<std::vector<std::array<double, 2>>> orbits(levels.size());
  kernels::for_each_index(levels.size(), Exec::Parallel, [&](std::size_t i) {
    orbits[i] = dynamics::signature(moduli::classify_region(cfg.lambda, levels[i]), cfg.samples);
    orbits[i].push_back(orbits[i].front());
  });
  if (f == Format::Csv) {
    out << "orbit,e2,region,mu,mu_dot\n";
    for (std::size_t i = 0; i < orbits.size(); ++i) {
      const char* reg = region_name(moduli::classify_region(cfg.lambda, levels[i]).region);
      for (const auto& s : orbits[i])
        out << i << ',' << io::format_double(levels[i]) << ',' << reg << ',' << io::format_double(s[0]) << ','
            << io::format_double(s[1]) << '\n';
    }
  } else {
    io::PlaneFigure fig;
    fig.paths = orbits;
    fig.x_label = "mu";
    fig.y_label = "mu_dot";
    fig.title = "phase portrait lambda=" + io::format_double(cfg.lambda);
    out << io::plane_svg(fig);
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Critical curves of the half-elastic functional in the hyperbolic plane", "halfelastica"};
  app.require_subcommand(1);
  const std::map<std::string, Format> formats{{"json", Format::Json}, {"csv", Format::Csv}, {"svg", Format::Svg}};
  Format fmt = Format::Json;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--lambda", cfg.lambda, "Lagrange multiplier lambda");
    sub->add_option("--e2", cfg.e2, "Modulus e2 (minimum of mu)");
    sub->add_option("--q", cfg.q, "Characteristic number m/n");
    sub->add_option("--samples", cfg.samples, "Samples per period / scan points / fiber steps")
        ->check(CLI::Range(16, 1 << 24));
    sub->add_option("--periods", cfg.periods, "Number of periods");
    sub->add_option("--tol", cfg.tol, "Tolerance on |P - q|")->check(CLI::PositiveNumber);
    sub->add_option("--out", cfg.output, "Output file (default stdout)");
    sub->add_option("--format", fmt, "Output format")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  };
  struct Command {
    int (*fn)(const RunConfig&, std::ostream&);
    const char* help;
  };
  const std::map<std::string, Command> commands{
      {"classify", {cmd_classify, "Region, roots and wavelength of a modulus (lambda, e2)"}},
      {"curve", {cmd_curve, "Sampled curve as CSV, JSON or a Poincare-disk SVG"}},
      {"signature", {cmd_signature, "Modified signature (mu, mu_dot) over one period"}},
      {"scan-period", {cmd_scan_period, "Period map over the timelike e2-range at fixed lambda"}},
      {"find-string", {cmd_find_string, "Closed BT-string with characteristic number q at lambda"}},
      {"fiber", {cmd_fiber, "Trace the fiber of q from (-1, 1) to its endpoint"}},
      {"phase-portrait", {cmd_phase_portrait, "Closed orbits of the phase field at lambda"}},
  };
  for (const auto& [name, c] : commands) add_common(app.add_subcommand(name, c.help));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  if (app.get_subcommands().front()->count("--format")) cfg.format = fmt;

  try {
    Sink sink(cfg.output, out);
    std::ostringstream buffer;
    const int code = commands.at(cfg.command).fn(cfg, buffer);
    sink.stream() << buffer.str();
    return code;
  } catch (const Exit& e) {
    err << "error: " << e.message << "\n";
    return e.code;
  } catch (const OutOfRangeError& e) {
    err << "error: " << e.what() << "\n";
    return kQOutOfRange;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kNumericDomain;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    return kNumericDomain;
  } catch (const NoRootError& e) {
    err << "error: " << e.what() << "\n";
    return kNumericDomain;
  }
}

}  // namespace halfelastica::cli
