#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "halfelastica/moduli.hpp"

using namespace halfelastica;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "halfelastica");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

Result spawn(const std::string& args) {
  const std::string cmd = std::string(HALFELASTICA_TOOL) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, {}};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) v.push_back(l);
  return v;
}

std::string repr(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Disk coordinates of every vertex in the trajectory paths of a disk SVG.
std::vector<std::array<double, 2>> path_vertices(const std::string& svg) {
  std::vector<std::array<double, 2>> pts;
  const std::string tag = "<path class=\"path\" d=\"";
  for (std::size_t pos = 0; (pos = svg.find(tag, pos)) != std::string::npos;) {
    pos += tag.size();
    const std::size_t end = svg.find('"', pos);
    std::istringstream d(svg.substr(pos, end - pos));
    char cmd, comma;
    double x, y;
    while (d >> cmd >> x >> comma >> y) pts.push_back({(x - 500) / 480, (500 - y) / 480});
    pos = end;
  }
  return pts;
}

}  // namespace

TEST_CASE("classify reports the region and roots") {
  const auto r = run({"classify", "--lambda", "-1.25", "--e2", "2.0"});
  REQUIRE(r.code == cli::kOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == "halfelastica/1");
  CHECK(j["region"] == "L");
  CHECK(std::abs(j["c"].get<double>()) <= 1e-10);
  CHECK(j["e1"].get<double>() > 2.0);

  const auto s = nlohmann::json::parse(run({"classify", "--lambda", "-1.3", "--e2", "1.2"}).out);
  CHECK(s["region"] == "S");
  CHECK(s["c"].get<double>() > 0);
  const auto t = nlohmann::json::parse(run({"classify", "--lambda", "-1.3", "--e2", "2.3"}).out);
  CHECK(t["region"] == "Tminus");
  CHECK(t["c"].get<double>() < 0);

  const auto o = run({"classify", "--lambda", "-0.5", "--e2", "1.0"});
  CHECK(o.code == cli::kNotInModuli);
  CHECK(nlohmann::json::parse(o.out)["region"] == "Outside");
}

TEST_CASE("curve CSV follows the grid contract") {
  const auto r = run({"curve", "--lambda", "-1.3", "--e2", "2.3", "--samples", "64", "--periods", "2"});
  REQUIRE(r.code == cli::kOk);
  const auto ls = lines(r.out);
  CHECK(ls.front() == "s,mu,mu_dot,x1,x2,x3,u,v,theta");
  CHECK(ls.size() == 64 * 2 + 1 + 1);
  CHECK(std::count(ls[5].begin(), ls[5].end(), ',') == 8);
  CHECK(run({"curve", "--lambda", "-0.5", "--e2", "1.0"}).code == cli::kNumericDomain);
}

TEST_CASE("BL curve SVG shows the lunular region") {
  const double l = -1.17;
  const auto r = run({"curve", "--lambda", repr(l), "--e2", repr(moduli::b0(l)), "--samples", "256", "--format", "svg"});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.out.find("viewBox=\"0 0 1000 1000\"") != std::string::npos);
  CHECK(r.out.find("href") == std::string::npos);
  std::size_t circles = 0;
  for (std::size_t pos = 0; (pos = r.out.find("class=\"bound\"", pos)) != std::string::npos; ++pos) ++circles;
  CHECK(circles == 2);
  CHECK_FALSE(path_vertices(r.out).empty());
}

TEST_CASE("exceptional BT trajectory passes through the origin") {
  const double l = -1.2;
  const auto r = run({"curve", "--lambda", repr(l), "--e2", repr(moduli::exceptional_c(l)), "--samples", "2048",
                      "--format", "svg"});
  REQUIRE(r.code == cli::kOk);
  double best = 1e300;
  for (const auto& p : path_vertices(r.out)) best = std::min(best, std::hypot(p[0], p[1]));
  CHECK(best <= 1e-4);
}

TEST_CASE("scan-period") {
  const auto r = run({"scan-period", "--lambda", "-1.3", "--samples", "64", "--format", "csv"});
  REQUIRE(r.code == cli::kOk);
  const auto ls = lines(r.out);
  CHECK(ls.front() == "e2,P");
  REQUIRE(ls.size() == 65);
  auto value = [&](std::size_t i) { return std::stod(ls[i].substr(ls[i].find(',') + 1)); };
  CHECK(std::abs(value(1) - 1) < 0.02);
  CHECK(std::abs(value(64) - moduli::chi(-1.3)) < 1e-3);

  auto slope_signs = [&](const char* lambda) {
    const auto s = lines(run({"scan-period", "--lambda", lambda, "--samples", "400", "--format", "csv"}).out);
    int up = 0, down = 0;
    for (std::size_t i = 2; i < s.size(); ++i) {
      const double a = std::stod(s[i - 1].substr(s[i - 1].find(',') + 1));
      const double b = std::stod(s[i].substr(s[i].find(',') + 1));
      (b > a ? up : down)++;
    }
    return std::pair{up, down};
  };
  const auto dec = slope_signs("-0.98");
  CHECK(dec.first == 0);
  const auto dip = slope_signs("-0.999");
  CHECK(dip.first > 0);
  CHECK(dip.second > 0);
}

TEST_CASE("find-string") {
  const auto r = run({"find-string", "--lambda", "-0.95", "--q", "6/4", "--format", "json"});
  REQUIRE(r.code == cli::kOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["q_input"] == "6/4");
  CHECK(j["q"] == "3/2");
  CHECK(std::abs(j["string"]["period_value"].get<double>() - 1.5) <= 1e-9);
  CHECK(j["string"]["wave_number"] == 2);

  const auto bad = run({"find-string", "--lambda", "-1.2", "--q", "6/5"});
  CHECK(bad.code == cli::kQOutOfRange);
  CHECK(bad.err.find("1.037") != std::string::npos);

  const auto svg = run({"find-string", "--lambda", "-0.95", "--q", "5/4", "--format", "svg"});
  REQUIRE(svg.code == cli::kOk);
  const auto pts = path_vertices(svg.out);
  REQUIRE(pts.size() > 100);
  // Four-fold symmetry of the drawn string, up to the pixel rounding of the SVG.
  const double a = 2 * std::numbers::pi / 4;
  double worst = 0;
  for (std::size_t i = 0; i < pts.size(); i += 7) {
    const std::array<double, 2> r{std::cos(a) * pts[i][0] - std::sin(a) * pts[i][1],
                                  std::sin(a) * pts[i][0] + std::cos(a) * pts[i][1]};
    double best = 1e300;
    for (const auto& q : pts) best = std::min(best, std::hypot(r[0] - q[0], r[1] - q[1]));
    worst = std::max(worst, best);
  }
  CHECK(worst <= 5e-3);
}

TEST_CASE("fiber CSV contains the exceptional row") {
  const auto r = run({"fiber", "--q", "11/10", "--samples", "32", "--format", "csv"});
  REQUIRE(r.code == cli::kOk);
  const auto ls = lines(r.out);
  CHECK(ls.front() == "lambda,e2,region");
  int rows = 0;
  for (const auto& l : ls) {
    if (l.size() < 2 || l.substr(l.size() - 2) != ",E") continue;
    ++rows;
    const auto first = l.find(','), second = l.find(',', first + 1);
    CHECK(std::abs(std::stod(l.substr(first + 1, second - first - 1)) - 1.71966) <= 5e-4);
  }
  CHECK(rows == 1);
  CHECK(run({"fiber", "--q", "1/1"}).code == cli::kNumericDomain);
}

TEST_CASE("signature and phase portrait") {
  const auto s = run({"signature", "--lambda", "-1.3", "--e2", "2.3", "--samples", "32", "--format", "csv"});
  REQUIRE(s.code == cli::kOk);
  CHECK(lines(s.out).size() == 33);
  const auto p = run({"phase-portrait", "--lambda", "-1.3", "--format", "svg"});
  REQUIRE(p.code == cli::kOk);
  CHECK(p.out.find("<svg") == 0);
  CHECK(run({"phase-portrait", "--lambda", "-0.5"}).code == cli::kNumericDomain);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"classify", "--lambda", "x"}).code == cli::kUsage);
  CHECK(run({"curve", "--lambda", "-1.3", "--e2", "2.3", "--samples", "8"}).code == cli::kUsage);
  CHECK(run({"find-string", "--lambda", "-1.2", "--q", "abc"}).code == cli::kUsage);
  CHECK(run({"find-string", "--lambda", "-1.2", "--q", "-3/2"}).code == cli::kUsage);
  CHECK(run({"curve", "--format", "png"}).code == cli::kUsage);
  CHECK(run({"--help"}).code == cli::kOk);
}

TEST_CASE("the installed binary honours the exit-code contract and is deterministic") {
  CHECK(spawn("classify --lambda -0.5 --e2 1.0").code == 2);
  CHECK(spawn("find-string --lambda -1.2 --q 6/5").code == 3);
  CHECK(spawn("curve --samples 8").code == 64);
  CHECK(spawn("").code == 64);
  CHECK(spawn("curve --lambda -0.5 --e2 1").code == 65);
  const auto a = spawn("find-string --lambda -0.95 --q 4/3");
  const auto b = spawn("find-string --lambda -0.95 --q 4/3");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto c = spawn("curve --lambda -1.3 --e2 2.3 --samples 64");
  CHECK(c.out == spawn("curve --lambda -1.3 --e2 2.3 --samples 64").out);
}

TEST_CASE("--out writes the file") {
  const auto path = std::filesystem::temp_directory_path() / "halfelastica_cli_test.json";
  std::filesystem::remove(path);
  const auto r = run({"classify", "--lambda", "-1.3", "--e2", "2.3", "--out", path.string()});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(nlohmann::json::parse(ss.str())["region"] == "Tminus");
  std::filesystem::remove(path);
}
