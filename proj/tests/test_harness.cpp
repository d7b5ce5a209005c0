#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "specpart/csvio.hpp"
#include "specpart/errors.hpp"
#include "specpart/harness.hpp"
#include "specpart/svg.hpp"
#include "specpart/theory.hpp"

using namespace specpart;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("sweep config") {
  SweepConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  // default grid covers 21 block sizes
  int count = 0;
  for (int n = cfg.n_min; n <= cfg.n_max; n += cfg.n_step) ++count;
  CHECK(count == 21);
  CHECK(cfg.a_frac == 0.06);
  CHECK(cfg.b_frac == 0.04);

  SweepConfig bad = cfg;
  bad.methods = {"nonsense"};
  CHECK_THROWS_AS(bad.validate(), ParamError);
  bad = cfg;
  bad.b_frac = 0.07;
  CHECK_THROWS_AS(bad.validate(), ParamError);
}

TEST_CASE("single-cell sweep emits exactly one algorithm row") {
  SweepConfig cfg;
  cfg.n_min = cfg.n_max = 120;
  cfg.reps = 1;
  cfg.methods = {"algorithm-simplified"};
  SweepOutcome out = run_sweep(cfg);
  CHECK(out.cell_failures.empty());
  int algo_rows = 0, diag_rows = 0;
  for (const auto& r : out.rows) {
    if (r.method == "algorithm-simplified") ++algo_rows;
    if (r.method == "graph-diagnostics") ++diag_rows;
  }
  CHECK(algo_rows == 1);
  CHECK(diag_rows == 1);
  // provenance on every row
  for (const auto& r : out.rows) {
    CHECK_FALSE(r.method.empty());
    CHECK(r.n == 120);
    CHECK(r.a == doctest::Approx(7.2));
    CHECK(r.b == doctest::Approx(4.8));
  }
}

TEST_CASE("sweeps are byte-identical for a fixed master seed") {
  SweepConfig cfg;
  cfg.n_min = 100;
  cfg.n_max = 125;
  cfg.n_step = 25;
  cfg.reps = 2;
  cfg.mc_reps = 3;
  cfg.master_seed = 31337;
  cfg.methods = {"algorithm-simplified", "quad", "chernoff-opt", "mc"};
  SweepOutcome o1 = run_sweep(cfg);
  SweepOutcome o2 = run_sweep(cfg);
  const std::string p1 = temp_path("specpart_sweep1.csv");
  const std::string p2 = temp_path("specpart_sweep2.csv");
  write_csv(o1.rows, p1);
  write_csv(o2.rows, p2);
  CHECK(slurp(p1) == slurp(p2));
  CHECK(o1.summary == o2.summary);
  std::filesystem::remove(p1);
  std::filesystem::remove(p2);
}

TEST_CASE("scale fit recovers an exact synthetic model") {
  // points generated exactly from sin theta = g(s0 * f(gamma))
  const double s0 = 0.5;
  auto f = [](double gamma) { return (2.0 - gamma) / 1.3; };
  std::vector<FitPoint> pts;
  for (double gamma : {0.05, 0.1, 0.2, 0.3, 0.45, 0.6})
    pts.push_back({scaled_sin_prediction(s0, f(gamma)), gamma});
  FitResult fit = fit_scale("synthetic", f, pts);
  CHECK(fit.constant == doctest::Approx(s0).epsilon(1e-6));
  CHECK(fit.rss <= 1e-12);
  CHECK(fit.point_count == 6);
  CHECK(r_squared(fit.rss, pts) == doctest::Approx(1.0).epsilon(1e-9));

  std::vector<FitPoint> one{{0.3, 0.1}};
  CHECK_THROWS_AS(fit_scale("synthetic", f, one), ParamError);
  std::vector<FitPoint> saturated{{0.3, 1.0}, {0.2, 1.5}};
  CHECK_THROWS_AS(fit_scale("synthetic", f, saturated), ParamError);

  // order invariance
  std::vector<FitPoint> shuffled{pts[3], pts[0], pts[5], pts[1], pts[4],
                                 pts[2]};
  FitResult fit2 = fit_scale("synthetic", f, shuffled);
  CHECK(fit2.constant == doctest::Approx(fit.constant).epsilon(1e-9));
}

TEST_CASE("log-quarter fit") {
  SUBCASE("exact synthetic recovery") {
    std::vector<FitPoint> pts;
    for (double g : {0.05, 0.1, 0.2, 0.3, 0.4})
      pts.push_back({0.7 * std::pow(std::log(2.0 / g), -0.25), g});
    FitResult fit = fit_log_quarter(pts);
    CHECK(fit.constant == doctest::Approx(0.7).epsilon(1e-9));
    CHECK(fit.point_count == 5);
  }
  SUBCASE("domain edges are excluded") {
    // gamma = 2 has a vanishing log, gamma <= 0 an undefined regressor
    std::vector<FitPoint> only_bad{{0.5, 2.0}, {0.4, 0.0}};
    CHECK_THROWS_AS(fit_log_quarter(only_bad), ParamError);
    std::vector<FitPoint> mixed{{0.5, 2.0}, {0.4, 0.2}, {0.45, 0.3}};
    FitResult fit = fit_log_quarter(mixed);
    CHECK(fit.point_count == 2);
  }
  SUBCASE("order invariance") {
    std::vector<FitPoint> pts{{0.3, 0.1}, {0.5, 0.3}, {0.45, 0.2}};
    auto a = fit_log_quarter(pts);
    std::vector<FitPoint> rev(pts.rbegin(), pts.rend());
    auto b = fit_log_quarter(rev);
    CHECK(a.constant == doctest::Approx(b.constant).epsilon(1e-12));
  }
}

TEST_CASE("csv round trip") {
  std::vector<CsvRow> rows;
  CsvRow r1{"mc", 500, 30.0, 20.0, 7, 0.125, 0.5, 0.8660254037844386,
            std::nan("")};
  CsvRow r2{"algorithm-simplified", 1000, 60.0, 40.0, 123456789012345ULL,
            0.03, 0.52, std::nan(""), 0.017};
  rows.push_back(r1);
  rows.push_back(r2);
  const std::string path = temp_path("specpart_rt.csv");
  write_csv(rows, path, {"comment line"});
  auto back = read_csv(path);
  REQUIRE(back.size() == 2);
  // identical after re-serialization
  const std::string path2 = temp_path("specpart_rt2.csv");
  write_csv(back, path2, {"comment line"});
  CHECK(slurp(path) == slurp(path2));
  CHECK(back[0].method == "mc");
  CHECK(back[0].k_or_seed == 7);
  CHECK(std::isnan(back[0].aux2));
  CHECK(back[1].k_or_seed == 123456789012345ULL);
  CHECK(back[1].sin_theta == doctest::Approx(0.52));
  std::filesystem::remove(path);
  std::filesystem::remove(path2);

  // 12 significant digits in the serialization
  CHECK(format_csv_double(0.8660254037844386) == "0.866025403784");
  CHECK(format_csv_double(std::nan("")) == "nan");

  const std::string bad = temp_path("specpart_bad.csv");
  {
    std::ofstream out(bad);
    out << "wrong,header\n";
  }
  CHECK_THROWS_AS(read_csv(bad), ParamError);
  std::filesystem::remove(bad);
}

TEST_CASE("svg rendering") {
  SUBCASE("empty series still yields a valid document with axes") {
    const std::string path = temp_path("specpart_empty.svg");
    render_svg({}, SvgAxes{}, path);
    const std::string body = slurp(path);
    CHECK(body.find("<svg") != std::string::npos);
    CHECK(body.find("</svg>") != std::string::npos);
    CHECK(body.find("sin theta") != std::string::npos);
    CHECK(body.find("gamma") != std::string::npos);
    std::filesystem::remove(path);
  }
  SUBCASE("scatter and line series render with legend and opacity") {
    SvgSeries scatter;
    scatter.label = "points";
    scatter.color = "#2ca02c";
    scatter.points = {{0.1, 0.2, 0.4}, {0.5, 0.4, 1.0}};
    SvgSeries line;
    line.label = "curve";
    line.color = "#9467bd";
    line.draw_line = true;
    line.dashed = true;
    line.points = {{0.0, 0.0}, {0.4, 0.3}, {0.9, 0.8}};
    const std::string path = temp_path("specpart_chart.svg");
    render_svg({scatter, line}, SvgAxes{}, path);
    const std::string body = slurp(path);
    CHECK(body.find("circle") != std::string::npos);
    CHECK(body.find("polyline") != std::string::npos);
    CHECK(body.find("stroke-dasharray") != std::string::npos);
    CHECK(body.find("points</text>") != std::string::npos);
    CHECK(body.find("curve</text>") != std::string::npos);
    CHECK(body.find("fill-opacity=\"0.4\"") != std::string::npos);
    std::filesystem::remove(path);
  }
}

TEST_CASE("frontier points map onto schema rows") {
  FrontierPoint p;
  p.method = Method::chernoff_opt;
  p.n = 500;
  p.a = 30;
  p.b = 20;
  p.k = 12;
  p.gamma = 0.024;
  p.sin_theta = 0.3;
  p.cos_theta = std::sqrt(1.0 - 0.09);
  CsvRow r = row_from_point(p);
  CHECK(r.method == "chernoff-opt");
  CHECK(r.k_or_seed == 12);
  CHECK(r.aux1 == doctest::Approx(p.cos_theta));
  CHECK(std::isnan(r.aux2));
}
