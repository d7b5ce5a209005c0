#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "specpart/csvio.hpp"
#include "specpart/errors.hpp"
#include "specpart/frontier.hpp"
#include "specpart/harness.hpp"
#include "specpart/metrics.hpp"
#include "specpart/partition.hpp"
#include "specpart/sbm.hpp"
#include "specpart/svg.hpp"
#include "specpart/theory.hpp"

namespace {

using namespace specpart;

constexpr int kExitOk = 0;
constexpr int kExitParam = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitPartial = 4;

struct GenerateArgs {
  int n = 500;
  double a_frac = 0.06;
  double b_frac = 0.04;
  std::uint64_t seed = 1;
  std::string out;
};

int run_generate(const GenerateArgs& args) {
  SbmParams params{args.n, args.a_frac * args.n, args.b_frac * args.n};
  PlantedGraph graph = sample_graph(params, args.seed);
  write_graph_csv(graph, args.out);
  std::printf("wrote %s: n=%d edges=%zu\n", args.out.c_str(), params.n,
              graph.adjacency.edge_count());
  return kExitOk;
}

struct PartitionArgs {
  std::string graph_path;
  std::string method = "simplified";
  std::uint64_t seed = 0;
  std::string out;
};

int run_partition(const PartitionArgs& args) {
  PlantedGraph graph = read_graph_csv(args.graph_path);
  const int n = graph.params.n;
  const double d = graph.params.degree_scale();
  std::vector<int> side1, side2;
  double lambda1 = 0, lambda2 = 0, sin_theta = std::nan("");
  std::size_t trimmed = 0;

  if (args.method == "simplified" || args.method == "original") {
    SymMatrix A = to_dense(graph.adjacency);
    PartitionResult p = args.method == "simplified"
                            ? spectral_partition_simplified(A, d)
                            : spectral_partition_original(A, d);
    side1 = p.side1;
    side2 = p.side2;
    lambda1 = p.diagnostics.lambda1;
    lambda2 = p.diagnostics.lambda2;
    trimmed = p.diagnostics.trimmed_vertices.size();
    sin_theta = sin_angle_vectors(truth_vector_u2(n), p.diagnostics.v2);
  } else if (args.method == "full") {
    FullPartitionTrace t = full_partition_trace(graph, args.seed);
    side1 = t.corrected.side1;
    side2 = t.corrected.side2;
    lambda1 = t.spectral.diagnostics.lambda1;
    lambda2 = t.spectral.diagnostics.lambda2;
    trimmed = t.spectral.diagnostics.trimmed_vertices.size();
    sin_theta = sin_angle_vectors(truth_vector_u2(n),
                                  t.spectral.diagnostics.v2);
  } else {
    throw ParamError("unknown method: " + args.method);
  }

  const double gamma = gamma_of(side1, side2, n);
  std::ofstream out(args.out, std::ios::binary);
  if (!out) throw ParamError("cannot open for writing: " + args.out);
  out << "# partition method=" << args.method << " n=" << n
      << " a=" << format_csv_double(graph.params.a)
      << " b=" << format_csv_double(graph.params.b) << " seed=" << args.seed
      << " gamma=" << format_csv_double(gamma)
      << " sin_theta=" << format_csv_double(sin_theta)
      << " lambda1=" << format_csv_double(lambda1)
      << " lambda2=" << format_csv_double(lambda2) << " trimmed=" << trimmed
      << "\n";
  out << "vertex,side\n";
  std::vector<int> side_of(2 * n, 2);
  for (int v : side1) side_of[v] = 1;
  for (int v = 0; v < 2 * n; ++v) out << v << "," << side_of[v] << "\n";
  std::printf("method=%s gamma=%s sin_theta=%s\n", args.method.c_str(),
              format_csv_double(gamma).c_str(),
              format_csv_double(sin_theta).c_str());
  return kExitOk;
}

struct CurvesArgs {
  std::string kind;
  int n = 500;
  double a_frac = 0.06;
  double b_frac = 0.04;
  int reps = 50;
  std::uint64_t seed = 0;
  int max_points = 200;
  std::string out;
};

int run_curves(const CurvesArgs& args) {
  const double a = args.a_frac * args.n;
  const double b = args.b_frac * args.n;
  const auto grid = default_k_grid(args.n, args.max_points);
  std::vector<CsvRow> rows;

  if (args.kind == "quad") {
    for (int k : grid) {
      CsvRow r{"quad", args.n, a, b, std::uint64_t(k), double(k) / args.n,
               std::sqrt(double(k) / args.n),
               std::sqrt(1.0 - double(k) / args.n), std::nan("")};
      rows.push_back(r);
    }
  } else if (args.kind == "chernoff-opt") {
    for (const auto& p : chernoff_frontier(args.n, a, b, grid))
      rows.push_back(row_from_point(p));
  } else if (args.kind == "chernoff-pred") {
    const auto cc = chernoff_constants(args.n, a, b);
    for (int k : grid) {
      const double gamma = double(k) / args.n;
      CsvRow r{"chernoff-pred", args.n, a, b, std::uint64_t(k), gamma,
               std::nan(""), chernoff_prediction(cc, gamma), std::nan("")};
      rows.push_back(r);
    }
  } else if (args.kind == "normal-pred") {
    for (int k : grid) {
      const double gamma = double(k) / args.n;
      CsvRow r{"normal-pred", args.n, a, b, std::uint64_t(k), gamma,
               std::nan(""), normal_prediction(args.n, gamma), std::nan("")};
      rows.push_back(r);
    }
  } else if (args.kind == "mc") {
    for (const auto& p : mc_frontier(args.n, a, b, args.reps, args.seed, grid))
      rows.push_back(row_from_point(p));
  } else {
    throw ParamError("unknown curve kind: " + args.kind);
  }
  write_csv(rows, args.out);
  std::printf("wrote %s: %zu rows\n", args.out.c_str(), rows.size());
  return kExitOk;
}

struct SweepArgs {
  std::string config_path;
  SweepConfig cfg;
  std::string methods_csv;
  std::string out_dir;
};

SweepConfig load_sweep_config(const SweepArgs& args) {
  SweepConfig cfg = args.cfg;
  if (!args.config_path.empty()) {
    std::ifstream in(args.config_path);
    if (!in) throw ParamError("cannot open config: " + args.config_path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ParamError("bad JSON config: " + std::string(e.what()));
    }
    cfg.n_min = j.value("n_min", cfg.n_min);
    cfg.n_max = j.value("n_max", cfg.n_max);
    cfg.n_step = j.value("n_step", cfg.n_step);
    cfg.a_frac = j.value("a_frac", cfg.a_frac);
    cfg.b_frac = j.value("b_frac", cfg.b_frac);
    cfg.reps = j.value("reps", cfg.reps);
    cfg.master_seed = j.value("master_seed", cfg.master_seed);
    cfg.mc_reps = j.value("mc_reps", cfg.mc_reps);
    cfg.k_max_points = j.value("k_max_points", cfg.k_max_points);
    if (j.contains("methods"))
      cfg.methods = j["methods"].get<std::vector<std::string>>();
  }
  if (!args.methods_csv.empty()) {
    cfg.methods.clear();
    std::string cur;
    for (char c : args.methods_csv + ",") {
      if (c == ',') {
        if (!cur.empty()) cfg.methods.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
  }
  return cfg;
}

int run_sweep_cmd(const SweepArgs& args) {
  SweepConfig cfg = load_sweep_config(args);
  SweepOutcome outcome = run_sweep(cfg);
  std::filesystem::create_directories(args.out_dir);
  write_csv(outcome.rows, args.out_dir + "/sweep.csv");
  {
    std::ofstream s(args.out_dir + "/summary.txt", std::ios::binary);
    s << outcome.summary;
  }
  std::fputs(outcome.summary.c_str(), stdout);
  if (!outcome.cell_failures.empty()) {
    for (const auto& f : outcome.cell_failures)
      std::fprintf(stderr, "cell failure: %s\n", f.c_str());
    return kExitPartial;
  }
  return kExitOk;
}

struct FitArgs {
  std::string model;
  std::string data_path;
  std::string pred_path;
  std::string method_filter;
  bool median = false;
  std::string out;
};

std::vector<FitPoint> collapse_median(const std::vector<CsvRow>& rows) {
  std::map<double, std::vector<double>> by_gamma;
  for (const auto& r : rows)
    if (std::isfinite(r.sin_theta) && std::isfinite(r.gamma))
      by_gamma[r.gamma].push_back(r.sin_theta);
  std::vector<FitPoint> pts;
  for (auto& [g, v] : by_gamma) {
    std::sort(v.begin(), v.end());
    pts.push_back({v[v.size() / 2], g});
  }
  return pts;
}

int run_fit(const FitArgs& args) {
  auto data = read_csv(args.data_path);
  if (!args.method_filter.empty()) {
    std::erase_if(data, [&](const CsvRow& r) {
      return r.method.rfind(args.method_filter, 0) != 0;
    });
  }
  if (data.empty()) throw ParamError("no data rows in " + args.data_path);
  std::vector<FitPoint> pts;
  if (args.median) {
    pts = collapse_median(data);
  } else {
    for (const auto& r : data)
      if (std::isfinite(r.sin_theta) && std::isfinite(r.gamma))
        pts.push_back({r.sin_theta, r.gamma});
  }

  std::vector<CsvRow> out_rows;
  FitResult fit;
  if (args.model == "logquarter") {
    fit = fit_log_quarter(pts);
    double gmin = 1e300, gmax = 0;
    for (const auto& p : pts)
      if (p.gamma > 0 && p.gamma < 2) {
        gmin = std::min(gmin, p.gamma);
        gmax = std::max(gmax, p.gamma);
      }
    for (int i = 0; i <= 200; ++i) {
      const double g = gmin + (gmax - gmin) * i / 200.0;
      CsvRow r{"logquarter-fit", data.front().n, data.front().a,
               data.front().b, std::uint64_t(i), g,
               fit.constant * std::pow(std::log(2.0 / g), -0.25),
               std::nan(""), std::nan("")};
      out_rows.push_back(r);
    }
  } else if (args.model.rfind("scale:", 0) == 0) {
    const std::string kind = args.model.substr(6);
    const int n = data.front().n;
    const double a = data.front().a;
    const double b = data.front().b;
    std::function<double(double)> raw;
    if (!args.pred_path.empty()) {
      auto pred_rows = read_csv(args.pred_path);
      auto table = std::make_shared<std::map<double, double>>();
      for (const auto& r : pred_rows)
        if (std::isfinite(r.aux1)) (*table)[r.gamma] = r.aux1;
      if (table->empty())
        throw ParamError("no usable prediction rows in " + args.pred_path);
      raw = [table](double gamma) {
        auto it = table->lower_bound(gamma - 1e-9);
        if (it == table->end() || std::abs(it->first - gamma) > 1e-9)
          throw ParamError("prediction grid does not cover a data gamma");
        return it->second;
      };
    } else if (kind == "chernoff-pred") {
      auto cc =
          std::make_shared<ChernoffConstants>(chernoff_constants(n, a, b));
      raw = [cc](double gamma) { return chernoff_prediction(*cc, gamma); };
    } else if (kind == "normal-pred") {
      raw = [n](double gamma) { return normal_prediction(n, gamma); };
    } else {
      throw ParamError("unknown scale-fit kind: " + kind);
    }
    fit = fit_scale(kind, raw, pts);
    for (const auto& p : pts) {
      if (!(p.gamma < 1.0)) continue;
      const double f = raw(p.gamma);
      CsvRow r{kind, n, a, b, 0, p.gamma,
               scaled_sin_prediction(fit.constant, f),
               std::min(fit.constant * f, 1.0), std::nan("")};
      out_rows.push_back(r);
    }
  } else {
    throw ParamError("unknown fit model: " + args.model);
  }

  const double r2 = r_squared(fit.rss, pts);
  std::vector<std::string> comments = {
      "fit model=" + fit.model + " constant=" +
      format_csv_double(fit.constant) + " rss=" + format_csv_double(fit.rss) +
      " r2=" + format_csv_double(r2) + " points=" +
      std::to_string(fit.point_count)};
  write_csv(out_rows, args.out, comments);
  std::printf("%s\n", comments.front().c_str());
  return kExitOk;
}

struct PlotArgs {
  std::vector<std::string> data_paths;
  std::string out;
  std::string opacity_by;
  std::string title;
};

int run_plot(const PlotArgs& args) {
  std::vector<CsvRow> rows;
  for (const auto& p : args.data_paths) {
    auto r = read_csv(p);
    rows.insert(rows.end(), r.begin(), r.end());
  }

  int n_min = 0, n_max = 0;
  if (args.opacity_by == "n") {
    n_min = n_max = rows.empty() ? 0 : rows.front().n;
    for (const auto& r : rows) {
      n_min = std::min(n_min, r.n);
      n_max = std::max(n_max, r.n);
    }
  } else if (!args.opacity_by.empty()) {
    throw ParamError("--opacity-by supports only 'n'");
  }
  auto opacity_of = [&](const CsvRow& r) {
    if (args.opacity_by != "n" || n_max == n_min) return 1.0;
    return 0.25 + 0.75 * double(r.n - n_min) / double(n_max - n_min);
  };

  struct Style {
    std::string color;
    bool line;
    bool dashed;
  };
  const std::map<std::string, Style> styles = {
      {"quad", {"#d62728", false, false}},
      {"chernoff-opt", {"#1f77b4", false, false}},
      {"chernoff-pred", {"#1f77b4", true, false}},
      {"mc", {"#2ca02c", false, false}},
      {"normal-pred", {"#2ca02c", true, true}},
      {"algorithm-simplified", {"#ff7f0e", false, false}},
      {"algorithm-original", {"#e377c2", false, false}},
      {"algorithm-full", {"#8c564b", false, false}},
      {"logquarter-fit", {"#9467bd", true, false}},
  };

  std::map<std::string, SvgSeries> series_by_method;
  for (const auto& r : rows) {
    if (!std::isfinite(r.sin_theta) || !std::isfinite(r.gamma)) continue;
    auto& s = series_by_method[r.method];
    if (s.points.empty()) {
      s.label = r.method;
      auto it = styles.find(r.method);
      if (it != styles.end()) {
        s.color = it->second.color;
        s.draw_line = it->second.line;
        s.dashed = it->second.dashed;
      }
    }
    s.points.push_back({r.sin_theta, r.gamma, opacity_of(r)});
  }

  std::vector<SvgSeries> series;
  for (auto& [name, s] : series_by_method) {
    if (s.draw_line)
      std::sort(s.points.begin(), s.points.end(),
                [](const SvgPoint& x, const SvgPoint& y) { return x.x < y.x; });
    series.push_back(std::move(s));
  }
  SvgAxes axes;
  axes.title = args.title;
  render_svg(series, axes, args.out);
  std::printf("wrote %s: %zu series\n", args.out.c_str(), series.size());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-community planted-partition spectral toolkit"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* cmd_gen = app.add_subcommand("generate", "Sample a planted graph");
  cmd_gen->add_option("--n", gen.n, "block size")->required();
  cmd_gen->add_option("--a-frac", gen.a_frac, "a = a_frac * n");
  cmd_gen->add_option("--b-frac", gen.b_frac, "b = b_frac * n");
  cmd_gen->add_option("--seed", gen.seed, "graph seed");
  cmd_gen->add_option("--out", gen.out, "output graph CSV")->required();

  PartitionArgs part;
  auto* cmd_part = app.add_subcommand("partition", "Partition a graph file");
  cmd_part->add_option("--graph", part.graph_path, "graph CSV")->required();
  cmd_part->add_option("--method", part.method, "simplified|original|full");
  cmd_part->add_option("--seed", part.seed, "coloring seed (full method)");
  cmd_part->add_option("--out", part.out, "output partition file")->required();

  CurvesArgs curves;
  auto* cmd_curves = app.add_subcommand("curves", "Emit a frontier/curve CSV");
  cmd_curves
      ->add_option("--kind", curves.kind,
                   "quad|chernoff-opt|chernoff-pred|mc|normal-pred")
      ->required();
  cmd_curves->add_option("--n", curves.n, "block size")->required();
  cmd_curves->add_option("--a-frac", curves.a_frac, "a = a_frac * n");
  cmd_curves->add_option("--b-frac", curves.b_frac, "b = b_frac * n");
  cmd_curves->add_option("--reps", curves.reps, "Monte Carlo repetitions");
  cmd_curves->add_option("--seed", curves.seed, "Monte Carlo master seed");
  cmd_curves->add_option("--max-points", curves.max_points,
                         "k-grid subsampling cap");
  cmd_curves->add_option("--out", curves.out, "output CSV")->required();

  SweepArgs sweep;
  auto* cmd_sweep = app.add_subcommand("sweep", "Run the experiment sweep");
  cmd_sweep->add_option("--config", sweep.config_path, "JSON config file");
  cmd_sweep->add_option("--n-min", sweep.cfg.n_min, "smallest block size");
  cmd_sweep->add_option("--n-max", sweep.cfg.n_max, "largest block size");
  cmd_sweep->add_option("--n-step", sweep.cfg.n_step, "block size step");
  cmd_sweep->add_option("--a-frac", sweep.cfg.a_frac, "a = a_frac * n");
  cmd_sweep->add_option("--b-frac", sweep.cfg.b_frac, "b = b_frac * n");
  cmd_sweep->add_option("--reps", sweep.cfg.reps, "graphs per n");
  cmd_sweep->add_option("--seed", sweep.cfg.master_seed, "master seed");
  cmd_sweep->add_option("--mc-reps", sweep.cfg.mc_reps,
                        "Monte Carlo band repetitions per n");
  cmd_sweep->add_option("--methods", sweep.methods_csv,
                        "comma-separated method list");
  cmd_sweep->add_option("--out", sweep.out_dir, "output directory")
      ->required();

  FitArgs fit;
  auto* cmd_fit = app.add_subcommand("fit", "Fit a prediction to points");
  cmd_fit
      ->add_option("--model", fit.model,
                   "scale:chernoff-pred|scale:normal-pred|logquarter")
      ->required();
  cmd_fit->add_option("--data", fit.data_path, "points CSV")->required();
  cmd_fit->add_option("--pred", fit.pred_path, "raw prediction CSV");
  cmd_fit->add_option("--method", fit.method_filter,
                      "use only rows whose method starts with this prefix");
  cmd_fit->add_flag("--median", fit.median,
                    "collapse data to per-gamma medians first");
  cmd_fit->add_option("--out", fit.out, "fitted curve CSV")->required();

  PlotArgs plot;
  auto* cmd_plot = app.add_subcommand("plot", "Render CSVs as an SVG chart");
  cmd_plot->add_option("--data", plot.data_paths, "input CSV files")
      ->required()
      ->expected(-1);
  cmd_plot->add_option("--out", plot.out, "output SVG path")->required();
  cmd_plot->add_option("--opacity-by", plot.opacity_by,
                       "per-point opacity channel (n)");
  cmd_plot->add_option("--title", plot.title, "chart title");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParam;
  }

  try {
    if (cmd_gen->parsed()) return run_generate(gen);
    if (cmd_part->parsed()) return run_partition(part);
    if (cmd_curves->parsed()) return run_curves(curves);
    if (cmd_sweep->parsed()) return run_sweep_cmd(sweep);
    if (cmd_fit->parsed()) return run_fit(fit);
    if (cmd_plot->parsed()) return run_plot(plot);
  } catch (const ParamError& e) {
    std::fprintf(stderr, "parameter error: %s\n", e.what());
    return kExitParam;
  } catch (const ContractError& e) {
    std::fprintf(stderr, "contract error: %s\n", e.what());
    return kExitParam;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  }
  return kExitOk;
}
