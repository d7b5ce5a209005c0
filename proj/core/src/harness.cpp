#include "specpart/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "specpart/errors.hpp"
#include "specpart/metrics.hpp"
#include "specpart/partition.hpp"
#include "specpart/rng.hpp"

namespace specpart {

namespace {

const std::vector<std::string> kAllMethods = {
    "algorithm-simplified", "algorithm-original", "algorithm-full",
    "quad",                 "chernoff-opt",       "chernoff-pred",
    "mc",                   "normal-pred"};

constexpr std::uint64_t kGraphTag = 0x5eedULL;

double nan_value() { return std::numeric_limits<double>::quiet_NaN(); }

double cos_between(std::span<const double> u, std::span<const double> v) {
  return std::abs(dot(u, v)) / (norm2(u) * norm2(v));
}

}  // namespace

void SweepConfig::validate() const {
  if (n_min <= 0 || n_max < n_min || n_step <= 0)
    throw ParamError("sweep needs 0 < n_min <= n_max and a positive step");
  if (!(0.0 < b_frac && b_frac < a_frac && a_frac < 1.0))
    throw ParamError("sweep needs 0 < b_frac < a_frac < 1");
  if (reps < 1) throw ParamError("reps must be at least 1");
  if (mc_reps < 1) throw ParamError("mc_reps must be at least 1");
  for (const auto& m : methods)
    if (std::find(kAllMethods.begin(), kAllMethods.end(), m) ==
        kAllMethods.end())
      throw ParamError("unknown sweep method: " + m);
}

std::vector<std::string> SweepConfig::resolved_methods() const {
  if (methods.empty()) return kAllMethods;
  // canonical order regardless of how the request was spelled
  std::vector<std::string> out;
  for (const auto& m : kAllMethods)
    if (std::find(methods.begin(), methods.end(), m) != methods.end())
      out.push_back(m);
  return out;
}

SweepOutcome run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  const auto methods = cfg.resolved_methods();
  auto wants = [&](const std::string& m) {
    return std::find(methods.begin(), methods.end(), m) != methods.end();
  };
  const bool any_algorithm = wants("algorithm-simplified") ||
                             wants("algorithm-original") ||
                             wants("algorithm-full");

  SweepOutcome outcome;
  struct PerN {
    int n = 0;
    std::vector<double> gammas_simplified;
    std::vector<double> sins_simplified;
    std::vector<double> noise_ratios;
    std::vector<double> surrogate_scaled;
  };
  std::vector<PerN> stats;
  std::vector<FitPoint> algo_points;

  for (int n = cfg.n_min; n <= cfg.n_max; n += cfg.n_step) {
    SbmParams params{n, cfg.a_frac * n, cfg.b_frac * n};
    PerN per{n, {}, {}, {}, {}};
    const auto u1 = truth_vector_u1(n);
    const auto u2 = truth_vector_u2(n);

    for (int rep = 0; rep < cfg.reps && any_algorithm; ++rep) {
      const std::uint64_t cell_seed =
          derive_seed(cfg.master_seed, std::uint64_t(n), std::uint64_t(rep),
                      kGraphTag);
      try {
        PlantedGraph graph = sample_graph(params, cell_seed);
        SymMatrix A = to_dense(graph.adjacency);

        auto pairs = top_k_eigenpairs(A, 2, 1e-10);
        Subspace w{{pairs[0].vector, pairs[1].vector}};
        Subspace we{{u1, u2}};
        const double sin_ww = sin_angle_subspaces(w, we);
        const double noise_ratio =
            noise_norm(graph) / std::sqrt(params.degree_scale());
        const double surrogate = surrogate_error_from(A, n, pairs[1].vector);

        auto emit_algorithm = [&](const std::string& name,
                                  const std::vector<int>& side1,
                                  const std::vector<int>& side2,
                                  const std::vector<double>& v2) {
          CsvRow r;
          r.method = name;
          r.n = n;
          r.a = params.a;
          r.b = params.b;
          r.k_or_seed = cell_seed;
          r.gamma = gamma_of(side1, side2, n);
          r.sin_theta = sin_angle_vectors(u2, v2);
          r.aux1 = cos_between(u2, v2);
          r.aux2 = nan_value();
          outcome.rows.push_back(r);
          if (name == "algorithm-simplified") {
            per.gammas_simplified.push_back(r.gamma);
            per.sins_simplified.push_back(r.sin_theta);
          }
          algo_points.push_back({r.sin_theta, r.gamma});
        };

        if (wants("algorithm-simplified")) {
          PartitionResult p =
              spectral_partition_simplified(A, params.degree_scale());
          emit_algorithm("algorithm-simplified", p.side1, p.side2,
                         p.diagnostics.v2);
        }
        if (wants("algorithm-original")) {
          PartitionResult p =
              spectral_partition_original(A, params.degree_scale());
          emit_algorithm("algorithm-original", p.side1, p.side2,
                         p.diagnostics.v2);
        }
        if (wants("algorithm-full")) {
          FullPartitionTrace t = full_partition_trace(graph, cell_seed);
          emit_algorithm("algorithm-full", t.corrected.side1,
                         t.corrected.side2, t.spectral.diagnostics.v2);
        }

        CsvRow d;
        d.method = "graph-diagnostics";
        d.n = n;
        d.a = params.a;
        d.b = params.b;
        d.k_or_seed = cell_seed;
        d.gamma = nan_value();
        d.sin_theta = sin_ww;
        d.aux1 = noise_ratio;
        d.aux2 = surrogate;
        outcome.rows.push_back(d);
        per.noise_ratios.push_back(noise_ratio);
        per.surrogate_scaled.push_back(std::sqrt(double(n)) * surrogate);
      } catch (const std::exception& e) {
        outcome.cell_failures.push_back("n=" + std::to_string(n) + " rep=" +
                                        std::to_string(rep) + ": " + e.what());
      }
    }

    try {
      const auto grid = default_k_grid(n, cfg.k_max_points);
      if (wants("quad")) {
        for (int k : grid) {
          CsvRow r;
          r.method = "quad";
          r.n = n;
          r.a = params.a;
          r.b = params.b;
          r.k_or_seed = std::uint64_t(k);
          r.gamma = double(k) / n;
          r.sin_theta = std::sqrt(r.gamma);
          r.aux1 = std::sqrt(1.0 - r.gamma);
          r.aux2 = nan_value();
          outcome.rows.push_back(r);
        }
      }
      if (wants("chernoff-opt")) {
        for (const auto& p : chernoff_frontier(n, params.a, params.b, grid))
          outcome.rows.push_back(row_from_point(p));
      }
      if (wants("chernoff-pred")) {
        const auto constants = chernoff_constants(n, params.a, params.b);
        for (int k : grid) {
          CsvRow r;
          r.method = "chernoff-pred";
          r.n = n;
          r.a = params.a;
          r.b = params.b;
          r.k_or_seed = std::uint64_t(k);
          r.gamma = double(k) / n;
          r.sin_theta = nan_value();  // raw, unnormalized: scale comes from a fit
          r.aux1 = chernoff_prediction(constants, r.gamma);
          r.aux2 = nan_value();
          outcome.rows.push_back(r);
        }
      }
      if (wants("mc")) {
        for (const auto& p :
             mc_frontier(n, params.a, params.b, cfg.mc_reps, cfg.master_seed,
                         grid))
          outcome.rows.push_back(row_from_point(p));
      }
      if (wants("normal-pred")) {
        for (int k : grid) {
          CsvRow r;
          r.method = "normal-pred";
          r.n = n;
          r.a = params.a;
          r.b = params.b;
          r.k_or_seed = std::uint64_t(k);
          r.gamma = double(k) / n;
          r.sin_theta = nan_value();
          r.aux1 = normal_prediction(n, r.gamma);
          r.aux2 = nan_value();
          outcome.rows.push_back(r);
        }
      }
    } catch (const std::exception& e) {
      outcome.cell_failures.push_back("n=" + std::to_string(n) +
                                      " curves: " + e.what());
    }

    stats.push_back(std::move(per));
  }

  std::ostringstream summary;
  summary << "sweep n=[" << cfg.n_min << ".." << cfg.n_max << " step "
          << cfg.n_step << "] a_frac=" << format_csv_double(cfg.a_frac)
          << " b_frac=" << format_csv_double(cfg.b_frac)
          << " reps=" << cfg.reps << " seed=" << cfg.master_seed << "\n";
  auto mean = [](const std::vector<double>& v) {
    if (v.empty()) return nan_value();
    double s = 0.0;
    for (double x : v) s += x;
    return s / double(v.size());
  };
  for (const auto& per : stats) {
    summary << "n=" << per.n
            << " mean_gamma=" << format_csv_double(mean(per.gammas_simplified))
            << " mean_sin_theta="
            << format_csv_double(mean(per.sins_simplified))
            << " mean_noise_ratio=" << format_csv_double(mean(per.noise_ratios))
            << " mean_sqrtn_surrogate="
            << format_csv_double(mean(per.surrogate_scaled)) << "\n";
  }
  if (!algo_points.empty()) {
    try {
      FitResult fit = fit_log_quarter(algo_points);
      summary << "fit model=" << fit.model
              << " C=" << format_csv_double(fit.constant)
              << " rss=" << format_csv_double(fit.rss)
              << " r2=" << format_csv_double(r_squared(fit.rss, algo_points))
              << " points=" << fit.point_count << "\n";
    } catch (const std::exception& e) {
      summary << "fit model=logquarter failed: " << e.what() << "\n";
    }
  }
  if (!outcome.cell_failures.empty()) {
    summary << "failures=" << outcome.cell_failures.size() << "\n";
    for (const auto& f : outcome.cell_failures) summary << "  " << f << "\n";
  }
  outcome.summary = summary.str();
  return outcome;
}

double scaled_sin_prediction(double s, double raw_prediction) {
  const double c = std::min(s * raw_prediction, 1.0);
  return std::sqrt(std::max(0.0, 1.0 - c * c));
}

FitResult fit_scale(const std::string& model_tag,
                    const std::function<double(double)>& raw_prediction,
                    const std::vector<FitPoint>& points) {
  std::vector<FitPoint> usable;
  std::vector<double> raw;
  double max_raw = 0.0;
  for (const auto& p : points) {
    if (!(p.gamma < 1.0) || !std::isfinite(p.sin_theta)) continue;
    const double f = raw_prediction(p.gamma);
    if (!std::isfinite(f) || f <= 0.0) continue;
    usable.push_back(p);
    raw.push_back(f);
    max_raw = std::max(max_raw, f);
  }
  if (usable.size() < 2)
    throw ParamError("scale fit needs at least two usable points");

  const double s_max = 1.0 / max_raw;
  auto rss_at = [&](double s) {
    double rss = 0.0;
    for (std::size_t j = 0; j < usable.size(); ++j) {
      const double d = usable[j].sin_theta - scaled_sin_prediction(s, raw[j]);
      rss += d * d;
    }
    return rss;
  };

  // golden-section search on (0, s_max]
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 1e-12 * s_max, hi = s_max;
  double m1 = hi - gr * (hi - lo);
  double m2 = lo + gr * (hi - lo);
  double f1 = rss_at(m1), f2 = rss_at(m2);
  for (int it = 0; it < 200; ++it) {
    if (f1 <= f2) {
      hi = m2;
      m2 = m1;
      f2 = f1;
      m1 = hi - gr * (hi - lo);
      f1 = rss_at(m1);
    } else {
      lo = m1;
      m1 = m2;
      f1 = f2;
      m2 = lo + gr * (hi - lo);
      f2 = rss_at(m2);
    }
  }
  const double s = 0.5 * (lo + hi);

  FitResult out;
  out.model = "scale:" + model_tag;
  out.constant = s;
  out.rss = rss_at(s);
  out.point_count = int(usable.size());
  return out;
}

FitResult fit_log_quarter(const std::vector<FitPoint>& points) {
  double zz = 0.0, zs = 0.0;
  int count = 0;
  std::vector<std::pair<double, double>> zsin;
  for (const auto& p : points) {
    if (!(p.gamma > 0.0) || !(p.gamma < 2.0) || !std::isfinite(p.sin_theta))
      continue;
    const double z = std::pow(std::log(2.0 / p.gamma), -0.25);
    if (!std::isfinite(z)) continue;
    zz += z * z;
    zs += z * p.sin_theta;
    zsin.push_back({z, p.sin_theta});
    ++count;
  }
  if (count < 2)
    throw ParamError("log-quarter fit needs at least two usable points");

  FitResult out;
  out.model = "logquarter";
  out.constant = zs / zz;
  double rss = 0.0;
  for (const auto& [z, s] : zsin) {
    const double d = s - out.constant * z;
    rss += d * d;
  }
  out.rss = rss;
  out.point_count = count;
  return out;
}

double r_squared(double rss, const std::vector<FitPoint>& points) {
  double mean = 0.0;
  int count = 0;
  for (const auto& p : points) {
    if (!std::isfinite(p.sin_theta)) continue;
    mean += p.sin_theta;
    ++count;
  }
  if (count == 0) return std::numeric_limits<double>::quiet_NaN();
  mean /= count;
  double tss = 0.0;
  for (const auto& p : points) {
    if (!std::isfinite(p.sin_theta)) continue;
    tss += (p.sin_theta - mean) * (p.sin_theta - mean);
  }
  if (tss == 0.0) return rss == 0.0 ? 1.0 : 0.0;
  return 1.0 - rss / tss;
}

}  // namespace specpart
