#include "tvp/commands.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "tvp/cholesky_mv.hpp"
#include "tvp/csv.hpp"
#include "tvp/diagnostics.hpp"
#include "tvp/forecast.hpp"
#include "tvp/model.hpp"
#include "tvp/sampler.hpp"
#include "tvp/thread_pool.hpp"

namespace tvp {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

PriorVariant variant_from_string(const std::string& s) {
  if (s == "double_gamma") return PriorVariant::DoubleGamma;
  if (s == "lasso" || s == "bayesian_lasso") return PriorVariant::BayesianLasso;
  if (s == "inverted_gamma") return PriorVariant::InvertedGamma;
  throw std::runtime_error("config: unknown prior.variant '" + s +
                           "' (double_gamma | lasso | inverted_gamma)");
}

std::string variant_to_string(PriorVariant v) {
  switch (v) {
    case PriorVariant::DoubleGamma: return "double_gamma";
    case PriorVariant::BayesianLasso: return "lasso";
    default: return "inverted_gamma";
  }
}

PriorConfig prior_from_config(const Config& cfg) {
  PriorConfig p;
  p.variant = variant_from_string(cfg.get_or("prior.variant", std::string("double_gamma")));
  p.d1 = cfg.get_or("prior.d1", p.d1);
  p.d2 = cfg.get_or("prior.d2", p.d2);
  p.e1 = cfg.get_or("prior.e1", p.e1);
  p.e2 = cfg.get_or("prior.e2", p.e2);
  p.b_xi = cfg.get_or("prior.b_xi", p.b_xi);
  p.b_tau = cfg.get_or("prior.b_tau", p.b_tau);
  if (cfg.has("prior.fixed_a_xi")) p.fixed_a_xi = cfg.get_double("prior.fixed_a_xi");
  if (cfg.has("prior.fixed_a_tau")) p.fixed_a_tau = cfg.get_double("prior.fixed_a_tau");
  p.s0 = cfg.get_or("prior.s0", p.s0);
  p.S0 = cfg.get_or("prior.S0", p.S0);
  p.A0_beta = cfg.get_or("prior.A0_beta", p.A0_beta);
  p.nu_P = cfg.get_or("prior.nu_P", p.nu_P);
  p.c_P = cfg.get_or("prior.c_P", p.c_P);
  p.c0 = cfg.get_or("prior.c0", p.c0);
  p.g0 = cfg.get_or("prior.g0", p.g0);
  p.sigma2_guess = cfg.get_or("prior.sigma2_guess", p.sigma2_guess);
  if (cfg.has("prior.G0")) p.G0 = cfg.get_double("prior.G0");
  p.sv = cfg.get_or("model.sv", false);
  p.sv_prior.b_mu = cfg.get_or("prior.sv_b_mu", p.sv_prior.b_mu);
  p.sv_prior.B_mu = cfg.get_or("prior.sv_B_mu", p.sv_prior.B_mu);
  p.sv_prior.a0 = cfg.get_or("prior.sv_a0", p.sv_prior.a0);
  p.sv_prior.b0 = cfg.get_or("prior.sv_b0", p.sv_prior.b0);
  p.sv_prior.B_sigma = cfg.get_or("prior.sv_B_sigma", p.sv_prior.B_sigma);
  p.validate();
  return p;
}

SamplerSettings settings_from_config(const Config& cfg) {
  SamplerSettings s;
  s.n_burnin = cfg.get_or("sampler.n_burnin", s.n_burnin);
  s.n_draws = cfg.get_or("sampler.n_draws", s.n_draws);
  s.thin = cfg.get_or("sampler.thin", s.thin);
  s.c_tau = cfg.get_or("sampler.c_tau", s.c_tau);
  s.c_xi = cfg.get_or("sampler.c_xi", s.c_xi);
  s.sqrt_theta_floor = cfg.get_or("sampler.sqrt_theta_floor", s.sqrt_theta_floor);
  s.adapt_mh = cfg.get_or("sampler.adapt_mh", s.adapt_mh);
  s.interweave = cfg.get_or("sampler.interweave", s.interweave);
  s.store_paths = cfg.get_or("sampler.store_paths", true);
  s.validate();
  return s;
}

json config_echo(const Config& cfg) {
  json echo = json::object();
  for (const auto& [key, value] : cfg.entries()) {
    std::visit([&](const auto& v) { echo[key] = v; }, value);
  }
  return echo;
}

struct LoadedData {
  Dataset data;                      // univariate path
  Eigen::MatrixXd Y;                 // multivariate path
  std::vector<std::string> x_names;  // regressor names (univariate)
  std::vector<std::string> y_names;  // outcome names (multivariate)
  std::string y_name;
  Eigen::VectorXd means, sds;
  std::optional<int> intercept_col;
  bool multivariate = false;
};

bool is_time_header(const std::string& name) {
  std::string low;
  for (char c : name) low.push_back(static_cast<char>(std::tolower(c)));
  return low == "t" || low == "time" || low == "date" || low == "index";
}

LoadedData load_data(const Config& cfg, const fs::path& path) {
  const CsvTable table = read_csv(path);
  int first_col = 0;
  if (!table.header.empty() && is_time_header(table.header.front())) first_col = 1;

  LoadedData out;
  out.multivariate = cfg.get_or("model.multivariate", false);
  const int ncol = static_cast<int>(table.header.size()) - first_col;
  if (ncol < 1) throw std::runtime_error("load_data: no data columns after the time index");

  if (out.multivariate) {
    out.Y = table.values.middleCols(first_col, ncol);
    for (int j = 0; j < ncol; ++j) out.y_names.push_back(table.header[first_col + j]);
    return out;
  }

  const std::string want_y = cfg.get_or("data.y_column", table.header[first_col]);
  int y_idx = -1;
  for (int j = first_col; j < static_cast<int>(table.header.size()); ++j)
    if (table.header[j] == want_y) y_idx = j;
  if (y_idx < 0) throw std::runtime_error("load_data: outcome column '" + want_y + "' not found");
  out.y_name = want_y;

  std::vector<int> x_idx;
  for (int j = first_col; j < static_cast<int>(table.header.size()); ++j)
    if (j != y_idx) x_idx.push_back(j);

  const int T = static_cast<int>(table.values.rows());
  // detect an existing all-ones intercept column
  std::optional<int> existing_intercept;
  for (std::size_t k = 0; k < x_idx.size(); ++k)
    if ((table.values.col(x_idx[k]).array() == 1.0).all()) {
      existing_intercept = static_cast<int>(k);
      break;
    }
  const bool add_intercept = cfg.get_or("data.intercept", true) && !existing_intercept;

  const int d = static_cast<int>(x_idx.size()) + (add_intercept ? 1 : 0);
  Eigen::MatrixXd X(T, d);
  int col = 0;
  if (add_intercept) {
    X.col(0).setOnes();
    out.x_names.push_back("intercept");
    out.intercept_col = 0;
    col = 1;
  } else if (existing_intercept) {
    out.intercept_col = *existing_intercept;
  }
  for (std::size_t k = 0; k < x_idx.size(); ++k, ++col) {
    X.col(col) = table.values.col(x_idx[k]);
    out.x_names.push_back(table.header[x_idx[k]]);
  }

  out.means = Eigen::VectorXd::Zero(d);
  out.sds = Eigen::VectorXd::Ones(d);
  if (cfg.get_or("data.standardize", true)) {
    Standardized st = standardize_covariates(X, out.intercept_col);
    X = st.X;
    out.means = st.means;
    out.sds = st.sds;
  }
  out.data = Dataset{table.values.col(y_idx), X, std::nullopt};
  out.data.validate();
  return out;
}

void write_run_json(const fs::path& out_dir, const std::string& command, const Config& cfg,
                    std::uint64_t seed, int threads, const json& extra) {
  json meta;
  meta["command"] = command;
  meta["seed"] = seed;
  meta["threads"] = threads;
  meta["config"] = config_echo(cfg);
  for (const auto& [k, v] : extra.items()) meta[k] = v;
  std::ofstream f(out_dir / "run.json");
  f << meta.dump(2) << "\n";
}

// Summary table (one row per scalar series) with inefficiency factors.
void write_summary(const fs::path& path, const DrawStore& draws) {
  const std::vector<std::string> header = {"parameter", "mean",   "sd",     "median",
                                           "q025",      "q975",   "ifactor", "if_infinite"};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_summary: cannot open " + path.string());
  for (std::size_t j = 0; j < header.size(); ++j) out << (j ? "," : "") << header[j];
  out << "\n";
  const std::vector<double> levels = {0.5, 0.025, 0.975};
  for (const auto& name : draws.series_names()) {
    const Eigen::VectorXd s = draws.series(name);
    const std::span<const double> sp(s.data(), static_cast<std::size_t>(s.size()));
    const PosteriorSummary ps = posterior_summary(sp, levels);
    InefficiencyFactor ifac{0.0, true};
    if (s.size() >= 100) ifac = inefficiency_factor(sp);
    out << name << "," << format_double(ps.mean, 4) << "," << format_double(ps.sd, 4) << ","
        << format_double(ps.quantiles[0], 4) << "," << format_double(ps.quantiles[1], 4) << ","
        << format_double(ps.quantiles[2], 4) << ","
        << (ifac.infinite ? "inf" : format_double(ifac.value, 4)) << ","
        << (ifac.infinite ? 1 : 0) << "\n";
  }
}

void write_draw_files(const fs::path& out_dir, const DrawStore& draws, bool binary,
                      const std::string& stem = "draws_params") {
  std::vector<std::string> names;
  for (const auto& n : draws.series_names())
    if (n.rfind("abs_sqrt_theta_", 0) != 0) names.push_back(n);  // derivable, not stored
  Eigen::MatrixXd mat(draws.size(), names.size());
  for (std::size_t j = 0; j < names.size(); ++j) mat.col(j) = draws.series(names[j]);
  if (binary)
    write_draws_bin(out_dir / (stem + ".bin"), names, mat);
  else
    write_csv(out_dir / (stem + ".csv"), names, mat, 17);
  if (draws.sv_mode() && draws.size() > 0) {
    std::vector<std::string> h_names;
    for (int t = 0; t <= draws.horizon(); ++t) h_names.push_back("h_" + std::to_string(t));
    if (binary)
      write_draws_bin(out_dir / "draws_h.bin", h_names, draws.h().topRows(draws.size()));
    else
      write_csv(out_dir / "draws_h.csv", h_names, draws.h().topRows(draws.size()), 17);
  }
}

void write_path_quantiles(const fs::path& path, const DrawStore& draws) {
  if (!draws.has_paths() || draws.size() == 0) return;
  const int T1 = draws.horizon() + 1;
  const int d = draws.dim();
  const std::vector<double> levels = {0.025, 0.25, 0.5, 0.75, 0.975};
  std::vector<std::string> header = {"t"};
  for (int j = 1; j <= d; ++j)
    for (double q : levels) {
      std::ostringstream os;
      os << "beta_" << j << "_q" << static_cast<int>(q * 1000);
      header.push_back(os.str());
    }
  Eigen::MatrixXd outm(T1, header.size());
  const int M = draws.size();
  std::vector<Eigen::MatrixXd> paths;
  paths.reserve(M);
  for (int m = 0; m < M; ++m) paths.push_back(draws.centered_path(m));
  std::vector<double> buf(M);
  for (int t = 0; t < T1; ++t) {
    outm(t, 0) = t;
    int c = 1;
    for (int j = 0; j < d; ++j) {
      for (int m = 0; m < M; ++m) buf[m] = paths[m](t, j);
      for (double q : levels) outm(t, c++) = quantile_type7(buf, q);
    }
  }
  write_csv(path, header, outm, 6);
}

void write_h_quantiles(const fs::path& path, const DrawStore& draws) {
  if (!draws.sv_mode() || draws.size() == 0) return;
  const int T1 = draws.horizon() + 1;
  const std::vector<double> levels = {0.025, 0.25, 0.5, 0.75, 0.975};
  std::vector<std::string> header = {"t", "h_q025", "h_q250", "h_q500", "h_q750", "h_q975"};
  Eigen::MatrixXd outm(T1, 6);
  const int M = draws.size();
  std::vector<double> buf(M);
  for (int t = 0; t < T1; ++t) {
    outm(t, 0) = t;
    for (int m = 0; m < M; ++m) buf[m] = draws.h()(m, t);
    for (std::size_t q = 0; q < levels.size(); ++q)
      outm(t, 1 + q) = quantile_type7(buf, levels[q]);
  }
  write_csv(path, header, outm, 6);
}

}  // namespace

int cmd_simulate(const Config& cfg, const RunPaths& paths, std::optional<std::uint64_t> seed) {
  if (!seed.has_value() && !cfg.has("seed"))
    throw std::runtime_error("simulate: a seed is required (--seed or config key 'seed')");
  const std::uint64_t master = seed ? *seed : static_cast<std::uint64_t>(cfg.get_int("seed"));

  const int d = static_cast<int>(cfg.get_int("sim.d"));
  const int T = static_cast<int>(cfg.get_int("sim.T"));
  const int n_series = cfg.get_or("sim.n_series", 1);
  SimSpec spec;
  const auto beta = cfg.get_doubles("sim.beta");
  const auto theta = cfg.get_doubles("sim.theta");
  spec.beta = Eigen::Map<const Eigen::VectorXd>(beta.data(), beta.size());
  spec.theta = Eigen::Map<const Eigen::VectorXd>(theta.data(), theta.size());
  spec.sigma2 = cfg.get_or("sim.sigma2", 1.0);
  spec.c_P = cfg.get_or("sim.c_P", 1.0);

  fs::create_directories(paths.out);
  for (int i = 0; i < n_series; ++i) {
    Rng rng(split_seed(master, static_cast<std::uint64_t>(i)));
    auto [data, truth] = simulate_tvp(d, T, spec, rng);

    std::vector<std::string> header = {"y"};
    for (int j = 1; j <= d; ++j) header.push_back("x" + std::to_string(j));
    Eigen::MatrixXd mat(T, d + 1);
    mat.col(0) = data.y;
    mat.rightCols(d) = data.X;
    std::ostringstream stem;
    stem << "series_" << (i + 1);
    write_csv(paths.out / (stem.str() + "_data.csv"), header, mat, 17);

    std::vector<std::string> theader;
    Eigen::MatrixXd tmat(1, 2 * d + 1);
    for (int j = 0; j < d; ++j) {
      theader.push_back("beta_true_" + std::to_string(j + 1));
      tmat(0, j) = truth.beta_true(j);
    }
    for (int j = 0; j < d; ++j) {
      theader.push_back("theta_true_" + std::to_string(j + 1));
      tmat(0, d + j) = truth.theta_true(j);
    }
    theader.push_back("sigma2_true");
    tmat(0, 2 * d) = truth.sigma2_true;
    write_csv(paths.out / (stem.str() + "_truth.csv"), theader, tmat, 17);
  }

  json extra;
  extra["n_series"] = n_series;
  write_run_json(paths.out, "simulate", cfg, master, 1, extra);
  return 0;
}

int cmd_fit(const Config& cfg, const RunPaths& paths, std::uint64_t seed, int threads) {
  const PriorConfig prior = prior_from_config(cfg);
  const SamplerSettings settings = settings_from_config(cfg);
  const LoadedData loaded = load_data(cfg, paths.data);
  const bool binary = cfg.get_or("output.binary_draws", false);
  fs::create_directories(paths.out);

  json extra;
  extra["data_file"] = paths.data.string();
  extra["data_hash"] = hash_file(paths.data);
  extra["prior_variant"] = variant_to_string(prior.variant);

  if (loaded.multivariate) {
    CholeskySystem sys = build_row_regressions(loaded.Y, loaded.y_names);
    fit_cholesky_sv(sys, prior, settings, seed, threads);
    json rows = json::array();
    for (int i = 0; i < sys.r(); ++i) {
      std::ostringstream dir;
      dir << "row_" << (i + 1);
      const fs::path row_dir = paths.out / dir.str();
      fs::create_directories(row_dir);
      write_draw_files(row_dir, sys.row_draws[i], binary);
      write_summary(row_dir / "summary.csv", sys.row_draws[i]);
      write_h_quantiles(row_dir / "h_quantiles.csv", sys.row_draws[i]);
      json r;
      r["row"] = i + 1;
      r["outcome"] = sys.column_order[i];
      r["accept_rate_a_xi"] = sys.row_draws[i].accept_rate_a_xi;
      r["accept_rate_a_tau"] = sys.row_draws[i].accept_rate_a_tau;
      rows.push_back(r);
    }
    extra["column_order"] = sys.column_order;
    extra["rows"] = rows;
    write_run_json(paths.out, "fit", cfg, seed, threads, extra);
    return 0;
  }

  Rng rng(seed);
  const DrawStore draws = run_chain(loaded.data, prior, settings, rng);
  write_draw_files(paths.out, draws, binary);
  write_summary(paths.out / "summary.csv", draws);
  write_path_quantiles(paths.out / "beta_path_quantiles.csv", draws);
  write_h_quantiles(paths.out / "h_quantiles.csv", draws);

  extra["y_column"] = loaded.y_name;
  extra["x_columns"] = loaded.x_names;
  extra["standardize_means"] = std::vector<double>(loaded.means.data(),
                                                   loaded.means.data() + loaded.means.size());
  extra["standardize_sds"] =
      std::vector<double>(loaded.sds.data(), loaded.sds.data() + loaded.sds.size());
  extra["accept_rate_a_xi"] = draws.accept_rate_a_xi;
  extra["accept_rate_a_tau"] = draws.accept_rate_a_tau;
  extra["degenerate_gig_count"] = draws.degenerate_gig_count;
  extra["h_clamp_count"] = draws.h_clamp_count;
  write_run_json(paths.out, "fit", cfg, seed, threads, extra);
  return 0;
}

int cmd_forecast(const Config& cfg, const RunPaths& paths, std::uint64_t seed, int threads) {
  const PriorConfig prior = prior_from_config(cfg);
  SamplerSettings settings = settings_from_config(cfg);
  settings.store_paths = false;
  const LoadedData loaded = load_data(cfg, paths.data);
  const int t0 = static_cast<int>(cfg.get_int("forecast.t0"));
  const std::string method = cfg.get_or("forecast.approximation", std::string("kalman"));
  RollingOptions opts;
  opts.kalman = method == "kalman" || method == "both";
  opts.naive = method == "naive" || method == "both";
  opts.warm_start = cfg.get_or("forecast.warm_start", false);
  opts.warm_burnin = cfg.get_or("forecast.warm_burnin", 100);
  opts.threads = threads;
  fs::create_directories(paths.out);

  json extra;
  extra["data_file"] = paths.data.string();
  extra["data_hash"] = hash_file(paths.data);
  extra["t0"] = t0;

  if (loaded.multivariate) {
    const int T = static_cast<int>(loaded.Y.rows());
    const int r = static_cast<int>(loaded.Y.cols());
    if (t0 < 1 || t0 >= T) throw std::runtime_error("forecast: t0 must lie in [1, T-1]");
    const int n_origins = T - t0;
    Eigen::MatrixXd scores(n_origins, r);
    // jobs: (origin, row) pairs, each an independent re-fit
    parallel_for(n_origins * r, threads, [&](int idx) {
      const int i = idx / r;
      const int row = idx % r;
      const int t = t0 + 1 + i;
      Dataset hist{loaded.Y.col(row).head(t - 1), loaded.Y.leftCols(row).topRows(t - 1),
                   std::nullopt};
      Rng rng(split_seed(split_seed(seed, i), row));
      const DrawStore draws = run_chain(hist, prior, settings, rng);
      const Eigen::RowVectorXd x_new = loaded.Y.row(t - 1).head(row);
      scores(i, row) =
          lpds_kalman_mixture(draws, hist.y, hist.X, x_new, loaded.Y(t - 1, row), rng);
    });
    std::vector<std::string> header = {"t"};
    for (int i = 0; i < r; ++i) header.push_back("lpds_" + loaded.y_names[i]);
    header.push_back("lpds_total");
    header.push_back("cum_total");
    Eigen::MatrixXd out(n_origins, r + 3);
    double cum = 0.0;
    for (int i = 0; i < n_origins; ++i) {
      out(i, 0) = t0 + 1 + i;
      out.row(i).segment(1, r) = scores.row(i);
      const double total = multivariate_lpds(scores.row(i).transpose());
      out(i, r + 1) = total;
      cum += total;
      out(i, r + 2) = cum;
    }
    write_csv(paths.out / "lpds.csv", header, out, 17);
    extra["column_order"] = loaded.y_names;
    write_run_json(paths.out, "forecast", cfg, seed, threads, extra);
    return 0;
  }

  const RollingResult res = rolling_forecast(loaded.data, prior, settings, t0, opts, seed);
  std::vector<std::string> header = {"t"};
  int cols = 1;
  if (opts.kalman) {
    header.insert(header.end(), {"lpds_kalman", "cum_kalman"});
    cols += 2;
  }
  if (opts.naive) {
    header.insert(header.end(), {"lpds_naive", "cum_naive"});
    cols += 2;
  }
  const int n = static_cast<int>(res.kalman.t.size());
  Eigen::MatrixXd out(n, cols);
  for (int i = 0; i < n; ++i) {
    int c = 0;
    out(i, c++) = res.kalman.t[i];
    if (opts.kalman) {
      out(i, c++) = res.kalman.lpds[i];
      out(i, c++) = res.kalman.cum[i];
    }
    if (opts.naive) {
      out(i, c++) = res.naive.lpds[i];
      out(i, c++) = res.naive.cum[i];
    }
  }
  write_csv(paths.out / "lpds.csv", header, out, 17);
  write_run_json(paths.out, "forecast", cfg, seed, threads, extra);
  return 0;
}

int cmd_simstudy(const Config& cfg, const RunPaths& paths, std::uint64_t seed, int threads) {
  const int n_series = cfg.get_or("simstudy.n_series", 20);
  const int d = static_cast<int>(cfg.get_int("sim.d"));
  const int T = static_cast<int>(cfg.get_int("sim.T"));
  SimSpec spec;
  const auto beta = cfg.get_doubles("sim.beta");
  const auto theta = cfg.get_doubles("sim.theta");
  spec.beta = Eigen::Map<const Eigen::VectorXd>(beta.data(), beta.size());
  spec.theta = Eigen::Map<const Eigen::VectorXd>(theta.data(), theta.size());
  spec.sigma2 = cfg.get_or("sim.sigma2", 1.0);
  spec.c_P = cfg.get_or("sim.c_P", 1.0);

  std::vector<std::string> prior_names = {"double_gamma", "lasso"};
  if (cfg.has("simstudy.priors")) prior_names = cfg.get_strings("simstudy.priors");

  SamplerSettings settings = settings_from_config(cfg);
  settings.store_paths = false;

  const int n_priors = static_cast<int>(prior_names.size());
  // per (prior, series, parameter) draw vectors; parameters: beta_j then |sqrt_theta_j|
  std::vector<std::vector<std::vector<Eigen::VectorXd>>> collected(
      n_priors, std::vector<std::vector<Eigen::VectorXd>>(2 * d));
  for (auto& per_prior : collected)
    for (auto& per_param : per_prior) per_param.resize(n_series);
  std::vector<std::vector<char>> ok(n_priors, std::vector<char>(n_series, 0));

  parallel_for(n_priors * n_series, threads, [&](int idx) {
    const int p = idx / n_series;
    const int i = idx % n_series;
    Rng sim_rng(split_seed(seed, static_cast<std::uint64_t>(i)));  // same data across priors
    auto [data, truth] = simulate_tvp(d, T, spec, sim_rng);
    (void)truth;
    Config prior_cfg = cfg;  // reuse shared hyperparameters
    PriorConfig prior = prior_from_config(prior_cfg);
    prior.variant = variant_from_string(prior_names[p]);
    Rng rng(split_seed(split_seed(seed, 1000003ULL + i), p));
    try {
      const DrawStore draws = run_chain(data, prior, settings, rng);
      for (int j = 0; j < d; ++j) {
        collected[p][j][i] = draws.series("beta_" + std::to_string(j + 1));
        collected[p][d + j][i] = draws.series("abs_sqrt_theta_" + std::to_string(j + 1));
      }
      ok[p][i] = 1;
    } catch (const std::exception& e) {
      std::cerr << "simstudy: prior " << prior_names[p] << ", replicate " << (i + 1)
                << " failed: " << e.what() << "\n";
    }
  });

  fs::create_directories(paths.out);
  std::ofstream out(paths.out / "metrics.csv");
  out << "prior,parameter,avMSE,avVAR,avBIAS2,n_ok\n";
  for (int p = 0; p < n_priors; ++p) {
    for (int j = 0; j < 2 * d; ++j) {
      std::vector<Eigen::VectorXd> good;
      for (int i = 0; i < n_series; ++i)
        if (ok[p][i]) good.push_back(collected[p][j][i]);
      if (good.empty()) continue;
      const bool is_beta = j < d;
      const double truth_val =
          is_beta ? spec.beta(j) : std::sqrt(std::max(spec.theta(j - d), 0.0));
      const SimStudyMetrics m = sim_study_metrics(good, truth_val);
      const std::string pname = is_beta ? ("beta_" + std::to_string(j + 1))
                                        : ("abs_sqrt_theta_" + std::to_string(j - d + 1));
      out << prior_names[p] << "," << pname << "," << format_double(m.avMSE, 6) << ","
          << format_double(m.avVAR, 6) << "," << format_double(m.avBIAS2, 6) << ","
          << static_cast<int>(good.size()) << "\n";
    }
  }
  out.close();

  json extra;
  extra["n_series"] = n_series;
  extra["priors"] = prior_names;
  write_run_json(paths.out, "simstudy", cfg, seed, threads, extra);
  return 0;
}

}  // namespace tvp
