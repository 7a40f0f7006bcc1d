#include "polya/cli_dispatch.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "polya/crossover.hpp"
#include "polya/cumulants_ldf.hpp"
#include "polya/exact_laws.hpp"
#include "polya/monte_carlo.hpp"
#include "polya/spectral.hpp"

namespace polya {

namespace {

constexpr const char* kVersion = "1.0.0";

const std::string& get_str(const CommandRequest& req, const std::string& key,
                           const std::string& fallback) {
  auto it = req.params.find(key);
  return it == req.params.end() ? fallback : it->second;
}

double get_double(const CommandRequest& req, const std::string& key, double fallback) {
  auto it = req.params.find(key);
  if (it == req.params.end()) return fallback;
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    throw std::invalid_argument("parameter '" + key + "' is not a number: " + it->second);
  }
}

std::uint64_t get_u64(const CommandRequest& req, const std::string& key, std::uint64_t fallback) {
  auto it = req.params.find(key);
  if (it == req.params.end()) return fallback;
  try {
    return std::stoull(it->second);
  } catch (const std::exception&) {
    throw std::invalid_argument("parameter '" + key + "' is not an integer: " + it->second);
  }
}

ResetParams get_r(const CommandRequest& req, const std::string& fallback) {
  return ResetParams::from_string(get_str(req, "r", fallback));
}

void put_common_meta(TableArtifact& table, const CommandRequest& req) {
  table.meta["tool"] = "polya";
  table.meta["version"] = kVersion;
  table.meta["subcommand"] = req.subcommand;
}

std::vector<double> linspace(double lo, double hi, std::size_t points) {
  if (points < 2) throw std::invalid_argument("grids need at least 2 points");
  std::vector<double> xs(points);
  for (std::size_t i = 0; i < points; ++i)
    xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  return xs;
}

// open interval shrunk by a relative margin of 1e-4, matching the curve
// emission defaults
std::vector<double> open_grid(double lo, double hi, std::size_t points) {
  const double margin = 1e-4 * (hi - lo);
  return linspace(lo + margin, hi - margin, points);
}

TableArtifact cmd_amplitudes(const CommandRequest& req) {
  TableArtifact t;
  t.columns = {"r", "A_dot", "A_cross", "A"};
  const double rmin = get_double(req, "r-min", 0.001);
  const double rmax = get_double(req, "r-max", 0.999);
  const std::size_t points = get_u64(req, "points", 200);
  for (double r : linspace(rmin, rmax, points)) {
    auto a = amplitudes(ResetParams::from_double(r));
    t.rows.push_back({r, r, a.cross, a.total});
  }
  t.meta["r-min"] = std::to_string(rmin);
  t.meta["r-max"] = std::to_string(rmax);
  return t;
}

TableArtifact cmd_decay(const CommandRequest& req) {
  TableArtifact t;
  t.columns = {"r", "A_cross", "sigma"};
  const double rmin = get_double(req, "r-min", 0.001);
  const double rmax = get_double(req, "r-max", 0.999);
  const std::size_t points = get_u64(req, "points", 200);
  for (double r : linspace(rmin, rmax, points)) {
    auto params = ResetParams::from_double(r);
    t.rows.push_back({r, amplitudes(params).cross, decay_rate(params)});
  }
  return t;
}

TableArtifact cmd_dist(const CommandRequest& req) {
  auto params = get_r(req, "0.3");
  const auto t_horizon = static_cast<std::size_t>(get_u64(req, "t", 16));
  const bool exact = get_str(req, "field", "exact") == "exact";
  TableArtifact t;
  t.columns = {"k", "m", "p"};
  if (exact) {
    auto law = joint_law<Rational>(params, t_horizon);
    for (std::size_t k = 0; k < law.probs.size(); ++k)
      for (std::size_t m = 0; m < law.probs[k].size(); ++m)
        t.rows.push_back({static_cast<double>(k), static_cast<double>(m),
                          to_double(law.probs[k][m])});
  } else {
    auto law = joint_law<double>(params, t_horizon);
    for (std::size_t k = 0; k < law.probs.size(); ++k)
      for (std::size_t m = 0; m < law.probs[k].size(); ++m)
        t.rows.push_back({static_cast<double>(k), static_cast<double>(m), law.probs[k][m]});
  }
  t.meta["r"] = get_str(req, "r", "0.3");
  t.meta["t"] = std::to_string(t_horizon);
  t.meta["field"] = exact ? "exact" : "float";
  return t;
}

TableArtifact cmd_dressed(const CommandRequest& req) {
  auto params = get_r(req, "0.3");
  const auto tau_max = static_cast<std::size_t>(get_u64(req, "tau-max", 100));
  const bool exact = get_str(req, "field", "exact") == "exact";
  TableArtifact t;
  t.columns = {"tau", "pmf", "survival"};
  double mean_return = 0;
  if (exact) {
    auto law = dressed_law<Rational>(params, tau_max);
    for (std::size_t tau = 0; tau <= tau_max; ++tau)
      t.rows.push_back({static_cast<double>(tau), to_double(law.pmf[tau]),
                        to_double(law.survival[tau])});
    mean_return = law.mean_return;
  } else {
    auto law = dressed_law<double>(params, tau_max);
    for (std::size_t tau = 0; tau <= tau_max; ++tau)
      t.rows.push_back({static_cast<double>(tau), law.pmf[tau], law.survival[tau]});
    mean_return = law.mean_return;
  }
  t.meta["r"] = get_str(req, "r", "0.3");
  t.meta["field"] = exact ? "exact" : "float";
  std::ostringstream mean;
  mean.precision(17);
  mean << mean_return;
  t.meta["mean_return"] = mean.str();
  return t;
}

TableArtifact cmd_cumulants(const CommandRequest& req) {
  auto params = get_r(req, "0.3");
  if (get_str(req, "field", "exact") == "float")
    params = ResetParams::from_double(params.value());
  const auto order = static_cast<std::size_t>(get_u64(req, "order", 6));
  auto tab = cumulant_table(params, order);
  TableArtifact t;
  t.columns = {"k", "l", "c"};
  for (const auto& [kl, value] : tab.c)
    t.rows.push_back({static_cast<double>(kl.first), static_cast<double>(kl.second), value});
  t.meta["r"] = get_str(req, "r", "0.3");
  t.meta["order"] = std::to_string(order);
  std::ostringstream a;
  a.precision(17);
  a << amplitudes(params).total;
  t.meta["A"] = a.str();
  return t;
}

TableArtifact cmd_ldf(const CommandRequest& req) {
  auto params = get_r(req, "0.3");
  const std::size_t points = get_u64(req, "points", 401);
  const std::string which = get_str(req, "which", "all");
  TableArtifact t;
  auto curve = [&](Marginal m, double lo, double hi) {
    std::vector<std::pair<double, double>> pts;
    for (double x : open_grid(lo, hi, points))
      pts.emplace_back(x, legendre_univariate(params, m, x).rate);
    return pts;
  };
  if (which == "all") {
    auto dot = curve(Marginal::dot, 0, 1);
    auto cross = curve(Marginal::cross, 0, 0.5);
    auto sum = curve(Marginal::sum, 0, 1);
    t.columns = {"eta", "I_dot", "xi", "I_cross", "phi", "I_sum"};
    for (std::size_t i = 0; i < points; ++i)
      t.rows.push_back({dot[i].first, dot[i].second, cross[i].first, cross[i].second,
                        sum[i].first, sum[i].second});
  } else {
    Marginal m;
    double hi = 1;
    if (which == "dot") {
      m = Marginal::dot;
    } else if (which == "cross") {
      m = Marginal::cross;
      hi = 0.5;
    } else if (which == "sum") {
      m = Marginal::sum;
    } else {
      throw std::invalid_argument("ldf --which must be dot, cross, sum or all");
    }
    t.columns = {"arg", "I"};
    for (auto [x, i] : curve(m, 0, hi)) t.rows.push_back({x, i});
  }
  t.meta["r"] = get_str(req, "r", "0.3");
  return t;
}

TableArtifact cmd_crossover(const CommandRequest& req) {
  const std::string ulist = get_str(req, "u", "0,0.5,1,2,4");
  const double zeta_max = get_double(req, "zeta-max", 4.0);
  const std::size_t points = get_u64(req, "points", 400);
  std::vector<double> us;
  std::stringstream ss{ulist};
  for (std::string item; std::getline(ss, item, ',');) us.push_back(std::stod(item));
  if (us.empty()) throw std::invalid_argument("crossover needs at least one u value");

  TableArtifact t;
  t.columns = {"zeta"};
  for (double u : us) {
    std::ostringstream name;
    name << "f_u" << u;
    t.columns.push_back(name.str());
  }
  for (double zeta : linspace(0, zeta_max, points)) {
    std::vector<double> row{zeta};
    for (double u : us)
      row.push_back(u == 0.0 ? density_small_u(zeta, 0.0) : crossover_density(zeta, u));
    t.rows.push_back(std::move(row));
  }
  t.meta["u"] = ulist;
  return t;
}

TableArtifact cmd_moments(const CommandRequest& req) {
  const double umin = get_double(req, "u-min", 0.1);
  const double umax = get_double(req, "u-max", 10.0);
  const std::size_t points = get_u64(req, "points", 100);
  const auto kmax = static_cast<std::size_t>(get_u64(req, "kmax", 4));
  TableArtifact t;
  t.columns = {"u"};
  for (std::size_t k = 1; k <= kmax; ++k) t.columns.push_back("mu_" + std::to_string(k));
  for (std::size_t k = 1; k <= kmax; ++k) t.columns.push_back("gamma_" + std::to_string(k));
  t.columns.push_back("G");
  for (double u : linspace(umin, umax, points)) {
    auto set = cumulants_gamma(u, kmax);
    std::vector<double> row{u};
    for (std::size_t k = 1; k <= kmax; ++k) row.push_back(set.mu[k]);
    for (std::size_t k = 1; k <= kmax; ++k) row.push_back(set.gamma[k]);
    row.push_back(occupancy_scaling(u));
    t.rows.push_back(std::move(row));
  }
  return t;
}

TableArtifact cmd_simulate(const CommandRequest& req) {
  auto params = get_r(req, "0.3");
  const auto horizon = static_cast<std::uint32_t>(get_u64(req, "t", 1000));
  const std::uint64_t paths = get_u64(req, "paths", 20000);
  const std::uint64_t seed = get_u64(req, "seed", 12345);
  auto stats = batch_stats(params, horizon, paths, seed);

  TableArtifact t;
  t.columns = {"n", "cross_count", "dot_count"};
  const std::size_t rows = std::max(stats.cross_hist.size(), stats.dot_hist.size());
  for (std::size_t n = 0; n < rows; ++n)
    t.rows.push_back({static_cast<double>(n),
                      n < stats.cross_hist.size() ? static_cast<double>(stats.cross_hist[n]) : 0.0,
                      n < stats.dot_hist.size() ? static_cast<double>(stats.dot_hist[n]) : 0.0});
  t.meta["r"] = get_str(req, "r", "0.3");
  t.meta["t"] = std::to_string(horizon);
  t.meta["paths"] = std::to_string(paths);
  t.meta["seed"] = std::to_string(seed);
  auto put = [&](const char* key, double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    t.meta[key] = os.str();
  };
  put("mean_cross", stats.mean_cross());
  put("se_cross", stats.se_cross());
  put("mean_dot", stats.mean_dot());
  put("se_dot", stats.se_dot());
  put("mean_sum", stats.mean_sum());
  put("se_sum", stats.se_sum());
  return t;
}

TableArtifact cmd_stationary(const CommandRequest& req) {
  auto params = get_r(req, "0.3");
  const std::uint64_t samples = get_u64(req, "samples", 200000);
  const std::uint64_t seed = get_u64(req, "seed", 12345);
  std::uint32_t burn = static_cast<std::uint32_t>(get_u64(req, "burn", 0));
  if (burn == 0)
    burn = static_cast<std::uint32_t>(std::ceil(std::log(1e-6) / std::log1p(-params.value()))) + 1;
  auto hist = stationary_histogram(params, burn, samples, seed);
  auto law = stationary_law(params);

  TableArtifact t;
  t.columns = {"x", "count", "freq", "p_exact"};
  for (const auto& [x, count] : hist)
    t.rows.push_back({static_cast<double>(x), static_cast<double>(count),
                      static_cast<double>(count) / static_cast<double>(samples),
                      law.amplitude * std::pow(law.ratio, -std::abs(static_cast<double>(x)))});
  t.meta["r"] = get_str(req, "r", "0.3");
  t.meta["burn"] = std::to_string(burn);
  t.meta["samples"] = std::to_string(samples);
  t.meta["seed"] = std::to_string(seed);
  return t;
}

}  // namespace

TableArtifact dispatch(const CommandRequest& req) {
  TableArtifact table;
  if (req.subcommand == "amplitudes")
    table = cmd_amplitudes(req);
  else if (req.subcommand == "decay")
    table = cmd_decay(req);
  else if (req.subcommand == "dist")
    table = cmd_dist(req);
  else if (req.subcommand == "dressed")
    table = cmd_dressed(req);
  else if (req.subcommand == "cumulants")
    table = cmd_cumulants(req);
  else if (req.subcommand == "ldf")
    table = cmd_ldf(req);
  else if (req.subcommand == "crossover")
    table = cmd_crossover(req);
  else if (req.subcommand == "moments")
    table = cmd_moments(req);
  else if (req.subcommand == "simulate")
    table = cmd_simulate(req);
  else if (req.subcommand == "stationary")
    table = cmd_stationary(req);
  else
    throw std::invalid_argument("unknown subcommand: " + req.subcommand);
  put_common_meta(table, req);
  return table;
}

void emit_request(const CommandRequest& req, const TableArtifact& table) {
  if (req.output_path.empty()) {
    emit(table, req.format, std::cout);
    return;
  }
  std::ofstream out(req.output_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + req.output_path);
  emit(table, req.format, out);
}

}  // namespace polya
