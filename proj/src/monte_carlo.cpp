#include "polya/monte_carlo.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace polya {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

unsigned resolve_workers(unsigned requested, std::uint64_t jobs) {
  unsigned w = requested ? requested : std::thread::hardware_concurrency();
  if (w == 0) w = 1;
  if (w > 8) w = 8;
  if (static_cast<std::uint64_t>(w) > jobs) w = static_cast<unsigned>(jobs ? jobs : 1);
  return w;
}

}  // namespace

PathRng PathRng::for_path(std::uint64_t master_seed, std::uint64_t path_index) {
  PathRng rng;
  std::uint64_t state = master_seed + 0x9e3779b97f4a7c15ULL * (path_index + 1);
  for (auto& word : rng.s_) word = splitmix64(state);
  return rng;
}

std::uint64_t PathRng::next() {
  // xoshiro256++
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

TrajectorySummary simulate_path(const ResetParams& params, std::uint32_t t, std::uint64_t seed,
                                const PathOptions& options) {
  const double r = params.value();
  PathRng rng = PathRng::for_path(seed, 0);

  TrajectorySummary out;
  std::int64_t x = 0;
  std::uint32_t last_cross = 0, last_dot = 0;
  if (options.track_occupancy) out.occupancy_counts.emplace();

  for (std::uint32_t tau = 1; tau <= t; ++tau) {
    if (rng.uniform() < r) {  // reset drawn first, then the step
      x = 0;
      ++out.n_dot;
      last_dot = tau;
    } else {
      x += rng.uniform() < 0.5 ? -1 : 1;
      if (x == 0) {
        ++out.n_cross;
        last_cross = tau;
      }
    }
    if (options.track_occupancy) ++(*out.occupancy_counts)[x];
  }
  out.final_position = x;
  if (options.track_ages) out.backward_ages = {t - last_cross, t - last_dot};
  return out;
}

double BatchStats::mean_cross() const { return static_cast<double>(sum_cross) / n_paths; }
double BatchStats::mean_dot() const { return static_cast<double>(sum_dot) / n_paths; }
double BatchStats::mean_sum() const {
  return static_cast<double>(sum_cross + sum_dot) / n_paths;
}

namespace {
double se_of(std::uint64_t sum, std::uint64_t sum2, std::uint64_t n) {
  const double mean = static_cast<double>(sum) / n;
  const double var = (static_cast<double>(sum2) - n * mean * mean) / (n - 1.0);
  return std::sqrt(var / static_cast<double>(n));
}
}  // namespace

double BatchStats::se_cross() const { return se_of(sum_cross, sum_cross2, n_paths); }
double BatchStats::se_dot() const { return se_of(sum_dot, sum_dot2, n_paths); }
double BatchStats::se_sum() const {
  const std::uint64_t sum = sum_cross + sum_dot;
  const std::uint64_t sum2 = sum_cross2 + 2 * sum_cross_dot + sum_dot2;
  return se_of(sum, sum2, n_paths);
}

BatchStats batch_stats(const ResetParams& params, std::uint32_t t, std::uint64_t n_paths,
                       std::uint64_t master_seed, const BatchOptions& options) {
  if (n_paths == 0) throw std::invalid_argument("batch needs at least one path");
  if (options.joint_hist && t > 64)
    throw std::invalid_argument("joint histogram capped at t <= 64");
  // squared counts must stay exact in 64-bit accumulators
  const long double worst = static_cast<long double>(t) * t * n_paths;
  if (worst > 9.2e18L) throw std::invalid_argument("batch too large for exact accumulators");

  const double r = params.value();
  const unsigned workers = resolve_workers(options.workers, n_paths);

  std::vector<BatchStats> partial(workers);
  auto run_chunk = [&](unsigned wi) {
    BatchStats& acc = partial[wi];
    acc.cross_hist.assign(t / 2 + 1, 0);
    acc.dot_hist.assign(t + 1, 0);
    if (options.joint_hist)
      acc.joint_hist.assign(t / 2 + 1, std::vector<std::uint64_t>(t + 1, 0));
    if (options.position_hist) acc.position_hist.assign(2 * static_cast<std::size_t>(t) + 1, 0);
    for (std::uint64_t i = wi; i < n_paths; i += workers) {
      PathRng rng = PathRng::for_path(master_seed, i);
      std::int64_t x = 0;
      std::uint32_t nc = 0, nd = 0;
      for (std::uint32_t tau = 0; tau < t; ++tau) {
        if (rng.uniform() < r) {
          x = 0;
          ++nd;
        } else {
          x += rng.uniform() < 0.5 ? -1 : 1;
          if (x == 0) ++nc;
        }
      }
      acc.sum_cross += nc;
      acc.sum_dot += nd;
      acc.sum_cross2 += static_cast<std::uint64_t>(nc) * nc;
      acc.sum_dot2 += static_cast<std::uint64_t>(nd) * nd;
      acc.sum_cross_dot += static_cast<std::uint64_t>(nc) * nd;
      ++acc.cross_hist[nc];
      ++acc.dot_hist[nd];
      if (options.joint_hist) ++acc.joint_hist[nc][nd];
      if (options.position_hist) ++acc.position_hist[static_cast<std::size_t>(x + t)];
    }
  };

  if (workers == 1) {
    run_chunk(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned wi = 0; wi < workers; ++wi) pool.emplace_back(run_chunk, wi);
    for (auto& th : pool) th.join();
  }

  BatchStats total;
  total.n_paths = n_paths;
  total.t = t;
  total.cross_hist.assign(t / 2 + 1, 0);
  total.dot_hist.assign(t + 1, 0);
  if (options.joint_hist)
    total.joint_hist.assign(t / 2 + 1, std::vector<std::uint64_t>(t + 1, 0));
  if (options.position_hist)
    total.position_hist.assign(2 * static_cast<std::size_t>(t) + 1, 0);
  for (const auto& acc : partial) {  // integer merges: order immaterial
    total.sum_cross += acc.sum_cross;
    total.sum_dot += acc.sum_dot;
    total.sum_cross2 += acc.sum_cross2;
    total.sum_dot2 += acc.sum_dot2;
    total.sum_cross_dot += acc.sum_cross_dot;
    for (std::size_t i = 0; i < total.cross_hist.size(); ++i)
      total.cross_hist[i] += acc.cross_hist[i];
    for (std::size_t i = 0; i < total.dot_hist.size(); ++i) total.dot_hist[i] += acc.dot_hist[i];
    if (options.joint_hist)
      for (std::size_t i = 0; i < total.joint_hist.size(); ++i)
        for (std::size_t j = 0; j < total.joint_hist[i].size(); ++j)
          total.joint_hist[i][j] += acc.joint_hist[i][j];
    if (options.position_hist)
      for (std::size_t i = 0; i < total.position_hist.size(); ++i)
        total.position_hist[i] += acc.position_hist[i];
  }
  return total;
}

std::map<std::int64_t, std::uint64_t> stationary_histogram(const ResetParams& params,
                                                           std::uint32_t t_burn,
                                                           std::uint64_t n_samples,
                                                           std::uint64_t master_seed,
                                                           unsigned workers) {
  const double r = params.value();
  if (!(r > 0.0 && r < 1.0))
    throw std::invalid_argument("stationary state requires 0 < r < 1");
  if (n_samples == 0) throw std::invalid_argument("need at least one sample");
  if (!(static_cast<double>(t_burn) * std::log1p(-r) < std::log(1e-6)))
    throw std::invalid_argument("insufficient burn-in: need (1-r)^t_burn < 1e-6");

  const unsigned nw = resolve_workers(workers, n_samples);
  const std::int64_t span = t_burn;  // |x| <= t_burn
  std::vector<std::vector<std::uint64_t>> partial(nw,
                                                  std::vector<std::uint64_t>(2 * span + 1, 0));
  auto run_chunk = [&](unsigned wi) {
    auto& hist = partial[wi];
    for (std::uint64_t i = wi; i < n_samples; i += nw) {
      PathRng rng = PathRng::for_path(master_seed, i);
      std::int64_t x = 0;
      for (std::uint32_t tau = 0; tau < t_burn; ++tau) {
        if (rng.uniform() < r)
          x = 0;
        else
          x += rng.uniform() < 0.5 ? -1 : 1;
      }
      ++hist[x + span];
    }
  };
  if (nw == 1) {
    run_chunk(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (unsigned wi = 0; wi < nw; ++wi) pool.emplace_back(run_chunk, wi);
    for (auto& th : pool) th.join();
  }

  std::map<std::int64_t, std::uint64_t> out;
  for (std::int64_t x = -span; x <= span; ++x) {
    std::uint64_t count = 0;
    for (const auto& hist : partial) count += hist[x + span];
    if (count) out[x] = count;
  }
  return out;
}

}  // namespace polya
