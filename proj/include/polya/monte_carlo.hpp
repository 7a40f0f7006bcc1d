#ifndef POLYA_MONTE_CARLO_HPP
#define POLYA_MONTE_CARLO_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "polya/reset_params.hpp"

namespace polya {

/// Splittable 64-bit generator: per-path streams derive statelessly from
/// (master seed, path index), so batch results do not depend on the
/// execution schedule. splitmix64 expands the seed into xoshiro256++ state.
class PathRng {
 public:
  static PathRng for_path(std::uint64_t master_seed, std::uint64_t path_index);

  std::uint64_t next();

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t s_[4] = {};
};

struct TrajectorySummary {
  std::uint32_t n_cross = 0;  // spontaneous returns to the origin
  std::uint32_t n_dot = 0;    // resetting events
  std::int64_t final_position = 0;
  // (time since last cross-or-start, time since last reset-or-start)
  std::optional<std::pair<std::uint32_t, std::uint32_t>> backward_ages;
  std::optional<std::map<std::int64_t, std::uint64_t>> occupancy_counts;
};

struct PathOptions {
  bool track_ages = false;
  bool track_occupancy = false;
};

/// One walk of the reset recursion: with probability r the walker restarts
/// at the origin (a dot), otherwise it steps +-1 (a cross when it lands on
/// the origin). Deterministic in (params, t, seed).
TrajectorySummary simulate_path(const ResetParams& params, std::uint32_t t, std::uint64_t seed,
                                const PathOptions& options = {});

struct BatchStats {
  std::uint64_t n_paths = 0;
  std::uint32_t t = 0;
  // exact integer accumulators (schedule-independent)
  std::uint64_t sum_cross = 0, sum_dot = 0;
  std::uint64_t sum_cross2 = 0, sum_dot2 = 0, sum_cross_dot = 0;
  std::vector<std::uint64_t> cross_hist;  // index: number of crosses
  std::vector<std::uint64_t> dot_hist;
  std::vector<std::vector<std::uint64_t>> joint_hist;  // optional, small t
  std::vector<std::uint64_t> position_hist;            // optional; index = x + t

  double mean_cross() const;
  double mean_dot() const;
  double mean_sum() const;
  double se_cross() const;  // standard error of the mean
  double se_dot() const;
  double se_sum() const;
};

struct BatchOptions {
  bool joint_hist = false;     // requires t <= 64
  bool position_hist = false;  // final-position counts over [-t, t]
  unsigned workers = 0;        // 0: hardware default
};

/// Batch simulation with fixed per-path seeding; bit-identical for any
/// worker count.
BatchStats batch_stats(const ResetParams& params, std::uint32_t t, std::uint64_t n_paths,
                       std::uint64_t master_seed, const BatchOptions& options = {});

/// Final-position histogram of independent walkers after a burn-in long
/// enough that (1-r)^t_burn < 1e-6 (enforced).
std::map<std::int64_t, std::uint64_t> stationary_histogram(const ResetParams& params,
                                                           std::uint32_t t_burn,
                                                           std::uint64_t n_samples,
                                                           std::uint64_t master_seed,
                                                           unsigned workers = 0);

}  // namespace polya

#endif
