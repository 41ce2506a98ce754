#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <map>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qwalk/config.hpp"
#include "qwalk/evolve.hpp"
#include "qwalk/rng.hpp"
#include "qwalk/stats.hpp"
#include "qwalk/types.hpp"

namespace qwalk {

namespace detail {

// Pascal row C(t, 0..t) scaled by 2^-t.  Row additions are integer-exact up
// to 2^53; the final power-of-two scaling via ldexp never rounds.
inline std::vector<double> fair_walk_row(int t) {
  std::vector<double> row(static_cast<size_t>(t) + 1, 0.0);
  std::vector<double> prev(row.size(), 0.0);
  row[0] = 1.0;
  for (int n = 1; n <= t; ++n) {
    std::swap(prev, row);
    row[0] = 1.0;
    for (int k = 1; k < n; ++k) row[k] = prev[k - 1] + prev[k];
    row[n] = 1.0;
  }
  for (double& v : row) v = std::ldexp(v, -t);
  return row;
}

}  // namespace detail

// Exact distribution of d independent fair +-1 walks after t steps: the
// product over axes of P(x_i) = C(t, (t+x_i)/2) / 2^t on x_i == t (mod 2).
inline Distribution binomial_distribution(int dim, int t) {
  check_dimension(dim);
  if (t < 0) throw std::invalid_argument("steps must be non-negative");
  const std::vector<double> row = detail::fair_walk_row(t);
  Distribution dist(dim);
  std::array<int, kDimMax> k{};  // per-axis index into the row, x_i = 2*k_i - t
  std::array<int, kDimMax> x{};
  for (;;) {
    double mass = 1.0;
    for (int i = 0; i < dim; ++i) {
      mass *= row[k[i]];
      x[i] = 2 * k[i] - t;
    }
    dist.add(LatticePoint(std::span<const int>(x.data(), static_cast<size_t>(dim))), mass);
    int ax = dim - 1;
    while (ax >= 0 && k[ax] == t) k[ax--] = 0;
    if (ax < 0) break;
    ++k[ax];
  }
  dist.finalize();
  return dist;
}

// Mean of per-trial position distributions from independently seeded dressed
// walks.  Trial k always uses trial_seed(master_seed, k) and trials are
// merged in index order, so the result is bit-identical no matter how the
// work is scheduled.
inline Distribution ensemble_average(const WalkConfig& config, int trials,
                                     std::uint64_t master_seed) {
  if (trials < 1) throw std::invalid_argument("ensemble_average needs at least one trial");
  if (!config.dressed) {
    throw std::invalid_argument("ensemble_average requires a config in dressed mode");
  }
  detail::check_run_budget(config);

  std::vector<Distribution> per_trial(static_cast<size_t>(trials), Distribution(config.dim));
  const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                           static_cast<unsigned>(trials)));
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&](unsigned offset) {
    try {
      for (int k = static_cast<int>(offset); k < trials; k += static_cast<int>(workers)) {
        SplitMix64 rng(trial_seed(master_seed, static_cast<std::uint64_t>(k)));
        per_trial[static_cast<size_t>(k)] = position_distribution(run_dressed(config, rng));
      }
    } catch (...) {
      const std::scoped_lock lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (std::thread& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::map<LatticePoint, double> acc;
  for (const Distribution& dist : per_trial) {
    for (const auto& [point, mass] : dist.entries()) acc[point] += mass;
  }
  Distribution avg(config.dim);
  const double inv = 1.0 / static_cast<double>(trials);
  for (const auto& [point, mass] : acc) avg.add(point, mass * inv);
  avg.finalize();
  return avg;
}

// Brute-force amplitudes by summing over every coin-index sequence
// (mu_1, ..., mu_t): the path lands at x = sum_k v(mu_k) with final internal
// index mu_t and weight prod_k C(mu_k, mu_{k-1}) * psi(mu_0).  Independent of
// the state-vector engine; feasible only for dim * steps <= kPathSumBudget.
inline WalkState path_sum_state(int dim, int steps, const InternalState& initial,
                                const CoinOperator& coin) {
  check_dimension(dim);
  if (initial.dim() != dim || coin.dim() != dim) {
    throw std::invalid_argument("path_sum_state: dimension mismatch");
  }
  if (steps < 0) throw std::invalid_argument("steps must be non-negative");
  if (dim * steps > limits::kPathSumBudget) {
    throw resource_error("path-sum oracle budget exceeded: dim * steps = " +
                         std::to_string(dim * steps) + " > " +
                         std::to_string(limits::kPathSumBudget));
  }
  if (steps == 0) return WalkState(dim, initial);

  const int n = 1 << dim;
  const std::uint64_t sequences = std::uint64_t{1} << (dim * steps);

  // Accumulate into a dense (steps+1)^d x 2^d box, then package as a state.
  std::size_t cells = 1;
  for (int i = 0; i < dim; ++i) cells *= static_cast<std::size_t>(steps) + 1;
  std::vector<Complex> acc(cells * static_cast<std::size_t>(n), Complex{});

  std::vector<int> path(static_cast<size_t>(steps));
  for (std::uint64_t id = 0; id < sequences; ++id) {
    std::uint64_t rest = id;
    for (int s = 0; s < steps; ++s) {
      path[static_cast<size_t>(s)] = static_cast<int>(rest % n);
      rest /= n;
    }
    // Box coordinate of the endpoint: u_i = sum_k (1 - bit_i(mu_k)).
    std::size_t site = 0;
    for (int axis = 0; axis < dim; ++axis) {
      int u = 0;
      for (int s = 0; s < steps; ++s) u += 1 - CoinIndex(path[static_cast<size_t>(s)]).bit(axis, dim);
      site = site * (static_cast<std::size_t>(steps) + 1) + static_cast<std::size_t>(u);
    }
    for (int mu0 = 0; mu0 < n; ++mu0) {
      Complex weight = initial[mu0];
      if (weight == Complex{}) continue;
      int prev = mu0;
      for (int s = 0; s < steps; ++s) {
        weight *= coin(path[static_cast<size_t>(s)], prev);
        prev = path[static_cast<size_t>(s)];
      }
      acc[site * static_cast<std::size_t>(n) + static_cast<std::size_t>(path.back())] += weight;
    }
  }

  return WalkState::from_dense(dim, steps, [&](std::span<const int> x, int mu) {
    std::size_t site = 0;
    for (int axis = 0; axis < dim; ++axis) {
      site = site * (static_cast<std::size_t>(steps) + 1) +
             static_cast<std::size_t>((x[axis] + steps) / 2);
    }
    return acc[site * static_cast<std::size_t>(n) + static_cast<std::size_t>(mu)];
  });
}

inline WalkState path_sum_oracle(const WalkConfig& config) {
  return path_sum_state(config.dim, config.steps, make_initial(config), make_coin(config));
}

// Largest per-amplitude difference between two states at the same time.
inline double max_amplitude_deviation(const WalkState& a, const WalkState& b) {
  if (a.dim() != b.dim() || a.time() != b.time()) {
    throw std::invalid_argument("states are not comparable");
  }
  double worst = 0.0;
  a.for_each_site([&](std::span<const int> x, std::span<const Complex> amps) {
    const LatticePoint point(x);
    for (int mu = 0; mu < static_cast<int>(amps.size()); ++mu) {
      worst = std::max(worst, std::abs(amps[mu] - b.amplitude(point, CoinIndex(mu))));
    }
  });
  return worst;
}

}  // namespace qwalk
