#pragma once

#include <array>
#include <functional>
#include <string>

#include "qwalk/config.hpp"
#include "qwalk/lattice_state.hpp"
#include "qwalk/rng.hpp"
#include "qwalk/types.hpp"

namespace qwalk {

inline void apply_coin(WalkState& state, const CoinOperator& coin) { state.apply_coin(coin); }

inline void apply_shift(WalkState& state) { state.apply_shift(); }

// One walk step: coin on the internal space, then the conditional shift.
inline void step(WalkState& state, const CoinOperator& coin) {
  state.apply_coin(coin);
  state.apply_shift();
}

// Called after each step with the step index (== state.time()) and the state.
using StepObserver = std::function<void(int, const WalkState&)>;

namespace detail {

inline void check_run_budget(const WalkConfig& config) {
  if (config.steps < 0) throw std::invalid_argument("steps must be non-negative");
  const auto bytes = state_bytes(config.dim, config.steps);
  if (bytes > limits::kMaxStateBytes) {
    throw resource_error("walk of dimension " + std::to_string(config.dim) + " over " +
                         std::to_string(config.steps) + " steps needs " + std::to_string(bytes) +
                         " bytes, over the " + std::to_string(limits::kMaxStateBytes) +
                         " byte budget");
  }
}

}  // namespace detail

// Evolves the configured initial state for config.steps steps with the fixed
// configured coin.  The full buffer is sized up front, so the per-step cost
// is the coin sweep plus an in-place shift.
inline WalkState run(const WalkConfig& config, const StepObserver& observer = {}) {
  detail::check_run_budget(config);
  const CoinOperator coin = make_coin(config);
  WalkState state(config.dim, make_initial(config));
  state.reserve_steps(config.steps);
  for (int t = 0; t < config.steps; ++t) {
    step(state, coin);
    if (observer) observer(state.time(), state);
  }
  return state;
}

// Decoherent evolution: each step conjugates the base coin by fresh random
// per-axis phases drawn uniformly from [0, 2*pi).  Phases are drawn axis 0
// first, so a given rng stream fixes the walk exactly.
template <class Rng>
WalkState run_dressed(const WalkConfig& config, Rng& rng, const StepObserver& observer = {}) {
  if (!config.dressed) {
    throw std::invalid_argument("run_dressed requires a config in dressed mode");
  }
  detail::check_run_budget(config);
  const CoinOperator base = make_coin(config);
  WalkState state(config.dim, make_initial(config));
  state.reserve_steps(config.steps);
  std::array<double, kDimMax> betas{};
  for (int t = 0; t < config.steps; ++t) {
    for (int axis = 0; axis < config.dim; ++axis) betas[axis] = uniform_angle(rng);
    step(state, dressed_coin(base, {betas.data(), static_cast<size_t>(config.dim)}));
    if (observer) observer(state.time(), state);
  }
  return state;
}

inline WalkState run_dressed(const WalkConfig& config, const StepObserver& observer = {}) {
  SplitMix64 rng(config.seed);
  return run_dressed(config, rng, observer);
}

}  // namespace qwalk
