#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/coins.hpp"
#include "qwalk/tolerances.hpp"
#include "qwalk/types.hpp"

namespace qwalk {

// Amplitudes over the 2^d-dimensional internal space.  Accepted within
// tol::kInternalNormAdmission of unit norm, then renormalized exactly.
class InternalState {
 public:
  InternalState(int dim, std::vector<Complex> amps) : d_(dim), amps_(std::move(amps)) {
    check_dimension(d_);
    if (amps_.size() != static_cast<size_t>(1) << d_) {
      throw std::invalid_argument("internal state for dimension " + std::to_string(d_) +
                                  " needs " + std::to_string(1 << d_) + " amplitudes, got " +
                                  std::to_string(amps_.size()));
    }
    double n2 = 0.0;
    for (const Complex& a : amps_) n2 += std::norm(a);
    if (std::abs(n2 - 1.0) > tol::kInternalNormAdmission) {
      throw std::invalid_argument("internal state is not normalized: |amps|^2 = " +
                                  std::to_string(n2));
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (Complex& a : amps_) a *= inv;
  }

  int dim() const noexcept { return d_; }
  int size() const noexcept { return 1 << d_; }
  const Complex& operator[](int mu) const { return amps_[mu]; }
  std::span<const Complex> amps() const noexcept { return amps_; }

 private:
  int d_;
  std::vector<Complex> amps_;
};

enum class StandardState { kAllMinus, kAllPlus, kSymmetricProduct, kSinglet };

// The named initial internal states.  symmetric_product is the d-fold tensor
// power of (|+> + i|->)/sqrt(2); singlet is (|+-> - |-+>)/sqrt(2), d = 2 only.
inline InternalState standard_internal(StandardState which, int dim) {
  check_dimension(dim);
  const int n = 1 << dim;
  std::vector<Complex> amps(n);
  switch (which) {
    case StandardState::kAllMinus:
      amps[n - 1] = 1.0;
      break;
    case StandardState::kAllPlus:
      amps[0] = 1.0;
      break;
    case StandardState::kSymmetricProduct: {
      const double scale = 1.0 / std::sqrt(static_cast<double>(n));
      const Complex i_unit{0.0, 1.0};
      for (int mu = 0; mu < n; ++mu) {
        Complex phase{1.0, 0.0};
        for (int k = 0; k < std::popcount(static_cast<unsigned>(mu)); ++k) phase *= i_unit;
        amps[mu] = scale * phase;
      }
      break;
    }
    case StandardState::kSinglet: {
      if (dim != 2) throw std::invalid_argument("singlet initial state requires dimension 2");
      const double r = 1.0 / std::sqrt(2.0);
      amps[1] = r;    // |+->
      amps[2] = -r;   // |-+>
      break;
    }
  }
  return InternalState(dim, std::move(amps));
}

namespace detail {

// Ascending C-order iteration of [0, extent)^dims with an incrementally
// maintained linear offset for the supplied strides.
struct BoxCursor {
  int dims;
  int extent;
  const std::size_t* stride;
  std::array<int, kDimMax> u{};
  std::size_t lin = 0;

  bool next() noexcept {
    for (int ax = dims - 1; ax >= 0; --ax) {
      if (++u[ax] < extent) {
        lin += stride[ax];
        return true;
      }
      u[ax] = 0;
      lin -= static_cast<std::size_t>(extent - 1) * stride[ax];
    }
    return false;
  }
};

// Copies an axis-aligned box of side `extent` between two layouts.
inline void copy_box(const Complex* src, const std::size_t* src_stride, Complex* dst,
                     const std::size_t* dst_stride, int extent, int dims) {
  if (dims == 1) {
    std::copy_n(src, extent, dst);
    return;
  }
  for (int i = 0; i < extent; ++i) {
    copy_box(src + static_cast<std::size_t>(i) * src_stride[0], src_stride + 1,
             dst + static_cast<std::size_t>(i) * dst_stride[0], dst_stride + 1, extent, dims - 1);
  }
}

}  // namespace detail

// Bytes a walk state needs for a run of `steps` steps in dimension `dim`:
// 2^d planes of (steps+1)^d complex doubles.
inline std::uint64_t state_bytes(int dim, int steps) {
  check_dimension(dim);
  if (steps < 0) throw std::invalid_argument("steps must be non-negative");
  const double cells = std::pow(static_cast<double>(steps) + 1.0, dim) * (1 << dim);
  const double bytes = cells * sizeof(Complex);
  if (bytes >= 1e18) return ~std::uint64_t{0};
  return static_cast<std::uint64_t>(bytes);
}

/*
 * Joint spatial-internal state of a d-dimensional walk.
 *
 * Storage is dense over the parity-reduced box: after t steps every
 * reachable site has x_i = 2*u_i - t with u_i in [0, t], so only (t+1)^d
 * sites are stored per internal index (a 2^d saving over the full
 * [-t, t]^d box).  The buffer holds 2^d contiguous planes of (cap+1)^d
 * cells in C order (axis 0 slowest); cells outside the current box are
 * kept at exactly zero, so norms may scan the whole buffer.
 *
 * A shift moves plane mu by the offset w_i(mu) = 1 - bit_i(mu) >= 0 in
 * box coordinates.  Scanning destinations in descending linear order makes
 * the move safe in place: every read (at lin - off) happens before that
 * cell can be overwritten.
 */
class WalkState {
 public:
  // Localized at the origin with the given internal amplitudes, t = 0.
  WalkState(int dim, const InternalState& internal) : WalkState(dim, 0, RawTag{}) {
    if (internal.dim() != dim) {
      throw std::invalid_argument("internal state dimension " + std::to_string(internal.dim()) +
                                  " does not match walk dimension " + std::to_string(dim));
    }
    for (int mu = 0; mu < coin_states(); ++mu) amps_[mu] = internal[mu];
  }

  // Builds a state at time t from an amplitude callback fn(x, mu).  No
  // normalization check: test fixtures and accumulators use this directly.
  template <class Fn>
  static WalkState from_dense(int dim, int t, Fn&& fn) {
    if (t < 0) throw std::invalid_argument("time must be non-negative");
    WalkState s(dim, t, RawTag{});
    const std::size_t plane = s.plane_size();
    std::array<int, kDimMax> x{};
    detail::BoxCursor cur{dim, t + 1, s.strides_.data()};
    do {
      for (int i = 0; i < dim; ++i) x[i] = 2 * cur.u[i] - t;
      for (int mu = 0; mu < s.coin_states(); ++mu) {
        s.amps_[static_cast<std::size_t>(mu) * plane + cur.lin] =
            fn(std::span<const int>(x.data(), dim), mu);
      }
    } while (cur.next());
    return s;
  }

  int dim() const noexcept { return d_; }
  int time() const noexcept { return t_; }
  int coin_states() const noexcept { return 1 << d_; }
  int capacity_steps() const noexcept { return cap_; }

  double norm() const noexcept {
    double n2 = 0.0;
    for (const Complex& a : amps_) n2 += std::norm(a);
    return n2;
  }

  // Zero outside the reachable support (|x_i| <= t and x_i == t mod 2).
  Complex amplitude(const LatticePoint& x, CoinIndex mu) const {
    if (x.dim() != d_) {
      throw std::invalid_argument("lattice point dimension does not match walk dimension");
    }
    if (mu.value() < 0 || mu.value() >= coin_states()) {
      throw std::invalid_argument("coin index out of range");
    }
    std::size_t lin = 0;
    for (int i = 0; i < d_; ++i) {
      const int xi = x[i];
      if (xi < -t_ || xi > t_ || ((xi + t_) & 1)) return Complex{};
      lin += static_cast<std::size_t>((xi + t_) / 2) * strides_[i];
    }
    return amps_[static_cast<std::size_t>(mu.value()) * plane_size() + lin];
  }

  // Grows the buffer so that `steps` total steps fit without reallocation.
  void reserve_steps(int steps) {
    if (steps <= cap_) return;
    WalkState bigger(d_, steps, RawTag{});
    const int extent = t_ + 1;
    for (int mu = 0; mu < coin_states(); ++mu) {
      detail::copy_box(amps_.data() + static_cast<std::size_t>(mu) * plane_size(),
                       strides_.data(),
                       bigger.amps_.data() + static_cast<std::size_t>(mu) * bigger.plane_size(),
                       bigger.strides_.data(), extent, d_);
    }
    bigger.t_ = t_;
    *this = std::move(bigger);
  }

  // Multiplies the internal 2^d-vector at every site by the coin matrix.
  // Sites do not couple, so the update is in place.
  void apply_coin(const CoinOperator& coin) {
    if (coin.dim() != d_) {
      throw std::invalid_argument("coin dimension " + std::to_string(coin.dim()) +
                                  " does not match walk dimension " + std::to_string(d_));
    }
    const int n = coin_states();
    const std::size_t plane = plane_size();
    std::array<Complex, kCoinStatesMax> in{}, out{};
    detail::BoxCursor cur{d_, t_ + 1, strides_.data()};
    do {
      for (int mu = 0; mu < n; ++mu) in[mu] = amps_[static_cast<std::size_t>(mu) * plane + cur.lin];
      for (int r = 0; r < n; ++r) {
        Complex acc{};
        for (int c = 0; c < n; ++c) acc += coin(r, c) * in[c];
        out[r] = acc;
      }
      for (int mu = 0; mu < n; ++mu) amps_[static_cast<std::size_t>(mu) * plane + cur.lin] = out[mu];
    } while (cur.next());
  }

  // Conditional translation: amplitude (x, mu) moves to (x + v(mu), mu).
  // Pure permutation of cells, norm is preserved exactly; t increments.
  void apply_shift() {
    reserve_steps(t_ + 1);
    const int new_extent = t_ + 2;
    for (int mu = 0; mu < coin_states(); ++mu) {
      Complex* plane = amps_.data() + static_cast<std::size_t>(mu) * plane_size();
      std::array<int, kDimMax> w{};
      std::size_t off = 0;
      for (int i = 0; i < d_; ++i) {
        w[i] = 1 - CoinIndex(mu).bit(i, d_);
        off += static_cast<std::size_t>(w[i]) * strides_[i];
      }
      // Descending scan over the destination box [0, t+1]^d.
      std::array<int, kDimMax> u;
      std::size_t lin = 0;
      for (int i = 0; i < d_; ++i) {
        u[i] = new_extent - 1;
        lin += static_cast<std::size_t>(u[i]) * strides_[i];
      }
      for (;;) {
        bool has_source = true;
        for (int i = 0; i < d_; ++i) {
          const int s = u[i] - w[i];
          if (s < 0 || s > t_) {
            has_source = false;
            break;
          }
        }
        plane[lin] = has_source ? plane[lin - off] : Complex{};
        int ax = d_ - 1;
        while (ax >= 0 && u[ax] == 0) {
          u[ax] = new_extent - 1;
          lin += static_cast<std::size_t>(new_extent - 1) * strides_[ax];
          --ax;
        }
        if (ax < 0) break;
        --u[ax];
        lin -= strides_[ax];
      }
    }
    ++t_;
  }

  // Visits every site of the current box with its lattice coordinates and
  // the gathered internal amplitude vector.
  template <class Fn>
  void for_each_site(Fn&& fn) const {
    const int n = coin_states();
    const std::size_t plane = plane_size();
    std::array<int, kDimMax> x{};
    std::array<Complex, kCoinStatesMax> gathered{};
    detail::BoxCursor cur{d_, t_ + 1, strides_.data()};
    do {
      for (int i = 0; i < d_; ++i) x[i] = 2 * cur.u[i] - t_;
      for (int mu = 0; mu < n; ++mu) {
        gathered[mu] = amps_[static_cast<std::size_t>(mu) * plane + cur.lin];
      }
      fn(std::span<const int>(x.data(), d_), std::span<const Complex>(gathered.data(), n));
    } while (cur.next());
  }

 private:
  struct RawTag {};

  // Zeroed buffer with capacity for `cap` steps, positioned at time `cap`
  // for from_dense and at time 0 for the localized constructor.
  WalkState(int dim, int cap, RawTag) : d_(dim), t_(cap), cap_(cap) {
    check_dimension(dim);
    const auto bytes = state_bytes(dim, cap);
    if (bytes > limits::kMaxStateBytes) {
      throw resource_error("state for dimension " + std::to_string(dim) + ", " +
                           std::to_string(cap) + " steps needs " + std::to_string(bytes) +
                           " bytes, over the " + std::to_string(limits::kMaxStateBytes) +
                           " byte budget");
    }
    const std::size_t side = static_cast<std::size_t>(cap) + 1;
    strides_[d_ - 1] = 1;
    for (int i = d_ - 2; i >= 0; --i) strides_[i] = strides_[i + 1] * side;
    amps_.assign((static_cast<std::size_t>(1) << d_) * strides_[0] * side, Complex{});
  }

  std::size_t plane_size() const noexcept { return strides_[0] * (static_cast<std::size_t>(cap_) + 1); }

  int d_;
  int t_;
  int cap_;
  std::array<std::size_t, kDimMax> strides_{};
  std::vector<Complex> amps_;
};

inline double norm(const WalkState& state) noexcept { return state.norm(); }

}  // namespace qwalk
