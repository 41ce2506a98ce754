#pragma once

#include <array>
#include <compare>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qwalk/tolerances.hpp"

namespace qwalk {

using Complex = std::complex<double>;

inline constexpr int kDimMax = limits::kDimMax;
inline constexpr int kCoinStatesMax = 1 << kDimMax;

inline constexpr std::string_view kVersion = "0.1.0";

// Thrown when a requested computation exceeds a resource budget (state
// memory, path-sum enumeration).  Distinct from std::invalid_argument so
// callers can map it to a dedicated exit status.
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void check_dimension(int dim) {
  if (dim < 1 || dim > kDimMax) {
    throw std::invalid_argument("walk dimension must be in [1, " +
                                std::to_string(kDimMax) + "], got " +
                                std::to_string(dim));
  }
}

// A site of the d-dimensional integer lattice.  Comparison is lexicographic
// by coordinates (for equal dimensions), which fixes the emission order of
// distributions.
class LatticePoint {
 public:
  LatticePoint() = default;

  LatticePoint(std::initializer_list<int> coords)
      : LatticePoint(std::span<const int>(coords.begin(), coords.size())) {}

  explicit LatticePoint(std::span<const int> coords) : dim_(static_cast<int>(coords.size())) {
    check_dimension(dim_);
    for (int i = 0; i < dim_; ++i) coords_[i] = coords[i];
  }

  int dim() const noexcept { return dim_; }
  int operator[](int axis) const { return coords_[axis]; }

  std::span<const int> coords() const noexcept { return {coords_.data(), static_cast<size_t>(dim_)}; }

  LatticePoint operator-() const {
    LatticePoint p = *this;
    for (int i = 0; i < dim_; ++i) p.coords_[i] = -p.coords_[i];
    return p;
  }

  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;

 private:
  int dim_ = 0;
  std::array<int, kDimMax> coords_{};  // unused trailing entries stay zero
};

// Index into the 2^d-dimensional internal space.  Bit i (axis 0 is the most
// significant of the d used bits) selects the move direction along axis i:
// bit 0 -> +1, bit 1 -> -1.
class CoinIndex {
 public:
  constexpr explicit CoinIndex(int mu) : mu_(mu) {}

  constexpr int value() const noexcept { return mu_; }

  constexpr int bit(int axis, int dim) const { return (mu_ >> (dim - 1 - axis)) & 1; }

  // Displacement of axis `axis` in one shift, +1 or -1.
  constexpr int displacement(int axis, int dim) const { return 1 - 2 * bit(axis, dim); }

 private:
  int mu_;
};

}  // namespace qwalk
