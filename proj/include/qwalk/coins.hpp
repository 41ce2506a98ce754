#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qwalk/tolerances.hpp"
#include "qwalk/types.hpp"

namespace qwalk {

namespace detail {

// max_{r,c} |(C†C - I)(r,c)| together with the offending entry.
struct UnitarityDefect {
  double error = 0.0;
  int row = 0;
  int col = 0;
};

inline UnitarityDefect unitarity_defect(std::span<const Complex> m, int n) {
  UnitarityDefect worst;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      Complex sum{};
      for (int k = 0; k < n; ++k) sum += std::conj(m[k * n + r]) * m[k * n + c];
      const double err = std::abs(sum - (r == c ? Complex{1.0, 0.0} : Complex{}));
      if (err > worst.error) worst = {err, r, c};
    }
  }
  return worst;
}

}  // namespace detail

// A 2^d x 2^d unitary acting on the internal space.  Immutable once built;
// construction rejects matrices whose unitarity defect exceeds `tolerance`.
class CoinOperator {
 public:
  CoinOperator(int dim, std::vector<Complex> entries, double tolerance = tol::kCoinAdmission)
      : d_(dim), n_(1 << dim), entries_(std::move(entries)) {
    check_dimension(d_);
    if (entries_.size() != static_cast<size_t>(n_) * n_) {
      throw std::invalid_argument("coin matrix for dimension " + std::to_string(d_) +
                                  " must have " + std::to_string(n_ * n_) + " entries, got " +
                                  std::to_string(entries_.size()));
    }
    const auto defect = detail::unitarity_defect(entries_, n_);
    if (!(defect.error <= tolerance)) {
      std::ostringstream msg;
      msg << "coin matrix is not unitary: |(C†C - I)(" << defect.row << "," << defect.col
          << ")| = " << defect.error << " exceeds " << tolerance;
      throw std::invalid_argument(msg.str());
    }
  }

  int dim() const noexcept { return d_; }
  int size() const noexcept { return n_; }

  const Complex& operator()(int row, int col) const { return entries_[static_cast<size_t>(row) * n_ + col]; }

  std::span<const Complex> entries() const noexcept { return entries_; }

 private:
  int d_;
  int n_;
  std::vector<Complex> entries_;
};

inline double unitarity_error(const CoinOperator& coin) {
  return detail::unitarity_defect(coin.entries(), coin.size()).error;
}

// d-fold tensor power of the Hadamard matrix.  Entry (mu, nu) is
// 2^(-d/2) * (-1)^popcount(mu & nu).
inline CoinOperator hadamard_tensor(int dim) {
  check_dimension(dim);
  const int n = 1 << dim;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<Complex> m(static_cast<size_t>(n) * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const bool odd = std::popcount(static_cast<unsigned>(r & c)) & 1;
      m[static_cast<size_t>(r) * n + c] = odd ? -scale : scale;
    }
  }
  return CoinOperator(dim, std::move(m));
}

// 2^d-point discrete Fourier transform: entry (nu, mu) = 2^(-d/2) * exp(2*pi*i*mu*nu / 2^d).
// For d = 1 this is the Hadamard matrix.
inline CoinOperator dft(int dim) {
  check_dimension(dim);
  const int n = 1 << dim;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<Complex> m(static_cast<size_t>(n) * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const double angle = 2.0 * std::numbers::pi * ((static_cast<long>(r) * c) % n) / n;
      m[static_cast<size_t>(r) * n + c] = scale * Complex{std::cos(angle), std::sin(angle)};
    }
  }
  return CoinOperator(dim, std::move(m));
}

// Grover diffusion: 2/2^d * J - I.  Equal-weight columns only at d = 2.
inline CoinOperator grover(int dim) {
  check_dimension(dim);
  const int n = 1 << dim;
  const double off = 2.0 / n;
  std::vector<Complex> m(static_cast<size_t>(n) * n, Complex{off, 0.0});
  for (int r = 0; r < n; ++r) m[static_cast<size_t>(r) * n + r] -= 1.0;
  return CoinOperator(dim, std::move(m));
}

// Relative-phase rotation between |+> and |->: diag(e^{i*beta/2}, e^{-i*beta/2}).
// beta is reduced into [0, 2*pi) first.
inline CoinOperator phase_rotation(double beta) {
  if (!std::isfinite(beta)) throw std::invalid_argument("phase_rotation: beta must be finite");
  const double two_pi = 2.0 * std::numbers::pi;
  beta = std::fmod(beta, two_pi);
  if (beta < 0.0) beta += two_pi;
  const Complex up = std::polar(1.0, beta / 2.0);
  std::vector<Complex> m{up, Complex{}, Complex{}, std::conj(up)};
  return CoinOperator(1, std::move(m));
}

// Conjugates `base` by a per-axis phase rotation, qubit i receiving betas[i]:
// (R(b_1) x ... x R(b_d)) * base * (R(b_1) x ... x R(b_d))^-1.  The rotation
// tensor is diagonal, with entry mu equal to exp(i/2 * sum_i v_i(mu) * b_i).
inline CoinOperator dressed_coin(const CoinOperator& base, std::span<const double> betas) {
  const int dim = base.dim();
  if (static_cast<int>(betas.size()) != dim) {
    throw std::invalid_argument("dressed_coin: expected " + std::to_string(dim) +
                                " phases, got " + std::to_string(betas.size()));
  }
  const int n = base.size();
  std::vector<Complex> diag(n);
  for (int mu = 0; mu < n; ++mu) {
    double phase = 0.0;
    for (int axis = 0; axis < dim; ++axis) phase += CoinIndex(mu).displacement(axis, dim) * betas[axis];
    diag[mu] = std::polar(1.0, phase / 2.0);
  }
  std::vector<Complex> m(static_cast<size_t>(n) * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      m[static_cast<size_t>(r) * n + c] = diag[r] * base(r, c) * std::conj(diag[c]);
    }
  }
  return CoinOperator(dim, std::move(m));
}

// Validates a user-supplied matrix (row-major, 2^d x 2^d).  Rejection carries
// the worst-entry diagnostic from the CoinOperator constructor.
inline CoinOperator custom_coin(int dim, std::vector<Complex> entries) {
  return CoinOperator(dim, std::move(entries), tol::kCoinAdmission);
}

}  // namespace qwalk
