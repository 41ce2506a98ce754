#pragma once

#include <complex>
#include <vector>

#include "qwalk/coins.hpp"
#include "qwalk/stats.hpp"
#include "qwalk/types.hpp"

namespace qwalk::test {

inline Complex cx(double re, double im = 0.0) { return {re, im}; }

inline double max_entry_diff(const CoinOperator& coin, const std::vector<Complex>& expected) {
  double worst = 0.0;
  const auto entries = coin.entries();
  for (size_t i = 0; i < expected.size(); ++i) {
    worst = std::max(worst, std::abs(entries[i] - expected[i]));
  }
  return worst;
}

// Independent Kronecker product used as the tensor-construction oracle.
inline std::vector<Complex> kron(const std::vector<Complex>& a, int na,
                                 const std::vector<Complex>& b, int nb) {
  const int n = na * nb;
  std::vector<Complex> out(static_cast<size_t>(n) * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      out[static_cast<size_t>(r) * n + c] =
          a[static_cast<size_t>(r / nb) * na + c / nb] * b[static_cast<size_t>(r % nb) * nb + c % nb];
    }
  }
  return out;
}

// Largest pointwise probability difference over the union of supports.
inline double max_mass_diff(const Distribution& a, const Distribution& b) {
  double worst = 0.0;
  for (const auto& [point, mass] : a.entries()) {
    worst = std::max(worst, std::abs(mass - b.mass(point)));
  }
  for (const auto& [point, mass] : b.entries()) {
    worst = std::max(worst, std::abs(mass - a.mass(point)));
  }
  return worst;
}

}  // namespace qwalk::test
