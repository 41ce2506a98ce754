#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/evolve.hpp"
#include "qwalk/lattice_state.hpp"
#include "qwalk/types.hpp"

namespace qwalk {

// Probability mass over lattice sites, kept sorted lexicographically by
// coordinates.  Zero-mass sites are not stored.
class Distribution {
 public:
  using Entry = std::pair<LatticePoint, double>;

  explicit Distribution(int dim) : d_(dim) { check_dimension(dim); }

  int dim() const noexcept { return d_; }
  size_t size() const noexcept { return entries_.size(); }
  const std::vector<Entry>& entries() const noexcept { return entries_; }

  void add(const LatticePoint& point, double mass) {
    if (point.dim() != d_) throw std::invalid_argument("point dimension mismatch");
    if (mass < 0.0) throw std::invalid_argument("negative probability mass");
    if (mass == 0.0) return;
    if (sorted_ && !entries_.empty() && !(entries_.back().first < point)) sorted_ = false;
    entries_.emplace_back(point, mass);
  }

  // Sorts and merges duplicate sites.  add() in ascending order keeps this a no-op.
  void finalize() {
    if (!sorted_) {
      std::sort(entries_.begin(), entries_.end(),
                [](const Entry& a, const Entry& b) { return a.first < b.first; });
      size_t out = 0;
      for (size_t i = 0; i < entries_.size(); ++i) {
        if (out > 0 && entries_[out - 1].first == entries_[i].first) {
          entries_[out - 1].second += entries_[i].second;
        } else {
          entries_[out++] = entries_[i];
        }
      }
      entries_.resize(out);
      sorted_ = true;
    }
  }

  double mass(const LatticePoint& point) const {
    const auto it = std::lower_bound(
        entries_.begin(), entries_.end(), point,
        [](const Entry& e, const LatticePoint& p) { return e.first < p; });
    return (it != entries_.end() && it->first == point) ? it->second : 0.0;
  }

  double total() const noexcept {
    double sum = 0.0;
    for (const Entry& e : entries_) sum += e.second;
    return sum;
  }

 private:
  int d_;
  std::vector<Entry> entries_;
  bool sorted_ = true;
};

// P(x) = sum_mu |amplitude(x, mu)|^2 over the reachable box.
inline Distribution position_distribution(const WalkState& state) {
  Distribution dist(state.dim());
  state.for_each_site([&](std::span<const int> x, std::span<const Complex> amps) {
    double mass = 0.0;
    for (const Complex& a : amps) mass += std::norm(a);
    if (mass > 0.0) dist.add(LatticePoint(x), mass);
  });
  dist.finalize();
  return dist;
}

// Standard deviation sqrt(E[|x|^2] - |E[x]|^2), the square root of the trace
// of the covariance matrix.  Additive over independent axes.
inline double sigma(const Distribution& dist) {
  std::array<double, kDimMax> mean{};
  double second = 0.0;
  for (const auto& [point, mass] : dist.entries()) {
    for (int i = 0; i < dist.dim(); ++i) {
      mean[i] += mass * point[i];
      second += mass * point[i] * point[i];
    }
  }
  double mean_sq = 0.0;
  for (int i = 0; i < dist.dim(); ++i) mean_sq += mean[i] * mean[i];
  return std::sqrt(std::max(second - mean_sq, 0.0));
}

struct SigmaSample {
  int t = 0;
  double sigma = 0.0;
};

struct SigmaSeries {
  std::vector<SigmaSample> samples;
};

struct RegressionResult {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  int t_min = 0;
};

// sigma(position distribution) after every step of the configured walk.
inline SigmaSeries sigma_series(const WalkConfig& config) {
  if (config.steps < 1) throw std::invalid_argument("sigma_series needs at least one step");
  SigmaSeries series;
  series.samples.reserve(config.steps);
  const StepObserver observer = [&series](int t, const WalkState& state) {
    series.samples.push_back({t, sigma(position_distribution(state))});
  };
  if (config.dressed) {
    run_dressed(config, observer);
  } else {
    run(config, observer);
  }
  return series;
}

// Ordinary least squares of sigma on t over samples with t >= t_min.  The
// slope standard error comes from the fit residuals.
inline RegressionResult regress_sigma(const SigmaSeries& series, int t_min = 10) {
  std::vector<SigmaSample> pts;
  for (const SigmaSample& s : series.samples) {
    if (s.t >= t_min) pts.push_back(s);
  }
  const size_t n = pts.size();
  if (n < 3) {
    throw std::invalid_argument("regression needs at least 3 samples with t >= " +
                                std::to_string(t_min) + ", got " + std::to_string(n));
  }
  double t_mean = 0.0, s_mean = 0.0;
  for (const SigmaSample& p : pts) {
    t_mean += p.t;
    s_mean += p.sigma;
  }
  t_mean /= static_cast<double>(n);
  s_mean /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (const SigmaSample& p : pts) {
    sxx += (p.t - t_mean) * (p.t - t_mean);
    sxy += (p.t - t_mean) * (p.sigma - s_mean);
  }
  RegressionResult fit;
  fit.slope = sxy / sxx;
  fit.intercept = s_mean - fit.slope * t_mean;
  fit.t_min = t_min;
  double ssr = 0.0;
  for (const SigmaSample& p : pts) {
    const double r = p.sigma - (fit.slope * p.t + fit.intercept);
    ssr += r * r;
  }
  fit.stderr_slope = std::sqrt(std::max(ssr, 0.0) / (static_cast<double>(n - 2) * sxx));
  return fit;
}

// Sums out every coordinate except `axis` (0-based).
inline Distribution marginal(const Distribution& dist, int axis) {
  if (axis < 0 || axis >= dist.dim()) {
    throw std::invalid_argument("marginal axis " + std::to_string(axis) +
                                " out of range for dimension " + std::to_string(dist.dim()));
  }
  std::map<int, double> acc;
  for (const auto& [point, mass] : dist.entries()) acc[point[axis]] += mass;
  Distribution out(1);
  for (const auto& [x, mass] : acc) out.add(LatticePoint{x}, mass);
  out.finalize();
  return out;
}

// (1/2) sum_x |a(x) - b(x)| over the union of supports.
inline double total_variation(const Distribution& a, const Distribution& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("total_variation: dimension mismatch");
  double sum = 0.0;
  auto ia = a.entries().begin();
  auto ib = b.entries().begin();
  while (ia != a.entries().end() || ib != b.entries().end()) {
    if (ib == b.entries().end() || (ia != a.entries().end() && ia->first < ib->first)) {
      sum += ia->second;
      ++ia;
    } else if (ia == a.entries().end() || ib->first < ia->first) {
      sum += ib->second;
      ++ib;
    } else {
      sum += std::abs(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return 0.5 * sum;
}

// max_x |P(x) - P(-x)|; zero for a distribution symmetric through the origin.
inline double symmetry_defect(const Distribution& dist) {
  double worst = 0.0;
  for (const auto& [point, mass] : dist.entries()) {
    worst = std::max(worst, std::abs(mass - dist.mass(-point)));
  }
  return worst;
}

// Per-axis [min, max] coordinates carrying nonzero mass.
inline std::pair<LatticePoint, LatticePoint> support_bounds(const Distribution& dist) {
  if (dist.entries().empty()) throw std::invalid_argument("empty distribution has no support");
  std::array<int, kDimMax> lo{}, hi{};
  for (int i = 0; i < dist.dim(); ++i) {
    lo[i] = hi[i] = dist.entries().front().first[i];
  }
  for (const auto& [point, mass] : dist.entries()) {
    for (int i = 0; i < dist.dim(); ++i) {
      lo[i] = std::min(lo[i], point[i]);
      hi[i] = std::max(hi[i], point[i]);
    }
  }
  const size_t d = static_cast<size_t>(dist.dim());
  return {LatticePoint(std::span<const int>(lo.data(), d)),
          LatticePoint(std::span<const int>(hi.data(), d))};
}

}  // namespace qwalk
