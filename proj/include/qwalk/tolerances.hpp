#pragma once

#include <cstdint>

// All numeric tolerances and resource limits live here so that every module
// checks against the same constants.

namespace qwalk::tol {

// Named coin constructors must produce matrices with max |C†C - I| below this.
inline constexpr double kCoinUnitarity = 1e-12;

// User-supplied matrices are rejected as non-unitary beyond this.
inline constexpr double kCoinAdmission = 1e-9;

// Internal states are rejected if the squared norm deviates from 1 by more
// than this (accepted states are renormalized exactly).
inline constexpr double kInternalNormAdmission = 1e-9;

// Allowed drift of the total state norm over a full evolution.
inline constexpr double kNormDrift = 1e-10;

// A probability distribution must sum to 1 within this.
inline constexpr double kDistributionNorm = 1e-10;

// Max per-amplitude deviation between the state-vector engine and the
// brute-force path-sum computation.
inline constexpr double kOracleAgreement = 1e-10;

}  // namespace qwalk::tol

namespace qwalk::limits {

// Walk dimension d is restricted to [1, kDimMax]; state size grows as
// (steps+1)^d * 2^d and d = 4 is already the practical ceiling.
inline constexpr int kDimMax = 4;

// Largest state allocation a run will attempt.  Checked up front from
// (dim, steps) before any memory is touched.
inline constexpr std::uint64_t kMaxStateBytes = std::uint64_t{1} << 31;  // 2 GiB

// The path-sum oracle enumerates 2^(d*steps) coin sequences; refuse beyond this.
inline constexpr int kPathSumBudget = 12;

}  // namespace qwalk::limits
