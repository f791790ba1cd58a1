#pragma once

#include <cstddef>
#include <cstdint>

#include "rngcal/bit_string.hpp"
#include "rngcal/stats.hpp"

// Brute-force and closed-form references. Nothing here calls into the LZ77
// coder or the stats enumeration, so the test suite can check one against
// the other.
namespace rngcal::oracle {

/// Binary Shannon entropy in bits, with 0 log 0 = 0.
[[nodiscard]] double bernoulli_entropy(double p);

/// log2 of the p-value of the statistic tau(y) = mu(y) for i.i.d.
/// mu = Bernoulli(p) under the uniform null:
///   log2 |{y : mu(y) >= mu(x)}| - n.
/// Ties count against randomness. Summed in log space, so it stays finite
/// where the p-value itself underflows. Requires 0 < p < 1.
[[nodiscard]] double known_mu_log2_p_value(const BitString& x, double p);

/// 2^known_mu_log2_p_value, clamped to [kPValueFloor, 1].
[[nodiscard]] double known_mu_p_value(const BitString& x, double p);

inline constexpr std::size_t kMaxEnumerationBits = 20;

/// The same p-value by direct enumeration of {0,1}^n comparing mu(y) with
/// mu(x). Throws std::length_error for n > kMaxEnumerationBits.
[[nodiscard]] double known_mu_p_value_by_enumeration(const BitString& x, double p);

/// Exact p-value |{y : tau(y) >= tau(x)}| / 2^n from a sorted table of all
/// 2^n statistic values. Throws std::length_error for n > kMaxEnumerationBits.
[[nodiscard]] double enumerated_p_value(const BitString& x, const Statistic& tau);

inline constexpr std::size_t kMaxRejectCountBits = 14;

/// Number of x in {0,1}^n that `test` rejects at `alpha`. Throws
/// std::length_error for n > kMaxRejectCountBits.
[[nodiscard]] std::uint64_t exhaustive_reject_count(const ConfiguredTest& test, std::size_t n,
                                                    SignificanceLevel alpha);

/// The word of length n whose bits are the binary digits of v, MSB first.
[[nodiscard]] BitString word_from_index(std::uint64_t v, std::size_t n);

}  // namespace rngcal::oracle
