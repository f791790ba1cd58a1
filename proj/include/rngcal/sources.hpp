#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rngcal/bit_string.hpp"

namespace rngcal {

/// Deterministic ChaCha20 (RFC 8439) keystream used as the reference
/// generator. The 64-bit seed becomes the first 8 key bytes (little-endian,
/// remaining key bytes zero) and the 64-bit stream index the last 8 nonce
/// bytes, so independent Monte-Carlo trials use `ChaChaStream(seed, trial)`.
class ChaChaStream {
 public:
  using Key = std::array<std::uint8_t, 32>;
  using Nonce = std::array<std::uint8_t, 12>;

  explicit ChaChaStream(std::uint64_t seed, std::uint64_t stream = 0);
  ChaChaStream(const Key& key, const Nonce& nonce, std::uint32_t counter = 0);

  /// Next keystream byte.
  std::uint8_t next_byte();
  /// Next 8 keystream bytes, little-endian.
  std::uint64_t next_u64();
  /// Uniform double in [0, 1) from the top 53 bits of next_u64().
  double next_unit();
  /// Fair bits, one keystream bit each, MSB of every byte first.
  BitString fair_bits(std::size_t n);

 private:
  void refill();

  Key key_{};
  Nonce nonce_{};
  std::uint32_t counter_ = 0;
  std::array<std::uint8_t, 64> block_{};
  std::size_t used_ = 64;
};

enum class SourceKind { kBernoulli, kMarkov, kDriftingBias, kRegimeSwitch, kDuplication };

/// Parameterized bit generator description. Parameters by kind:
///   bernoulli  p                         P(bit = 1)
///   markov     a,b  or  p00,p01,p10,p11  P(1 | prev 0) = a, P(1 | prev 1) = b
///   drift      p0,rate                   p_i = clamp(p0 + rate * i), i from 0
///   regime     p1,len1,p2,len2,...       piecewise-constant bias, cycled
///   dup        (none)                    duplication of a fair ChaCha base
struct SourceSpec {
  SourceKind kind = SourceKind::kBernoulli;
  std::vector<double> params{0.5};
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument when parameters are out of range.
  void validate() const;
  /// Canonical compact form, e.g. "bernoulli:0.5:seed=7".
  [[nodiscard]] std::string to_string() const;
};

/// Parses "kind[:p1,p2,...][:seed=N]". Kinds: bernoulli, markov, drift,
/// regime, dup. Throws std::invalid_argument naming the valid kinds.
[[nodiscard]] SourceSpec parse_source_spec(std::string_view text);

/// First n bits of the sequence described by `spec`; generate(spec, n) is a
/// prefix of generate(spec, m) whenever n <= m.
[[nodiscard]] BitString generate(const SourceSpec& spec, std::size_t n);

/// Block k of the duplication layout spans 1-based base positions
/// 2^(2^k) - 1 .. 2^(2^(k+1)) - 2, giving lengths 2, 12, 240, 65280, ...
struct DuplicationBlock {
  std::uint64_t first;  ///< 1-based, inclusive
  std::uint64_t last;   ///< 1-based, inclusive
  [[nodiscard]] std::uint64_t length() const noexcept { return last - first + 1; }
};

/// Block k, for k <= 5 (larger blocks do not fit in 64-bit positions).
[[nodiscard]] DuplicationBlock duplication_block(unsigned k);

/// Minimal base length whose duplication covers n output bits.
[[nodiscard]] std::size_t required_base_length(std::size_t n);

/// First n bits of u_0 u_0 u_1 u_1 u_2 u_2 ... built from `base`. Throws
/// std::invalid_argument if base is shorter than required_base_length(n).
[[nodiscard]] BitString duplication_construction(const BitString& base, std::size_t n);

/// Same, with a base drawn from a fair ChaCha stream seeded by `seed`.
[[nodiscard]] BitString duplication_construction(std::uint64_t seed, std::size_t n);

}  // namespace rngcal
