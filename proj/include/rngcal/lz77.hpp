#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rngcal/bit_string.hpp"
#include "rngcal/codes.hpp"

namespace rngcal::lz77 {

/// One LZ77 factor. position == 0 marks a literal whose payload is the bit;
/// otherwise the factor copies `payload` bits starting at 1-based `position`
/// of the text produced so far. Copies may overlap the bits they produce.
struct Pair {
  std::uint64_t position = 0;
  std::uint64_t payload = 0;

  [[nodiscard]] bool is_literal() const noexcept { return position == 0; }
  [[nodiscard]] std::uint64_t span() const noexcept { return is_literal() ? 1 : payload; }

  friend bool operator==(const Pair&, const Pair&) = default;
};

struct Parse {
  std::vector<Pair> pairs;
  std::size_t total_length = 0;
};

/// How a parse is serialized. Both layouts start with C(n + 1), n = |x|, so
/// that the codeword set is prefix-free across all input lengths.
enum class PairLayout {
  /// Position as a truncated-binary index over the n_0 + 1 values 0..n_0,
  /// where n_0 is the number of bits already produced; literal bit raw; copy
  /// length as an order-1 Exp-Golomb code of the zigzagged difference to a
  /// running average of previous copy lengths.
  kContextual,
  /// C(p + 1), then the raw literal bit or C(l).
  kEliasDelta,
};

/// Greedy left-to-right factorization with an unbounded window. Each copy is
/// the longest match available at its start, and among equally long matches
/// the one with the smallest position.
[[nodiscard]] Parse parse(const BitString& x);

/// Expands a parse back into bits. Throws std::invalid_argument if a pair
/// points outside the produced prefix.
[[nodiscard]] BitString expand(const Parse& parse);

[[nodiscard]] Codeword encode(const BitString& x, PairLayout layout = PairLayout::kContextual);
[[nodiscard]] BitString decode(const BitString& code, PairLayout layout = PairLayout::kContextual);
[[nodiscard]] inline BitString decode(const Codeword& code, PairLayout layout = PairLayout::kContextual) {
  return decode(code.bits, layout);
}

/// |encode(x)| without materializing the codeword.
[[nodiscard]] std::size_t code_length(const BitString& x, PairLayout layout = PairLayout::kContextual);

/// Entry m - 1 holds code_length(x.prefix(m)) for m = 1..|x|, computed in a
/// single pass over x.
[[nodiscard]] std::vector<std::size_t> prefix_code_lengths(const BitString& x,
                                                           PairLayout layout = PairLayout::kContextual);

}  // namespace rngcal::lz77
