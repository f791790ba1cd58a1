#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

#include "rngcal/bit_string.hpp"

namespace rngcal {

/// Raised when a bit stream does not hold a valid codeword. `offset` is the
/// 0-based bit position at which decoding gave up.
class DecodeError : public std::runtime_error {
 public:
  DecodeError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at bit " + std::to_string(offset)), offset_(offset) {}
  [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

struct Codeword {
  BitString bits;
  std::size_t source_length = 0;  ///< bits of input this codeword encodes
};

/// Appends bits MSB-first to a BitString.
class BitWriter {
 public:
  explicit BitWriter(BitString& out) : out_(&out) {}

  void put(bool bit) { out_->push_back(bit); }
  /// Writes the low `width` bits of `value`, most significant first.
  void put_bits(std::uint64_t value, unsigned width) {
    for (unsigned i = width; i-- > 0;) {
      out_->push_back((value >> i) & 1u);
    }
  }

 private:
  BitString* out_;
};

class BitReader {
 public:
  explicit BitReader(const BitString& in, std::size_t offset = 0) : in_(&in), pos_(offset) {}

  bool get() {
    if (pos_ >= in_->size()) {
      throw DecodeError("truncated stream", pos_);
    }
    return (*in_)[pos_++];
  }
  std::uint64_t get_bits(unsigned width) {
    std::uint64_t v = 0;
    for (unsigned i = 0; i < width; ++i) {
      v = (v << 1) | static_cast<std::uint64_t>(get());
    }
    return v;
  }
  [[nodiscard]] std::size_t position() const noexcept { return pos_; }
  [[nodiscard]] bool at_end() const noexcept { return pos_ >= in_->size(); }

 private:
  const BitString* in_;
  std::size_t pos_;
};

/// floor(log2 m) for m >= 1.
[[nodiscard]] unsigned floor_log2(std::uint64_t m) noexcept;

// -- Elias delta: the integer code C --------------------------------------
//
// C(m) = gamma(N + 1) followed by the N low bits of m, where N = floor(log2 m)
// and gamma(L) is floor(log2 L) zeros followed by L in binary. Hence
// |C(m)| = N + 2 floor(log2(N + 1)) + 1, and C(1) = "1".
//
// The code is complete: the 2^N integers sharing N contribute 2^(-2j-1) to
// the Kraft sum, where j = floor(log2(N + 1)), and grouping the N values with
// equal j gives sum_j 2^j * 2^(-2j-1) = sum_j 2^(-j-1) = 1. A truncation at
// m <= 2^K therefore leaves a tail of exactly 1 - (partial sum), which is the
// analytic bound the tests compare against.

[[nodiscard]] std::size_t elias_delta_length(std::uint64_t m);
void write_elias_delta(BitWriter& out, std::uint64_t m);
std::uint64_t read_elias_delta(BitReader& in);

/// Standalone codeword C(m). Throws std::invalid_argument for m == 0.
[[nodiscard]] Codeword encode_integer(std::uint64_t m);

struct DecodedInteger {
  std::uint64_t value;
  std::size_t consumed;
};
/// Decodes one C-codeword starting at `offset`.
[[nodiscard]] DecodedInteger decode_integer(const BitString& stream, std::size_t offset = 0);

// -- Context codes used by the LZ77 pair layout -----------------------------

/// Truncated binary code for `value` in [0, range). Zero bits when range == 1.
[[nodiscard]] std::size_t truncated_binary_length(std::uint64_t value, std::uint64_t range);
void write_truncated_binary(BitWriter& out, std::uint64_t value, std::uint64_t range);
std::uint64_t read_truncated_binary(BitReader& in, std::uint64_t range);

/// Exponential-Golomb code of order k for value >= 0.
[[nodiscard]] std::size_t exp_golomb_length(std::uint64_t value, unsigned k);
void write_exp_golomb(BitWriter& out, std::uint64_t value, unsigned k);
std::uint64_t read_exp_golomb(BitReader& in, unsigned k);

/// Kraft sum  sum_i 2^(-lengths[i]), accumulated from the longest length
/// upward in extended precision. Empty input yields 0.
[[nodiscard]] long double kraft_sum(std::span<const std::size_t> lengths);

}  // namespace rngcal
