#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace rngcal {

/// An ordered sequence of bits x_1 x_2 ... x_n.
///
/// Storage is packed into 64-bit words; the unused tail of the last word is
/// always zero so that equality and hashing never see padding. Element access
/// through operator[] is 0-based like every other C++ container, so x_i of the
/// mathematical notation lives at index i - 1, and prefix(m) is x|_1^m.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t n, bool value = false);

  /// Parses '0'/'1' characters; whitespace is skipped, anything else throws.
  static BitString from_ascii(std::string_view text);

  [[nodiscard]] std::size_t size() const noexcept { return size_; }
  [[nodiscard]] bool empty() const noexcept { return size_ == 0; }

  [[nodiscard]] bool operator[](std::size_t i) const noexcept {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i, bool value) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }

  void push_back(bool value);
  void append(const BitString& other);
  void reserve(std::size_t n) { words_.reserve((n + 63) / 64); }

  /// First m bits (x|_1^m). m is clamped to size().
  [[nodiscard]] BitString prefix(std::size_t m) const;
  /// Bits [begin, begin + count).
  [[nodiscard]] BitString slice(std::size_t begin, std::size_t count) const;

  [[nodiscard]] std::size_t count_ones() const noexcept;
  [[nodiscard]] std::string to_ascii() const;

  /// Packs the bits MSB-first into bytes; the last byte is zero-padded.
  [[nodiscard]] std::vector<std::uint8_t> to_bytes() const;
  /// Unpacks `bit_count` bits MSB-first from `bytes`.
  static BitString from_bytes(const std::vector<std::uint8_t>& bytes, std::size_t bit_count);

  friend bool operator==(const BitString& a, const BitString& b) noexcept {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }

 private:
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

/// Encoding used for bit streams on disk.
enum class BitFormat {
  kRaw,    ///< packed bytes, MSB-first, no header
  kFramed, ///< 8-byte little-endian bit count followed by packed bytes
  kAscii,  ///< '0'/'1' characters, whitespace ignored on input
};

/// Incremental reader over a bit stream, used to consume inputs in chunks.
/// Chunk sizes other than the final one should be multiples of 8 for the
/// byte-oriented formats; otherwise the remaining bits of a partially used
/// byte are dropped.
class BitInput {
 public:
  BitInput(std::istream& in, BitFormat format);

  /// Returns up to `max_bits` further bits; an empty result means end of input.
  BitString read(std::size_t max_bits);
  [[nodiscard]] bool exhausted() const noexcept { return done_; }

 private:
  std::istream* in_;
  BitFormat format_;
  std::uint64_t remaining_ = UINT64_MAX;
  bool done_ = false;
};

/// Reads at most `max_bits` bits. Throws std::runtime_error on malformed input.
BitString read_bits(std::istream& in, BitFormat format, std::size_t max_bits = SIZE_MAX);
void write_bits(std::ostream& out, const BitString& bits, BitFormat format);

BitString read_bit_file(const std::string& path, BitFormat format, std::size_t max_bits = SIZE_MAX);
void write_bit_file(const std::string& path, const BitString& bits, BitFormat format);

}  // namespace rngcal
