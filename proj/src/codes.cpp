#include "rngcal/codes.hpp"

#include <bit>
#include <cmath>
#include <map>

namespace rngcal {

unsigned floor_log2(std::uint64_t m) noexcept { return static_cast<unsigned>(std::bit_width(m)) - 1; }

std::size_t elias_delta_length(std::uint64_t m) {
  if (m == 0) {
    throw std::invalid_argument("elias delta: m must be >= 1");
  }
  const unsigned n = floor_log2(m);
  return n + 2 * floor_log2(n + 1) + 1;
}

void write_elias_delta(BitWriter& out, std::uint64_t m) {
  if (m == 0) {
    throw std::invalid_argument("elias delta: m must be >= 1");
  }
  const unsigned n = floor_log2(m);
  const std::uint64_t len = n + 1;
  const unsigned len_bits = floor_log2(len);
  out.put_bits(0, len_bits);
  out.put_bits(len, len_bits + 1);
  out.put_bits(m, n);
}

std::uint64_t read_elias_delta(BitReader& in) {
  const std::size_t start = in.position();
  unsigned zeros = 0;
  while (!in.get()) {
    if (++zeros > 6) {
      throw DecodeError("elias delta: length prefix too long", start);
    }
  }
  const std::uint64_t len = (std::uint64_t{1} << zeros) | in.get_bits(zeros);
  if (len > 64) {
    throw DecodeError("elias delta: value exceeds 64 bits", start);
  }
  const auto n = static_cast<unsigned>(len - 1);
  return (std::uint64_t{1} << n) | in.get_bits(n);
}

Codeword encode_integer(std::uint64_t m) {
  Codeword cw;
  BitWriter w(cw.bits);
  write_elias_delta(w, m);
  cw.source_length = static_cast<std::size_t>(std::bit_width(m));
  return cw;
}

DecodedInteger decode_integer(const BitString& stream, std::size_t offset) {
  BitReader r(stream, offset);
  const std::uint64_t v = read_elias_delta(r);
  return {v, r.position() - offset};
}

std::size_t truncated_binary_length(std::uint64_t value, std::uint64_t range) {
  if (range <= 1) {
    return 0;
  }
  const unsigned k = floor_log2(range);
  const std::uint64_t short_codes = (std::uint64_t{1} << (k + 1)) - range;
  return value < short_codes ? k : k + 1;
}

void write_truncated_binary(BitWriter& out, std::uint64_t value, std::uint64_t range) {
  if (value >= range) {
    throw std::invalid_argument("truncated binary: value out of range");
  }
  if (range <= 1) {
    return;
  }
  const unsigned k = floor_log2(range);
  const std::uint64_t short_codes = (std::uint64_t{1} << (k + 1)) - range;
  if (value < short_codes) {
    out.put_bits(value, k);
  } else {
    out.put_bits(value + short_codes, k + 1);
  }
}

std::uint64_t read_truncated_binary(BitReader& in, std::uint64_t range) {
  if (range <= 1) {
    return 0;
  }
  const unsigned k = floor_log2(range);
  const std::uint64_t short_codes = (std::uint64_t{1} << (k + 1)) - range;
  std::uint64_t v = in.get_bits(k);
  if (v < short_codes) {
    return v;
  }
  v = (v << 1) | static_cast<std::uint64_t>(in.get());
  return v - short_codes;
}

std::size_t exp_golomb_length(std::uint64_t value, unsigned k) {
  const std::uint64_t q = (value >> k) + 1;
  return 2 * floor_log2(q) + 1 + k;
}

void write_exp_golomb(BitWriter& out, std::uint64_t value, unsigned k) {
  const std::uint64_t q = (value >> k) + 1;
  const unsigned n = floor_log2(q);
  out.put_bits(0, n);
  out.put_bits(q, n + 1);
  out.put_bits(value, k);
}

std::uint64_t read_exp_golomb(BitReader& in, unsigned k) {
  const std::size_t start = in.position();
  unsigned zeros = 0;
  while (!in.get()) {
    if (++zeros > 62) {
      throw DecodeError("exp-golomb: prefix too long", start);
    }
  }
  const std::uint64_t q = (std::uint64_t{1} << zeros) | in.get_bits(zeros);
  return ((q - 1) << k) | in.get_bits(k);
}

long double kraft_sum(std::span<const std::size_t> lengths) {
  std::map<std::size_t, std::uint64_t, std::greater<>> histogram;
  for (std::size_t l : lengths) {
    ++histogram[l];
  }
  long double total = 0.0L;
  for (const auto& [len, count] : histogram) {
    total += std::ldexp(static_cast<long double>(count), -static_cast<int>(len));
  }
  return total;
}

}  // namespace rngcal
