#include "rngcal/bit_string.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace rngcal {

BitString::BitString(std::size_t n, bool value) : words_((n + 63) / 64, value ? ~std::uint64_t{0} : 0), size_(n) {
  if (value && (n & 63) != 0) {
    words_.back() &= (std::uint64_t{1} << (n & 63)) - 1;
  }
}

BitString BitString::from_ascii(std::string_view text) {
  BitString out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == '0' || c == '1') {
      out.push_back(c == '1');
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      throw std::invalid_argument(std::string("bit string: unexpected character '") + c + "'");
    }
  }
  return out;
}

void BitString::push_back(bool value) {
  if ((size_ & 63) == 0) {
    words_.push_back(0);
  }
  ++size_;
  set(size_ - 1, value);
}

void BitString::append(const BitString& other) {
  reserve(size_ + other.size_);
  for (std::size_t i = 0; i < other.size_; ++i) {
    push_back(other[i]);
  }
}

BitString BitString::prefix(std::size_t m) const { return slice(0, std::min(m, size_)); }

BitString BitString::slice(std::size_t begin, std::size_t count) const {
  if (begin > size_ || count > size_ - begin) {
    throw std::out_of_range("bit string: slice out of range");
  }
  BitString out(count);
  if ((begin & 63) == 0) {
    std::copy_n(words_.begin() + static_cast<std::ptrdiff_t>(begin >> 6), out.words_.size(), out.words_.begin());
    if ((count & 63) != 0) {
      out.words_.back() &= (std::uint64_t{1} << (count & 63)) - 1;
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      out.set(i, (*this)[begin + i]);
    }
  }
  return out;
}

std::size_t BitString::count_ones() const noexcept {
  std::size_t total = 0;
  for (std::uint64_t w : words_) {
    total += static_cast<std::size_t>(std::popcount(w));
  }
  return total;
}

std::string BitString::to_ascii() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if ((*this)[i]) {
      s[i] = '1';
    }
  }
  return s;
}

std::vector<std::uint8_t> BitString::to_bytes() const {
  std::vector<std::uint8_t> bytes((size_ + 7) / 8, 0);
  for (std::size_t i = 0; i < size_; ++i) {
    if ((*this)[i]) {
      bytes[i >> 3] |= static_cast<std::uint8_t>(0x80u >> (i & 7));
    }
  }
  return bytes;
}

BitString BitString::from_bytes(const std::vector<std::uint8_t>& bytes, std::size_t bit_count) {
  if (bit_count > bytes.size() * 8) {
    throw std::invalid_argument("bit string: bit count exceeds byte payload");
  }
  BitString out(bit_count);
  for (std::size_t i = 0; i < bit_count; ++i) {
    out.set(i, (bytes[i >> 3] >> (7 - (i & 7))) & 1u);
  }
  return out;
}

BitInput::BitInput(std::istream& in, BitFormat format) : in_(&in), format_(format) {
  if (format_ == BitFormat::kFramed) {
    unsigned char header[8];
    if (!in_->read(reinterpret_cast<char*>(header), 8)) {
      throw std::runtime_error("bit file: missing 8-byte length header");
    }
    remaining_ = 0;
    for (int i = 7; i >= 0; --i) {
      remaining_ = (remaining_ << 8) | header[i];
    }
  }
}

BitString BitInput::read(std::size_t max_bits) {
  BitString out;
  if (done_) {
    return out;
  }
  const std::uint64_t want = std::min<std::uint64_t>(max_bits, remaining_);
  if (format_ == BitFormat::kAscii) {
    out.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(want, 1u << 20)));
    char c;
    while (out.size() < want && in_->get(c)) {
      if (c == '0' || c == '1') {
        out.push_back(c == '1');
      } else if (!std::isspace(static_cast<unsigned char>(c))) {
        throw std::runtime_error(std::string("bit file: unexpected character '") + c + "' in ascii input");
      }
    }
    if (out.size() < want) {
      done_ = true;
    }
  } else {
    // Read in bounded chunks: `want` may be effectively unlimited for raw input.
    const std::uint64_t want_bytes = want / 8 + (want % 8 != 0 ? 1 : 0);
    std::vector<std::uint8_t> bytes;
    constexpr std::uint64_t kChunk = 1u << 20;
    while (bytes.size() < want_bytes) {
      const std::size_t have = bytes.size();
      const auto step = static_cast<std::size_t>(std::min<std::uint64_t>(kChunk, want_bytes - have));
      bytes.resize(have + step);
      in_->read(reinterpret_cast<char*>(bytes.data() + have), static_cast<std::streamsize>(step));
      const auto got = static_cast<std::size_t>(in_->gcount());
      bytes.resize(have + got);
      if (got < step) {
        done_ = true;
        break;
      }
    }
    const std::size_t bits = static_cast<std::size_t>(std::min<std::uint64_t>(want, std::uint64_t{bytes.size()} * 8));
    if (format_ == BitFormat::kFramed && bits < want) {
      throw std::runtime_error("bit file: payload shorter than header bit count");
    }
    out = BitString::from_bytes(bytes, bits);
  }
  if (remaining_ != UINT64_MAX) {
    remaining_ -= out.size();
    if (remaining_ == 0) {
      done_ = true;
    }
  }
  return out;
}

BitString read_bits(std::istream& in, BitFormat format, std::size_t max_bits) {
  BitInput input(in, format);
  return input.read(max_bits);
}

void write_bits(std::ostream& out, const BitString& bits, BitFormat format) {
  if (format == BitFormat::kAscii) {
    out << bits.to_ascii() << '\n';
    return;
  }
  if (format == BitFormat::kFramed) {
    std::uint64_t n = bits.size();
    char header[8];
    for (char& b : header) {
      b = static_cast<char>(n & 0xff);
      n >>= 8;
    }
    out.write(header, 8);
  }
  const auto bytes = bits.to_bytes();
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

BitString read_bit_file(const std::string& path, BitFormat format, std::size_t max_bits) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "'");
  }
  return read_bits(in, format, max_bits);
}

void write_bit_file(const std::string& path, const BitString& bits, BitFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  write_bits(out, bits, format);
}

}  // namespace rngcal
