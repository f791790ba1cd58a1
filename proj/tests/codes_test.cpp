#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "brute_force.hpp"
#include "rngcal/codes.hpp"

using namespace rngcal;
using rngcal::brute::is_prefix;

TEST(EliasDelta, SmallCodewords) {
  EXPECT_EQ(encode_integer(1).bits.to_ascii(), "1");
  EXPECT_EQ(encode_integer(2).bits.to_ascii(), "0100");
  EXPECT_EQ(encode_integer(3).bits.to_ascii(), "0101");
  EXPECT_EQ(encode_integer(4).bits.to_ascii(), "01100");
  EXPECT_EQ(encode_integer(17).bits.to_ascii(), "001010001");
}

TEST(EliasDelta, ZeroIsRejected) { EXPECT_THROW((void)encode_integer(0), std::invalid_argument); }

TEST(EliasDelta, LengthFormulaAndMonotone) {
  std::size_t previous = 0;
  for (std::uint64_t m = 1; m <= 100000; ++m) {
    const std::size_t len = elias_delta_length(m);
    const unsigned n = floor_log2(m);
    ASSERT_EQ(len, n + 2 * floor_log2(n + 1) + 1);
    ASSERT_GE(len, previous);
    previous = len;
  }
  EXPECT_EQ(encode_integer(UINT64_MAX).bits.size(), elias_delta_length(UINT64_MAX));
}

// |C(m)| - log2 m - 2 log2 log2 (m + 1) over m = 2^1 .. 2^20. The constant
// for this code sits in [-0.614728, 1.671103] (computed directly).
TEST(EliasDelta, LengthLawConstant) {
  double lo = 1e9;
  double hi = -1e9;
  for (int k = 1; k <= 20; ++k) {
    const double m = std::ldexp(1.0, k);
    const double excess = static_cast<double>(elias_delta_length(std::uint64_t{1} << k)) - k -
                          2.0 * std::log2(std::log2(m + 1.0));
    lo = std::min(lo, excess);
    hi = std::max(hi, excess);
  }
  EXPECT_NEAR(lo, -0.614728, 1e-6);
  EXPECT_NEAR(hi, 1.671103, 1e-6);
}

TEST(EliasDelta, RoundTripOneToMillion) {
  for (std::uint64_t m = 1; m <= 1000000; ++m) {
    const Codeword cw = encode_integer(m);
    const DecodedInteger d = decode_integer(cw.bits);
    ASSERT_EQ(d.value, m);
    ASSERT_EQ(d.consumed, cw.bits.size());
  }
}

TEST(EliasDelta, ConcatenationDecodesUnambiguously) {
  BitString stream;
  for (std::uint64_t m : {3, 7, 2}) {
    stream.append(encode_integer(m).bits);
  }
  std::size_t at = 0;
  for (std::uint64_t want : {3, 7, 2}) {
    const DecodedInteger d = decode_integer(stream, at);
    EXPECT_EQ(d.value, want);
    at += d.consumed;
  }
  EXPECT_EQ(at, stream.size());
}

TEST(EliasDelta, RandomConcatenationsRoundTrip) {
  std::mt19937_64 rng(20240611);
  std::geometric_distribution<int> width(0.08);
  for (int trial = 0; trial < 100000; ++trial) {
    const int count = 1 + static_cast<int>(rng() % 6);
    std::vector<std::uint64_t> values;
    BitString stream;
    BitWriter w(stream);
    for (int i = 0; i < count; ++i) {
      const int bits = std::min(63, width(rng));
      const std::uint64_t v = (rng() >> (63 - bits)) | 1u;
      values.push_back(v);
      write_elias_delta(w, v);
    }
    BitReader r(stream);
    for (std::uint64_t v : values) {
      ASSERT_EQ(read_elias_delta(r), v);
    }
    ASSERT_TRUE(r.at_end());
  }
}

TEST(EliasDelta, TruncatedInputReportsOffset) {
  const BitString cw = encode_integer(1000).bits;
  const BitString cut = cw.prefix(cw.size() - 1);
  try {
    (void)decode_integer(cut);
    FAIL() << "expected DecodeError";
  } catch (const DecodeError& e) {
    EXPECT_EQ(e.offset(), cut.size());
  }
  EXPECT_THROW((void)decode_integer(BitString::from_ascii("0000000000")), DecodeError);
}

TEST(EliasDelta, PrefixFreeExhaustivePairs) {
  std::vector<BitString> words;
  for (std::uint64_t m = 1; m <= 4096; ++m) {
    words.push_back(encode_integer(m).bits);
  }
  for (std::size_t a = 0; a < words.size(); ++a) {
    for (std::size_t b = 0; b < words.size(); ++b) {
      if (a != b) {
        ASSERT_FALSE(is_prefix(words[a], words[b])) << a + 1 << " prefixes " << b + 1;
      }
    }
  }
}

// The partial sum over m <= 2^20 is dyadic: groups N = 0..19 contribute
// 1/2 + 1/4 + 1/8 + 1/16 + 5/512, and m = 2^20 adds 2^-29. The remaining
// tail is exactly 1 minus that, so the infinite sum is 1.
TEST(Kraft, EliasDeltaTruncatedSumIsExact) {
  std::vector<std::size_t> lengths;
  for (std::uint64_t m = 1; m <= (std::uint64_t{1} << 20); ++m) {
    lengths.push_back(elias_delta_length(m));
  }
  const long double expected = 0.9375L + 5.0L / 512.0L + std::ldexp(1.0L, -29);
  EXPECT_EQ(kraft_sum(lengths), expected);
  EXPECT_LE(kraft_sum(lengths), 1.0L);
}

TEST(Kraft, SmallExamples) {
  const std::vector<std::size_t> two{1, 1};
  const std::vector<std::size_t> complete{1, 2, 3, 3};
  EXPECT_EQ(kraft_sum(two), 1.0L);
  EXPECT_EQ(kraft_sum(complete), 1.0L);
  EXPECT_EQ(kraft_sum(std::vector<std::size_t>{}), 0.0L);
}

TEST(Kraft, TinyTermsSurviveNextToLargeOnes) {
  std::vector<std::size_t> lengths{1};
  for (int i = 0; i < 1024; ++i) {
    lengths.push_back(70);
  }
  EXPECT_EQ(kraft_sum(lengths), 0.5L + std::ldexp(1.0L, -60));
}

TEST(TruncatedBinary, RoundTripAndPrefixFree) {
  for (std::uint64_t range = 1; range <= 40; ++range) {
    std::vector<BitString> words;
    for (std::uint64_t v = 0; v < range; ++v) {
      BitString s;
      BitWriter w(s);
      write_truncated_binary(w, v, range);
      ASSERT_EQ(s.size(), truncated_binary_length(v, range));
      BitReader r(s);
      ASSERT_EQ(read_truncated_binary(r, range), v);
      words.push_back(s);
    }
    std::vector<std::size_t> lengths;
    for (const auto& w : words) {
      lengths.push_back(w.size());
    }
    if (range > 1) {
      EXPECT_EQ(kraft_sum(lengths), 1.0L) << range;
    }
    for (std::size_t a = 0; a < words.size(); ++a) {
      for (std::size_t b = 0; b < words.size(); ++b) {
        if (a != b) {
          ASSERT_FALSE(is_prefix(words[a], words[b]));
        }
      }
    }
  }
}

TEST(ExpGolomb, RoundTrip) {
  for (unsigned k : {0u, 1u, 3u}) {
    for (std::uint64_t v = 0; v < 5000; ++v) {
      BitString s;
      BitWriter w(s);
      write_exp_golomb(w, v, k);
      ASSERT_EQ(s.size(), exp_golomb_length(v, k));
      BitReader r(s);
      ASSERT_EQ(read_exp_golomb(r, k), v);
    }
  }
}
