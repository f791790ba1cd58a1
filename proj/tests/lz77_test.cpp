#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "brute_force.hpp"
#include "rngcal/codes.hpp"
#include "rngcal/lz77.hpp"
#include "rngcal/oracle.hpp"
#include "rngcal/sources.hpp"

using namespace rngcal;
using rngcal::lz77::Pair;
using rngcal::lz77::PairLayout;
using rngcal::brute::ascii;

namespace {

constexpr PairLayout kLayouts[] = {PairLayout::kContextual, PairLayout::kEliasDelta};

BitString random_bits(std::uint64_t seed, std::size_t n) { return ChaChaStream(seed, 99).fair_bits(n); }

}  // namespace

TEST(Lz77Parse, SingleLiteral) {
  const auto p = lz77::parse(ascii("0"));
  ASSERT_EQ(p.pairs.size(), 1u);
  EXPECT_EQ(p.pairs[0], (Pair{0, 0}));
  EXPECT_EQ(p.total_length, 1u);
}

TEST(Lz77Parse, RunUsesOverlappingCopy) {
  const auto p = lz77::parse(ascii("0000"));
  ASSERT_EQ(p.pairs.size(), 2u);
  EXPECT_EQ(p.pairs[0], (Pair{0, 0}));
  EXPECT_EQ(p.pairs[1], (Pair{1, 3}));
}

TEST(Lz77Parse, EmptyInput) {
  const auto p = lz77::parse(BitString{});
  EXPECT_TRUE(p.pairs.empty());
  EXPECT_EQ(p.total_length, 0u);
}

TEST(Lz77Parse, SmallestPositionOnTies) {
  // The final "0" occurs at positions 1 and 4; the leftmost wins.
  const auto p = lz77::parse(ascii("011010"));
  const std::vector<Pair> expected{{0, 0}, {0, 1}, {2, 1}, {1, 2}, {1, 1}};
  EXPECT_EQ(p.pairs, expected);
}

TEST(Lz77Parse, MatchesBruteForceExhaustively) {
  for (std::size_t n = 1; n <= 12; ++n) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
      const BitString x = oracle::word_from_index(v, n);
      ASSERT_EQ(lz77::parse(x).pairs, brute::brute_parse(x).pairs) << x.to_ascii();
    }
  }
}

TEST(Lz77Parse, MatchesBruteForceOnRandomAndBiasedInputs) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const double p = 0.05 + 0.015 * static_cast<double>(seed);
    SourceSpec spec{SourceKind::kBernoulli, {p}, seed};
    const BitString x = generate(spec, 200 + 10 * seed);
    const auto fast = lz77::parse(x);
    ASSERT_EQ(fast.pairs, brute::brute_parse(x).pairs) << "seed " << seed;
    ASSERT_EQ(lz77::expand(fast), x);
  }
}

// pairs(u u) <= pairs(u) + 1: the second copy is one factor at most.
TEST(Lz77Parse, DoubledWordAddsAtMostOnePair) {
  for (std::size_t k = 1; k <= 12; ++k) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << k); ++v) {
      const BitString u = oracle::word_from_index(v, k);
      BitString uu = u;
      uu.append(u);
      ASSERT_LE(lz77::parse(uu).pairs.size(), lz77::parse(u).pairs.size() + 1) << u.to_ascii();
    }
  }
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const BitString u = random_bits(rng(), 1 + rng() % 64);
    BitString uu = u;
    uu.append(u);
    ASSERT_LE(lz77::parse(uu).pairs.size(), lz77::parse(u).pairs.size() + 1);
  }
}

TEST(Lz77Code, SingleLiteralLength) {
  // header C(2) then an empty position field and one raw bit
  EXPECT_EQ(lz77::encode(ascii("0")).bits.size(), elias_delta_length(2) + 1);
  // header C(2), C(1) for the literal marker, one raw bit
  EXPECT_EQ(lz77::encode(ascii("0"), PairLayout::kEliasDelta).bits.size(),
            elias_delta_length(2) + elias_delta_length(1) + 1);
}

TEST(Lz77Code, EmptyInputIsHeaderOnly) {
  for (PairLayout layout : kLayouts) {
    const Codeword cw = lz77::encode(BitString{}, layout);
    EXPECT_EQ(cw.bits.to_ascii(), "1");
    EXPECT_EQ(lz77::code_length(BitString{}, layout), 1u);
    EXPECT_TRUE(lz77::decode(cw, layout).empty());
  }
}

TEST(Lz77Code, SmallRoundTrip) {
  for (PairLayout layout : kLayouts) {
    EXPECT_EQ(lz77::decode(lz77::encode(ascii("0110"), layout), layout).to_ascii(), "0110");
  }
}

TEST(Lz77Code, LosslessExhaustiveUpTo14Bits) {
  for (PairLayout layout : kLayouts) {
    for (std::size_t n = 0; n <= 14; ++n) {
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
        const BitString x = oracle::word_from_index(v, n);
        const Codeword cw = lz77::encode(x, layout);
        ASSERT_EQ(lz77::decode(cw, layout), x);
        ASSERT_EQ(cw.bits.size(), lz77::code_length(x, layout));
      }
    }
  }
}

TEST(Lz77Code, RandomRoundTripAndLengthAgreement) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 3000;
    const double p = (trial % 4 == 0) ? 0.1 : 0.5;
    const BitString x = generate(SourceSpec{SourceKind::kBernoulli, {p}, rng()}, n);
    for (PairLayout layout : kLayouts) {
      const Codeword cw = lz77::encode(x, layout);
      ASSERT_EQ(cw.bits.size(), lz77::code_length(x, layout));
      ASSERT_EQ(lz77::decode(cw, layout), x);
    }
  }
}

TEST(Lz77Code, EliasDeltaLayoutMatchesPairFormula) {
  const BitString x = random_bits(3, 5000);
  std::size_t expected = elias_delta_length(x.size() + 1);
  for (const Pair& pair : lz77::parse(x).pairs) {
    expected += elias_delta_length(pair.position + 1) + (pair.is_literal() ? 1 : elias_delta_length(pair.payload));
  }
  EXPECT_EQ(lz77::code_length(x, PairLayout::kEliasDelta), expected);
}

TEST(Lz77Code, PrefixFreeAcrossLengthsUpTo10) {
  for (PairLayout layout : kLayouts) {
    std::vector<BitString> words;
    for (std::size_t n = 0; n <= 10; ++n) {
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
        words.push_back(lz77::encode(oracle::word_from_index(v, n), layout).bits);
      }
    }
    for (std::size_t a = 0; a < words.size(); ++a) {
      for (std::size_t b = 0; b < words.size(); ++b) {
        if (a != b) {
          ASSERT_FALSE(brute::is_prefix(words[a], words[b])) << a << " " << b;
        }
      }
    }
  }
}

TEST(Lz77Code, KraftWithinLengthClass) {
  for (std::size_t n = 1; n <= 14; ++n) {
    std::vector<std::size_t> lengths;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
      lengths.push_back(lz77::code_length(oracle::word_from_index(v, n)));
    }
    EXPECT_LE(kraft_sum(lengths), 1.0L) << n;
  }
}

TEST(Lz77Code, MalformedStreamsAreRejected) {
  const BitString x = random_bits(8, 400);
  const BitString cw = lz77::encode(x).bits;
  EXPECT_THROW((void)lz77::decode(cw.prefix(cw.size() - 3)), DecodeError);
  BitString trailing = cw;
  trailing.push_back(true);
  EXPECT_THROW((void)lz77::decode(trailing), DecodeError);
  // header claims 3 bits; first pair is a literal; then a copy from
  // position 2 while only 1 bit exists
  BitString bogus;
  BitWriter w(bogus);
  write_elias_delta(w, 4);
  write_elias_delta(w, 1);
  w.put(true);
  write_elias_delta(w, 3);
  write_elias_delta(w, 2);
  EXPECT_THROW((void)lz77::decode(bogus, PairLayout::kEliasDelta), DecodeError);
}

TEST(Lz77Code, PrefixLengthsMatchDirectComputation) {
  const BitString random = random_bits(5, 3000);
  const BitString runs = BitString(500, true);
  const BitString dup = duplication_construction(9, 600);
  for (const BitString* x : {&random, &runs, &dup}) {
    for (PairLayout layout : kLayouts) {
      const auto lengths = lz77::prefix_code_lengths(*x, layout);
      ASSERT_EQ(lengths.size(), x->size());
      for (std::size_t m = 1; m <= x->size(); m += (m < 100 ? 1 : 37)) {
        ASSERT_EQ(lengths[m - 1], lz77::code_length(x->prefix(m), layout)) << m;
      }
      ASSERT_EQ(lengths.back(), lz77::code_length(*x, layout));
    }
  }
}

// Random data expands a little; 1e6 ChaCha bits measured at 1.164.
TEST(Lz77Code, RandomExpansionRatio) {
  const BitString x = random_bits(2024, 1000000);
  const double ratio = static_cast<double>(lz77::code_length(x)) / static_cast<double>(x.size());
  EXPECT_GT(ratio, 1.0);
  EXPECT_LT(ratio, 1.25);
}

TEST(Lz77Code, DuplicationConstructionCompresses) {
  const BitString y = duplication_construction(17, std::size_t{1} << 17);
  EXPECT_LE(static_cast<double>(lz77::code_length(y)) / static_cast<double>(y.size()), 0.75);
}

// |enc(u_0 u_0 ... u_k u_k)| / length for k = 0..3 measured at 2.75, 1.57,
// 0.886, 0.606 for seed 7.
TEST(Lz77Code, DuplicationRatioFallsWithBlockCount) {
  double previous = 1e9;
  for (std::size_t n : {4u, 28u, 508u, 131068u}) {
    const BitString y = duplication_construction(7, n);
    const double ratio = static_cast<double>(lz77::code_length(y)) / static_cast<double>(n);
    EXPECT_LT(ratio, previous) << n;
    previous = ratio;
  }
  EXPECT_LT(previous, 0.62);
}

// |enc(x)| <= |x| + beta * pairs * log2 |x| with beta pinned at 0.75
// (largest observed over 200 random inputs: 0.687).
TEST(Lz77Code, ExpansionBound) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t n = 100 + seed * 500;
    const BitString x = random_bits(seed, n);
    const double pairs = static_cast<double>(lz77::parse(x).pairs.size());
    ASSERT_LE(static_cast<double>(lz77::code_length(x)),
              static_cast<double>(n) + 0.75 * pairs * std::log2(static_cast<double>(n)))
        << seed;
  }
}

// The second copy of x costs O(log |x|): |enc(xx)| <= |enc(x)| + |C(1)| +
// |C(|x|)| + 2 log2 |x| (largest observed slack: 1.90 log2 |x|).
TEST(Lz77Code, SecondCopyIsCheap) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::size_t n = 64 + seed * 300;
    const BitString x = random_bits(seed + 1000, n);
    BitString xx = x;
    xx.append(x);
    const double bound = static_cast<double>(lz77::code_length(x) + elias_delta_length(1) + elias_delta_length(n)) +
                         2.0 * std::log2(static_cast<double>(n));
    ASSERT_LE(static_cast<double>(lz77::code_length(xx)), bound) << seed;
  }
}
