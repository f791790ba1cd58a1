#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rngcal/oracle.hpp"
#include "rngcal/sources.hpp"
#include "rngcal/stats.hpp"

using namespace rngcal;

TEST(Entropy, KnownValues) {
  EXPECT_DOUBLE_EQ(oracle::bernoulli_entropy(0.5), 1.0);
  EXPECT_EQ(oracle::bernoulli_entropy(0.0), 0.0);
  EXPECT_EQ(oracle::bernoulli_entropy(1.0), 0.0);
  EXPECT_NEAR(oracle::bernoulli_entropy(0.3), 0.8812908992306927, 1e-10);
  EXPECT_NEAR(oracle::bernoulli_entropy(0.2), 0.7219280948873623, 1e-10);
  EXPECT_THROW((void)oracle::bernoulli_entropy(1.5), std::invalid_argument);
}

TEST(KnownMu, FairCoinGivesOne) {
  const BitString x = generate(SourceSpec{SourceKind::kBernoulli, {0.2}, 1}, 500);
  EXPECT_DOUBLE_EQ(oracle::known_mu_p_value(x, 0.5), 1.0);
}

TEST(KnownMu, SmallCases) {
  EXPECT_DOUBLE_EQ(oracle::known_mu_p_value(BitString::from_ascii("111"), 0.9), 1.0 / 8.0);
  EXPECT_DOUBLE_EQ(oracle::known_mu_p_value(BitString::from_ascii("000"), 0.9), 1.0);
  EXPECT_DOUBLE_EQ(oracle::known_mu_p_value(BitString::from_ascii("0001"), 0.2), 5.0 / 16.0);
  EXPECT_THROW((void)oracle::known_mu_p_value(BitString(3), 1.0), std::invalid_argument);
}

// The p-value depends on x only through its ones count, so one word per count
// covers every distinct case.
TEST(KnownMu, BinomialTailMatchesEnumerationForEveryCount) {
  for (double p : {0.1, 0.3, 0.45, 0.7}) {
    for (std::size_t n = 1; n <= 14; ++n) {
      for (std::size_t w = 0; w <= n; ++w) {
        const BitString x = oracle::word_from_index((std::uint64_t{1} << w) - 1, n);
        EXPECT_NEAR(oracle::known_mu_p_value(x, p), oracle::known_mu_p_value_by_enumeration(x, p), 1e-12)
            << p << " " << n << " " << w;
      }
    }
  }
}

TEST(KnownMu, BinomialTailMatchesEnumerationSampled) {
  std::mt19937_64 rng(3);
  for (double p : {0.1, 0.3, 0.45}) {
    for (int trial = 0; trial < 6; ++trial) {
      const std::size_t n = 15 + trial;
      const BitString x = oracle::word_from_index(rng() & ((std::uint64_t{1} << n) - 1), n);
      EXPECT_NEAR(oracle::known_mu_p_value(x, p), oracle::known_mu_p_value_by_enumeration(x, p), 1e-12);
    }
  }
}

TEST(KnownMu, LogSpaceSurvivesUnderflow) {
  const BitString x(200000);
  const double lp = oracle::known_mu_log2_p_value(x, 0.2);
  EXPECT_NEAR(lp, -200000.0, 1e-6);
  EXPECT_EQ(oracle::known_mu_p_value(x, 0.2), kPValueFloor);
}

TEST(Enumeration, LengthGuards) {
  const Statistic zero = [](const BitString&) { return 0.0; };
  EXPECT_THROW((void)oracle::enumerated_p_value(BitString(21), zero), std::length_error);
  EXPECT_THROW((void)oracle::known_mu_p_value_by_enumeration(BitString(21), 0.3), std::length_error);
  const ConfiguredTest accept = [](const BitString&, SignificanceLevel a) { return TestReport{.alpha = a.value()}; };
  EXPECT_THROW((void)oracle::exhaustive_reject_count(accept, 15, SignificanceLevel(0.1)), std::length_error);
}

TEST(Enumeration, AgreesWithStatsExactPValue) {
  const auto code = make_lz77_estimator();
  const Statistic tau = [&](const BitString& y) { return compression_statistic(y, *code); };
  const Statistic ones = [](const BitString& y) { return static_cast<double>(y.count_ones()); };
  for (std::uint64_t v = 0; v < 256; v += 5) {
    const BitString x = oracle::word_from_index(v, 8);
    EXPECT_DOUBLE_EQ(exact_p_value(x, tau), oracle::enumerated_p_value(x, tau));
    EXPECT_DOUBLE_EQ(exact_p_value(x, ones), oracle::enumerated_p_value(x, ones));
  }
}

TEST(Enumeration, AlwaysAcceptCountsZero) {
  const ConfiguredTest accept = [](const BitString&, SignificanceLevel a) { return TestReport{.alpha = a.value()}; };
  for (std::size_t n = 0; n <= 10; ++n) {
    EXPECT_EQ(oracle::exhaustive_reject_count(accept, n, SignificanceLevel(0.5)), 0u);
  }
}

TEST(Enumeration, WordFromIndexIsMsbFirst) {
  EXPECT_EQ(oracle::word_from_index(6, 4), BitString::from_ascii("0110"));
  EXPECT_EQ(oracle::word_from_index(1, 3), BitString::from_ascii("001"));
}
