#include <bit>
#include <cmath>
#include <cstdint>

#include "rngcal/codes.hpp"
#include "rngcal/lz77.hpp"
#include "rngcal/stats.hpp"

namespace rngcal {
namespace {

class LiteralEstimator final : public ComplexityEstimator {
 public:
  explicit LiteralEstimator(double extra) : extra_(extra) {}
  std::string id() const override { return "literal"; }
  double estimate(const BitString& x) const override { return static_cast<double>(x.size()) + extra_; }
  std::vector<double> prefix_estimates(const BitString& x) const override {
    std::vector<double> out(x.size());
    for (std::size_t m = 1; m <= x.size(); ++m) {
      out[m - 1] = static_cast<double>(m) + extra_;
    }
    return out;
  }

 private:
  double extra_;
};

class Lz77Estimator final : public ComplexityEstimator {
 public:
  explicit Lz77Estimator(lz77::PairLayout layout) : layout_(layout) {}
  std::string id() const override { return "lz77"; }
  double estimate(const BitString& x) const override { return static_cast<double>(lz77::code_length(x, layout_)); }
  std::vector<double> prefix_estimates(const BitString& x) const override {
    const auto lengths = lz77::prefix_code_lengths(x, layout_);
    return {lengths.begin(), lengths.end()};
  }

 private:
  lz77::PairLayout layout_;
};

// ceil(log2 v) for v >= 1.
std::size_t ceil_log2(std::uint64_t v) { return v <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(v - 1)); }

// ceil(log2 C(n, k)), never below the true value. Exact while C(n, k) fits
// in 64 bits; beyond that lgamma is accurate to far better than 1e-6 bits,
// and the floor(v + eps) + 1 form rounds up across an integer boundary.
std::size_t ceil_log2_binomial(std::uint64_t n, std::uint64_t k) {
  k = std::min(k, n - k);
  if (k == 0) {
    return 0;
  }
  if (n <= 60) {
    std::uint64_t c = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
      c = c * (n - k + i) / i;
    }
    return ceil_log2(c);
  }
  const double bits = (std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
                       std::lgamma(static_cast<double>(n - k) + 1.0)) /
                      std::log(2.0);
  return static_cast<std::size_t>(std::floor(bits + 1e-6)) + 1;
}

class EnumerativeEstimator final : public ComplexityEstimator {
 public:
  std::string id() const override { return "enumerative"; }
  double estimate(const BitString& x) const override { return length(x.size(), x.count_ones()); }
  std::vector<double> prefix_estimates(const BitString& x) const override {
    std::vector<double> out(x.size());
    std::size_t ones = 0;
    for (std::size_t m = 1; m <= x.size(); ++m) {
      ones += x[m - 1] ? 1 : 0;
      out[m - 1] = length(m, ones);
    }
    return out;
  }

 private:
  static double length(std::size_t n, std::size_t ones) {
    return static_cast<double>(ceil_log2(static_cast<std::uint64_t>(n) + 1) + ceil_log2_binomial(n, ones));
  }
};

}  // namespace

EstimatorPtr make_literal_estimator(double extra_bits) { return std::make_shared<LiteralEstimator>(extra_bits); }

EstimatorPtr make_lz77_estimator(bool elias_delta_layout) {
  return std::make_shared<Lz77Estimator>(elias_delta_layout ? lz77::PairLayout::kEliasDelta
                                                            : lz77::PairLayout::kContextual);
}

EstimatorPtr make_enumerative_estimator() { return std::make_shared<EnumerativeEstimator>(); }

}  // namespace rngcal
