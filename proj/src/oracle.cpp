#include "rngcal/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace rngcal::oracle {

double bernoulli_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("bernoulli entropy: p must lie in [0, 1]");
  }
  auto term = [](double q) { return q > 0.0 ? -q * std::log2(q) : 0.0; };
  return term(p) + term(1.0 - p);
}

namespace {

long double log2_binomial(std::size_t n, std::size_t k) {
  return (std::lgamma(static_cast<long double>(n) + 1) - std::lgamma(static_cast<long double>(k) + 1) -
          std::lgamma(static_cast<long double>(n - k) + 1)) /
         std::log(2.0L);
}

}  // namespace

double known_mu_log2_p_value(const BitString& x, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("known-mu p-value: p must lie in (0, 1)");
  }
  const std::size_t n = x.size();
  const std::size_t ones = x.count_ones();
  // mu(y) = p^w (1-p)^(n-w) is monotone in the ones count w, increasing for
  // p > 1/2 and decreasing for p < 1/2, so {y : mu(y) >= mu(x)} is a tail.
  std::size_t lo = 0;
  std::size_t hi = n;
  if (p > 0.5) {
    lo = ones;
  } else if (p < 0.5) {
    hi = ones;
  }
  std::vector<long double> terms;
  terms.reserve(hi - lo + 1);
  for (std::size_t w = lo; w <= hi; ++w) {
    terms.push_back(log2_binomial(n, w));
  }
  const long double top = *std::max_element(terms.begin(), terms.end());
  long double acc = 0.0L;
  for (long double t : terms) {
    acc += std::exp2(t - top);
  }
  const long double log2_count = top + std::log2(acc);
  return static_cast<double>(std::min(0.0L, log2_count - static_cast<long double>(n)));
}

double known_mu_p_value(const BitString& x, double p) {
  return clamp_p_value(std::exp2(known_mu_log2_p_value(x, p)));
}

BitString word_from_index(std::uint64_t v, std::size_t n) {
  BitString w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w.set(i, (v >> (n - 1 - i)) & 1u);
  }
  return w;
}

double known_mu_p_value_by_enumeration(const BitString& x, double p) {
  const std::size_t n = x.size();
  if (n > kMaxEnumerationBits) {
    throw std::length_error("known-mu enumeration limited to 20 bits");
  }
  auto mu = [&](const BitString& y) {
    const auto w = static_cast<double>(y.count_ones());
    return std::pow(p, w) * std::pow(1.0 - p, static_cast<double>(n) - w);
  };
  const double target = mu(x);
  std::uint64_t count = 0;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    if (mu(word_from_index(v, n)) >= target) {
      ++count;
    }
  }
  return static_cast<double>(count) / std::exp2(static_cast<double>(n));
}

double enumerated_p_value(const BitString& x, const Statistic& tau) {
  const std::size_t n = x.size();
  if (n > kMaxEnumerationBits) {
    throw std::length_error("p-value enumeration limited to 20 bits");
  }
  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<double> table(total);
  for (std::uint64_t v = 0; v < total; ++v) {
    table[v] = tau(word_from_index(v, n));
  }
  std::sort(table.begin(), table.end());
  const auto first = std::lower_bound(table.begin(), table.end(), tau(x));
  return static_cast<double>(table.end() - first) / static_cast<double>(total);
}

std::uint64_t exhaustive_reject_count(const ConfiguredTest& test, std::size_t n, SignificanceLevel alpha) {
  if (n > kMaxRejectCountBits) {
    throw std::length_error("exhaustive reject count limited to 14 bits");
  }
  std::uint64_t rejected = 0;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    if (test(word_from_index(v, n), alpha).rejected()) {
      ++rejected;
    }
  }
  return rejected;
}

}  // namespace rngcal::oracle
