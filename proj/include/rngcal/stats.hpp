#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rngcal/bit_string.hpp"

namespace rngcal {

/// Significance level alpha, strictly inside (0, 1).
class SignificanceLevel {
 public:
  explicit SignificanceLevel(double alpha);
  [[nodiscard]] double value() const noexcept { return alpha_; }
  /// log2(1 / alpha), the number of bits a code has to save to reject.
  [[nodiscard]] double threshold_bits() const noexcept;

 private:
  double alpha_;
};

/// Non-negative weights w_1, w_2, ... with sum_i w_i <= 1. Used to split a
/// significance level across the members of a battery and as the per-prefix
/// penalty log2(1 / w_m) of the prefix-scanning complexity test.
class WeightSchedule {
 public:
  /// w_i = 1 / (i (i + 1)); the sum telescopes to exactly 1.
  static WeightSchedule omega_star();
  /// Explicit leading weights; the mass left over, 1 - sum(leading), is
  /// spread over later indices in omega_star proportions. Throws if any
  /// weight is negative or the leading sum exceeds 1.
  static WeightSchedule explicit_weights(std::vector<double> leading);

  /// Weight at 1-based index i. Throws std::invalid_argument for i == 0.
  [[nodiscard]] double weight(std::size_t i) const;
  /// log2(1 / w_i); +infinity when w_i == 0.
  [[nodiscard]] double penalty_bits(std::size_t i) const;
  /// Upper bound on the total mass: exact for the built-in forms.
  [[nodiscard]] double total_mass() const noexcept;
  /// Every weight multiplied by c in (0, 1].
  [[nodiscard]] WeightSchedule scaled(double c) const;
  [[nodiscard]] const std::string& id() const noexcept { return id_; }

 private:
  WeightSchedule() = default;

  std::string id_;
  std::vector<double> leading_;
  double tail_mass_ = 1.0;
  double scale_ = 1.0;
};

/// w*_i = 1 / (i (i + 1)).
[[nodiscard]] double omega_star(std::size_t i);

enum class PValueKind { kExact, kUpperBound };
enum class Decision { kAccept, kReject };

struct ComponentResult {
  std::string test_id;
  double statistic = 0.0;
  double p_value = 1.0;
  PValueKind p_value_kind = PValueKind::kUpperBound;
  double weight = 1.0;
};

struct TestReport {
  std::string test_id;
  double statistic = 0.0;  ///< bits
  double p_value = 1.0;
  PValueKind p_value_kind = PValueKind::kUpperBound;
  double alpha = 0.01;
  Decision decision = Decision::kAccept;
  std::vector<ComponentResult> components;
  std::vector<std::string> notes;

  [[nodiscard]] bool rejected() const noexcept { return decision == Decision::kReject; }
};

/// Smallest reported p-value.
inline constexpr double kPValueFloor = 0x1p-1024;

/// Clamps to [kPValueFloor, 1].
[[nodiscard]] double clamp_p_value(double p) noexcept;
/// min(1, 2^-bits), floored.
[[nodiscard]] double p_value_from_bits(double bits) noexcept;

// -- Complexity estimators -------------------------------------------------

/// A computable upper estimate of description length, in bits. Each
/// estimator must be the length function of a code that is prefix-free on
/// every length class {0,1}^n, so that the Kraft counting bound applies.
class ComplexityEstimator {
 public:
  virtual ~ComplexityEstimator() = default;
  [[nodiscard]] virtual std::string id() const = 0;
  [[nodiscard]] virtual double estimate(const BitString& x) const = 0;
  /// Entry m - 1 is estimate(x.prefix(m)). The default evaluates each prefix.
  [[nodiscard]] virtual std::vector<double> prefix_estimates(const BitString& x) const;
};

using EstimatorPtr = std::shared_ptr<const ComplexityEstimator>;

/// |x| + extra_bits: the identity code, never compresses.
[[nodiscard]] EstimatorPtr make_literal_estimator(double extra_bits = 0.0);
/// The LZ77 code length (contextual pair layout unless told otherwise).
[[nodiscard]] EstimatorPtr make_lz77_estimator(bool elias_delta_layout = false);
/// Two-part enumerative code for i.i.d. bits: the ones count k in
/// ceil(log2(n + 1)) bits, then the rank of x among the C(n, k) words with k
/// ones in ceil(log2 C(n, k)) bits.
[[nodiscard]] EstimatorPtr make_enumerative_estimator();

// -- Tests ------------------------------------------------------------------

/// tau_phi(x) = |x| - |phi(x)|.
[[nodiscard]] double compression_statistic(const BitString& x, const ComplexityEstimator& code);

/// Rejects when tau_phi >= log2(1 / alpha). The p-value is the Kraft bound
/// 2^-tau_phi, clamped to 1 for tau_phi <= 0.
[[nodiscard]] TestReport compression_test(const BitString& x, const ComplexityEstimator& code,
                                          SignificanceLevel alpha);

using Statistic = std::function<double(const BitString&)>;

inline constexpr std::size_t kExactPValueMaxBits = 24;

/// |{y in {0,1}^n : tau(y) >= tau(x)}| / 2^n by enumeration. Throws
/// std::length_error when |x| > kExactPValueMaxBits.
[[nodiscard]] double exact_p_value(const BitString& x, const Statistic& tau);

/// min(1, min_i p_i / w_i). Throws std::invalid_argument on an empty list or
/// a p-value outside (0, 1].
[[nodiscard]] double battery_p_value(std::span<const double> p_values, const WeightSchedule& schedule);

/// Combines finished component reports into one battery report. Component i
/// (0-based) gets weight w_{i+1}.
[[nodiscard]] TestReport combine_battery(std::span<const TestReport> components, const WeightSchedule& schedule,
                                         SignificanceLevel alpha);

/// Per-prefix evidence m - Kt(x|_1^m) - log2(1 / w_m) for m = 1..|x|, where
/// Kt(w) = log2(k) + min_j estimate_j(w) over the k estimators.
[[nodiscard]] std::vector<double> tau_k_profile(const BitString& x, std::span<const EstimatorPtr> estimators,
                                                const WeightSchedule& schedule);

/// Ensemble complexity Kt(w) = log2(k) + min_j estimate_j(w).
[[nodiscard]] double ensemble_complexity(const BitString& w, std::span<const EstimatorPtr> estimators);

/// Prefix-scanning complexity test: statistic max over the profile, reject
/// when it reaches log2(1 / alpha). The p-value bound is 2^-statistic since
/// the per-prefix rejection probabilities sum to at most alpha sum_m w_m.
[[nodiscard]] TestReport tau_k_test(const BitString& x, std::span<const EstimatorPtr> estimators,
                                    const WeightSchedule& schedule, SignificanceLevel alpha);

// -- Consistency scan -------------------------------------------------------

/// Returns the first n bits of one fixed sequence.
using PrefixSource = std::function<BitString(std::size_t n)>;
using ConfiguredTest = std::function<TestReport(const BitString&, SignificanceLevel)>;

struct ScanStep {
  std::size_t length = 0;
  double statistic = 0.0;
  double p_value = 1.0;
  bool rejected = false;
};

struct ScanResult {
  std::vector<ScanStep> steps;
  std::optional<std::size_t> first_rejection;
};

/// Runs `test` on prefixes of length start, 2 start, 4 start, ... while the
/// length stays within `budget`, stopping at the first rejection.
[[nodiscard]] ScanResult consistency_scan(const PrefixSource& source, const ConfiguredTest& test,
                                          SignificanceLevel alpha, std::size_t start, std::size_t budget);

// -- Text forms --------------------------------------------------------------

[[nodiscard]] const char* to_string(PValueKind kind) noexcept;
[[nodiscard]] const char* to_string(Decision decision) noexcept;

}  // namespace rngcal
