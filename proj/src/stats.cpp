#include "rngcal/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace rngcal {

SignificanceLevel::SignificanceLevel(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("significance level must lie in (0, 1)");
  }
}

double SignificanceLevel::threshold_bits() const noexcept { return -std::log2(alpha_); }

double omega_star(std::size_t i) {
  if (i == 0) {
    throw std::invalid_argument("omega_star: index must be >= 1");
  }
  const auto d = static_cast<double>(i);
  return 1.0 / (d * (d + 1.0));
}

WeightSchedule WeightSchedule::omega_star() {
  WeightSchedule s;
  s.id_ = "omega_star";
  return s;
}

WeightSchedule WeightSchedule::explicit_weights(std::vector<double> leading) {
  double sum = 0.0;
  for (double w : leading) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("weight schedule: weights must be finite and non-negative");
    }
    sum += w;
  }
  if (sum > 1.0 + 1e-12) {
    throw std::invalid_argument("weight schedule: weights sum to more than 1");
  }
  WeightSchedule s;
  s.id_ = "custom";
  s.leading_ = std::move(leading);
  s.tail_mass_ = std::max(0.0, 1.0 - sum);
  return s;
}

double WeightSchedule::weight(std::size_t i) const {
  if (i == 0) {
    throw std::invalid_argument("weight schedule: index must be >= 1");
  }
  if (i <= leading_.size()) {
    return scale_ * leading_[i - 1];
  }
  return scale_ * tail_mass_ * rngcal::omega_star(i - leading_.size());
}

double WeightSchedule::penalty_bits(std::size_t i) const {
  if (i == 0) {
    throw std::invalid_argument("weight schedule: index must be >= 1");
  }
  if (leading_.empty() && scale_ == 1.0) {
    const auto d = static_cast<double>(i);
    return std::log2(d) + std::log2(d + 1.0);
  }
  const double w = weight(i);
  return w > 0.0 ? -std::log2(w) : std::numeric_limits<double>::infinity();
}

double WeightSchedule::total_mass() const noexcept {
  const double lead = std::accumulate(leading_.begin(), leading_.end(), 0.0);
  return scale_ * (lead + tail_mass_);
}

WeightSchedule WeightSchedule::scaled(double c) const {
  if (!(c > 0.0 && c <= 1.0)) {
    throw std::invalid_argument("weight schedule: scale must lie in (0, 1]");
  }
  WeightSchedule s = *this;
  s.scale_ *= c;
  return s;
}

double clamp_p_value(double p) noexcept {
  if (std::isnan(p)) {
    return 1.0;
  }
  return std::clamp(p, kPValueFloor, 1.0);
}

double p_value_from_bits(double bits) noexcept {
  if (bits <= 0.0) {
    return 1.0;
  }
  if (bits >= 1024.0) {
    return kPValueFloor;
  }
  return clamp_p_value(std::exp2(-bits));
}

std::vector<double> ComplexityEstimator::prefix_estimates(const BitString& x) const {
  std::vector<double> out(x.size());
  for (std::size_t m = 1; m <= x.size(); ++m) {
    out[m - 1] = estimate(x.prefix(m));
  }
  return out;
}

double compression_statistic(const BitString& x, const ComplexityEstimator& code) {
  return static_cast<double>(x.size()) - code.estimate(x);
}

namespace {

TestReport make_report(std::string id, double statistic, double p_value, PValueKind kind, SignificanceLevel alpha) {
  TestReport r;
  r.test_id = std::move(id);
  r.statistic = statistic;
  r.p_value = clamp_p_value(p_value);
  r.p_value_kind = kind;
  r.alpha = alpha.value();
  r.decision = r.p_value <= r.alpha ? Decision::kReject : Decision::kAccept;
  return r;
}

}  // namespace

TestReport compression_test(const BitString& x, const ComplexityEstimator& code, SignificanceLevel alpha) {
  if (x.empty()) {
    throw std::invalid_argument("compression test: empty input");
  }
  const double tau = compression_statistic(x, code);
  return make_report(code.id(), tau, p_value_from_bits(tau), PValueKind::kUpperBound, alpha);
}

double exact_p_value(const BitString& x, const Statistic& tau) {
  const std::size_t n = x.size();
  if (n > kExactPValueMaxBits) {
    throw std::length_error("exact p-value: enumeration over more than 2^24 sequences refused");
  }
  const double observed = tau(x);
  const std::uint64_t total = std::uint64_t{1} << n;
  std::uint64_t at_least = 0;
  BitString y(n);
  for (std::uint64_t v = 0; v < total; ++v) {
    for (std::size_t i = 0; i < n; ++i) {
      y.set(i, (v >> (n - 1 - i)) & 1u);
    }
    if (tau(y) >= observed) {
      ++at_least;
    }
  }
  return static_cast<double>(at_least) / static_cast<double>(total);
}

double battery_p_value(std::span<const double> p_values, const WeightSchedule& schedule) {
  if (p_values.empty()) {
    throw std::invalid_argument("battery p-value: no component p-values");
  }
  double best = 1.0;
  for (std::size_t i = 0; i < p_values.size(); ++i) {
    const double p = p_values[i];
    if (!(p > 0.0 && p <= 1.0)) {
      throw std::invalid_argument("battery p-value: component p-value outside (0, 1]");
    }
    const double w = schedule.weight(i + 1);
    if (w > 0.0) {
      best = std::min(best, p / w);
    }
  }
  return best;
}

TestReport combine_battery(std::span<const TestReport> components, const WeightSchedule& schedule,
                           SignificanceLevel alpha) {
  std::vector<double> ps;
  TestReport out;
  out.test_id = "battery";
  for (std::size_t i = 0; i < components.size(); ++i) {
    const TestReport& c = components[i];
    ps.push_back(c.p_value);
    out.components.push_back({c.test_id, c.statistic, c.p_value, c.p_value_kind, schedule.weight(i + 1)});
    out.notes.insert(out.notes.end(), c.notes.begin(), c.notes.end());
  }
  const double p = battery_p_value(ps, schedule);
  // The combined statistic is reported in bits, like its components.
  out.statistic = p >= 1.0 ? 0.0 : -std::log2(p);
  out.p_value = clamp_p_value(p);
  out.p_value_kind = components.size() == 1 ? components[0].p_value_kind : PValueKind::kUpperBound;
  out.alpha = alpha.value();
  out.decision = out.p_value <= out.alpha ? Decision::kReject : Decision::kAccept;
  return out;
}

double ensemble_complexity(const BitString& w, std::span<const EstimatorPtr> estimators) {
  if (estimators.empty()) {
    throw std::invalid_argument("complexity ensemble: no estimators");
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : estimators) {
    best = std::min(best, e->estimate(w));
  }
  return std::log2(static_cast<double>(estimators.size())) + best;
}

std::vector<double> tau_k_profile(const BitString& x, std::span<const EstimatorPtr> estimators,
                                  const WeightSchedule& schedule) {
  if (estimators.empty()) {
    throw std::invalid_argument("tau_k: at least one estimator is required");
  }
  std::vector<double> best(x.size(), std::numeric_limits<double>::infinity());
  for (const auto& e : estimators) {
    const std::vector<double> est = e->prefix_estimates(x);
    for (std::size_t m = 0; m < x.size(); ++m) {
      best[m] = std::min(best[m], est[m]);
    }
  }
  const double surcharge = std::log2(static_cast<double>(estimators.size()));
  std::vector<double> profile(x.size());
  for (std::size_t m = 1; m <= x.size(); ++m) {
    profile[m - 1] = static_cast<double>(m) - (surcharge + best[m - 1]) - schedule.penalty_bits(m);
  }
  return profile;
}

TestReport tau_k_test(const BitString& x, std::span<const EstimatorPtr> estimators, const WeightSchedule& schedule,
                      SignificanceLevel alpha) {
  if (x.empty()) {
    throw std::invalid_argument("tau_k: empty input");
  }
  const std::vector<double> profile = tau_k_profile(x, estimators, schedule);
  const auto top = std::max_element(profile.begin(), profile.end());
  TestReport r = make_report("tauk", *top, p_value_from_bits(*top), PValueKind::kUpperBound, alpha);
  r.notes.push_back("tauk: strongest prefix m=" + std::to_string(static_cast<std::size_t>(top - profile.begin()) + 1));
  return r;
}

ScanResult consistency_scan(const PrefixSource& source, const ConfiguredTest& test, SignificanceLevel alpha,
                            std::size_t start, std::size_t budget) {
  if (start == 0) {
    throw std::invalid_argument("consistency scan: start length must be >= 1");
  }
  ScanResult result;
  for (std::size_t n = start; n <= budget; n *= 2) {
    const BitString prefix = source(n);
    if (prefix.size() < n) {
      break;
    }
    const TestReport r = test(prefix, alpha);
    result.steps.push_back({n, r.statistic, r.p_value, r.rejected()});
    if (r.rejected()) {
      result.first_rejection = n;
      break;
    }
    if (n > budget / 2) {
      break;
    }
  }
  return result;
}

const char* to_string(PValueKind kind) noexcept { return kind == PValueKind::kExact ? "exact" : "upper_bound"; }

const char* to_string(Decision decision) noexcept { return decision == Decision::kReject ? "reject" : "accept"; }

}  // namespace rngcal
