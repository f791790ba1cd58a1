#include "rngcal/sources.hpp"

#include <sodium.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rngcal {

ChaChaStream::ChaChaStream(std::uint64_t seed, std::uint64_t stream) {
  for (int i = 0; i < 8; ++i) {
    key_[i] = static_cast<std::uint8_t>(seed >> (8 * i));
    nonce_[4 + i] = static_cast<std::uint8_t>(stream >> (8 * i));
  }
}

ChaChaStream::ChaChaStream(const Key& key, const Nonce& nonce, std::uint32_t counter)
    : key_(key), nonce_(nonce), counter_(counter) {}

void ChaChaStream::refill() {
  static const bool ready = sodium_init() >= 0;
  if (!ready) {
    throw std::runtime_error("libsodium initialization failed");
  }
  static const std::array<std::uint8_t, 64> zeros{};
  crypto_stream_chacha20_ietf_xor_ic(block_.data(), zeros.data(), block_.size(), nonce_.data(), counter_,
                                     key_.data());
  ++counter_;
  used_ = 0;
}

std::uint8_t ChaChaStream::next_byte() {
  if (used_ == block_.size()) {
    refill();
  }
  return block_[used_++];
}

std::uint64_t ChaChaStream::next_u64() {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) {
    v |= static_cast<std::uint64_t>(next_byte()) << (8 * i);
  }
  return v;
}

double ChaChaStream::next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1p-53; }

BitString ChaChaStream::fair_bits(std::size_t n) {
  BitString out(n);
  std::uint8_t byte = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if ((i & 7) == 0) {
      byte = next_byte();
    }
    out.set(i, (byte >> (7 - (i & 7))) & 1u);
  }
  return out;
}

namespace {

constexpr const char* kValidKinds = "valid kinds: bernoulli:p, markov:a,b, drift:p0,rate, regime:p1,len1,..., dup";

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

const char* kind_name(SourceKind kind) {
  switch (kind) {
    case SourceKind::kBernoulli:
      return "bernoulli";
    case SourceKind::kMarkov:
      return "markov";
    case SourceKind::kDriftingBias:
      return "drift";
    case SourceKind::kRegimeSwitch:
      return "regime";
    case SourceKind::kDuplication:
      return "dup";
  }
  return "?";
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t begin = 0;
  while (true) {
    const std::size_t at = s.find(sep, begin);
    parts.push_back(s.substr(begin, at - begin));
    if (at == std::string_view::npos) {
      break;
    }
    begin = at + 1;
  }
  return parts;
}

double parse_double(std::string_view token) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) {
    throw std::invalid_argument("source spec: bad number '" + std::string(token) + "'");
  }
  return v;
}

// Markov parameters normalized to {P(1|0), P(1|1)}.
std::pair<double, double> markov_rates(const std::vector<double>& p) {
  if (p.size() == 2) {
    return {p[0], p[1]};
  }
  return {p[1], p[3]};
}

}  // namespace

void SourceSpec::validate() const {
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument(std::string("source spec ") + kind_name(kind) + ": " + why);
  };
  switch (kind) {
    case SourceKind::kBernoulli:
      if (params.size() != 1 || !is_probability(params[0])) {
        fail("expects one probability p in [0, 1]");
      }
      break;
    case SourceKind::kMarkov:
      if (params.size() != 2 && params.size() != 4) {
        fail("expects P(1|0),P(1|1) or a 2x2 row-major transition matrix");
      }
      for (double p : params) {
        if (!is_probability(p)) {
          fail("transition probabilities must lie in [0, 1]");
        }
      }
      if (params.size() == 4 &&
          (std::abs(params[0] + params[1] - 1.0) > 1e-12 || std::abs(params[2] + params[3] - 1.0) > 1e-12)) {
        fail("transition matrix rows must sum to 1");
      }
      break;
    case SourceKind::kDriftingBias:
      if (params.size() != 2 || !is_probability(params[0]) || !std::isfinite(params[1])) {
        fail("expects p0 in [0, 1] and a finite rate");
      }
      break;
    case SourceKind::kRegimeSwitch:
      if (params.empty() || params.size() % 2 != 0) {
        fail("expects pairs p,length");
      }
      for (std::size_t i = 0; i < params.size(); i += 2) {
        if (!is_probability(params[i])) {
          fail("segment probabilities must lie in [0, 1]");
        }
        if (!(params[i + 1] >= 1.0) || params[i + 1] != std::floor(params[i + 1])) {
          fail("segment lengths must be positive integers");
        }
      }
      break;
    case SourceKind::kDuplication:
      if (!params.empty()) {
        fail("takes no parameters");
      }
      break;
  }
}

std::string SourceSpec::to_string() const {
  std::ostringstream out;
  out.precision(17);
  out << kind_name(kind);
  if (!params.empty()) {
    out << ':';
    for (std::size_t i = 0; i < params.size(); ++i) {
      out << (i ? "," : "") << params[i];
    }
  }
  out << ":seed=" << seed;
  return out.str();
}

SourceSpec parse_source_spec(std::string_view text) {
  const auto fields = split(text, ':');
  SourceSpec spec;
  spec.params.clear();
  const std::string_view kind = fields[0];
  if (kind == "bernoulli") {
    spec.kind = SourceKind::kBernoulli;
  } else if (kind == "markov") {
    spec.kind = SourceKind::kMarkov;
  } else if (kind == "drift") {
    spec.kind = SourceKind::kDriftingBias;
  } else if (kind == "regime") {
    spec.kind = SourceKind::kRegimeSwitch;
  } else if (kind == "dup") {
    spec.kind = SourceKind::kDuplication;
  } else {
    throw std::invalid_argument("unknown source kind '" + std::string(kind) + "'; " + kValidKinds);
  }
  bool have_params = false;
  for (std::size_t i = 1; i < fields.size(); ++i) {
    const std::string_view f = fields[i];
    if (f.starts_with("seed=")) {
      const std::string_view digits = f.substr(5);
      const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), spec.seed);
      if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty()) {
        throw std::invalid_argument("source spec: bad seed '" + std::string(digits) + "'");
      }
    } else if (!have_params && !f.empty()) {
      for (std::string_view token : split(f, ',')) {
        spec.params.push_back(parse_double(token));
      }
      have_params = true;
    } else {
      throw std::invalid_argument("source spec: unexpected field '" + std::string(f) + "'; " + kValidKinds);
    }
  }
  spec.validate();
  return spec;
}

BitString generate(const SourceSpec& spec, std::size_t n) {
  spec.validate();
  if (spec.kind == SourceKind::kDuplication) {
    return duplication_construction(spec.seed, n);
  }
  ChaChaStream rng(spec.seed);
  BitString out(n);
  const auto& p = spec.params;
  switch (spec.kind) {
    case SourceKind::kBernoulli:
      for (std::size_t i = 0; i < n; ++i) {
        out.set(i, rng.next_unit() < p[0]);
      }
      break;
    case SourceKind::kMarkov: {
      const auto [after0, after1] = markov_rates(p);
      bool prev = false;
      for (std::size_t i = 0; i < n; ++i) {
        const double q = i == 0 ? 0.5 : (prev ? after1 : after0);
        prev = rng.next_unit() < q;
        out.set(i, prev);
      }
      break;
    }
    case SourceKind::kDriftingBias:
      for (std::size_t i = 0; i < n; ++i) {
        const double q = std::clamp(p[0] + p[1] * static_cast<double>(i), 0.0, 1.0);
        out.set(i, rng.next_unit() < q);
      }
      break;
    case SourceKind::kRegimeSwitch: {
      std::size_t segment = 0;
      std::size_t left = static_cast<std::size_t>(p[1]);
      for (std::size_t i = 0; i < n; ++i) {
        if (left == 0) {
          segment = (segment + 2) % p.size();
          left = static_cast<std::size_t>(p[segment + 1]);
        }
        out.set(i, rng.next_unit() < p[segment]);
        --left;
      }
      break;
    }
    case SourceKind::kDuplication:
      break;
  }
  return out;
}

DuplicationBlock duplication_block(unsigned k) {
  if (k > 5) {
    throw std::out_of_range("duplication block index beyond 64-bit positions");
  }
  const unsigned lo_exp = 1u << k;
  const unsigned hi_exp = 1u << (k + 1);
  const std::uint64_t first = (std::uint64_t{1} << lo_exp) - 1;
  const std::uint64_t last = hi_exp >= 64 ? UINT64_MAX - 1 : (std::uint64_t{1} << hi_exp) - 2;
  return {first, last};
}

std::size_t required_base_length(std::size_t n) {
  std::uint64_t out_pos = 0;
  for (unsigned k = 0;; ++k) {
    const DuplicationBlock b = duplication_block(k);
    const std::uint64_t len = b.length();
    const std::uint64_t base_before = b.first - 1;
    if (n <= out_pos + len) {
      return static_cast<std::size_t>(base_before + (n - out_pos));
    }
    if (n <= out_pos + 2 * len) {
      return static_cast<std::size_t>(base_before + len);
    }
    out_pos += 2 * len;
  }
}

BitString duplication_construction(const BitString& base, std::size_t n) {
  const std::size_t need = required_base_length(n);
  if (base.size() < need) {
    throw std::invalid_argument("duplication construction: base has " + std::to_string(base.size()) +
                                " bits, " + std::to_string(need) + " required for " + std::to_string(n) +
                                " output bits");
  }
  BitString out;
  out.reserve(n);
  for (unsigned k = 0; out.size() < n; ++k) {
    const DuplicationBlock b = duplication_block(k);
    for (int copy = 0; copy < 2 && out.size() < n; ++copy) {
      for (std::uint64_t pos = b.first; pos <= b.last && out.size() < n; ++pos) {
        out.push_back(base[static_cast<std::size_t>(pos - 1)]);
      }
    }
  }
  return out;
}

BitString duplication_construction(std::uint64_t seed, std::size_t n) {
  ChaChaStream rng(seed);
  return duplication_construction(rng.fair_bits(required_base_length(n)), n);
}

}  // namespace rngcal
