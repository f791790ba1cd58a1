#include "rngcal/lz77.hpp"

#include <array>
#include <limits>
#include <stdexcept>

namespace rngcal::lz77 {
namespace {

// Suffix automaton of the whole input. first_end[v] is the smallest end
// index (0-based, inclusive) of any occurrence of the strings in state v, so
// the leftmost occurrence of a string of length t in v starts at
// first_end[v] - t + 1.
class SuffixAutomaton {
 public:
  explicit SuffixAutomaton(const BitString& x) {
    if (x.size() >= (std::size_t{1} << 30)) {
      throw std::length_error("lz77: input too long for the match index");
    }
    states_.reserve(2 * x.size() + 1);
    states_.push_back({{-1, -1}, -1, 0, -1});
    for (std::size_t i = 0; i < x.size(); ++i) {
      extend(x[i] ? 1 : 0, static_cast<std::int32_t>(i));
    }
  }

  [[nodiscard]] std::int32_t next(std::int32_t v, int c) const { return states_[v].next[c]; }
  [[nodiscard]] std::int32_t first_end(std::int32_t v) const { return states_[v].first_end; }

 private:
  struct State {
    std::array<std::int32_t, 2> next;
    std::int32_t link;
    std::int32_t len;
    std::int32_t first_end;
  };

  void extend(int c, std::int32_t pos) {
    const auto cur = static_cast<std::int32_t>(states_.size());
    states_.push_back({{-1, -1}, 0, states_[last_].len + 1, pos});
    std::int32_t p = last_;
    while (p != -1 && states_[p].next[c] == -1) {
      states_[p].next[c] = cur;
      p = states_[p].link;
    }
    if (p != -1) {
      const std::int32_t q = states_[p].next[c];
      if (states_[p].len + 1 == states_[q].len) {
        states_[cur].link = q;
      } else {
        const auto clone = static_cast<std::int32_t>(states_.size());
        State copy = states_[q];
        copy.len = states_[p].len + 1;
        states_.push_back(copy);
        while (p != -1 && states_[p].next[c] == q) {
          states_[p].next[c] = clone;
          p = states_[p].link;
        }
        states_[q].link = clone;
        states_[cur].link = clone;
      }
    }
    last_ = cur;
  }

  std::vector<State> states_;
  std::int32_t last_ = 0;
};

// Walks the longest match of x[i..] against occurrences starting before i.
// Calls on_length(t, start) for every usable length t = 1, 2, ... with the
// leftmost 0-based start of x[i, i + t). Returns the maximal length.
template <typename OnLength>
std::size_t walk_match(const SuffixAutomaton& sam, const BitString& x, std::size_t i, OnLength&& on_length) {
  std::int32_t state = 0;
  std::size_t len = 0;
  while (i + len < x.size()) {
    const std::int32_t t = sam.next(state, x[i + len] ? 1 : 0);
    if (t < 0) {
      break;
    }
    const std::int64_t start = static_cast<std::int64_t>(sam.first_end(t)) - static_cast<std::int64_t>(len);
    if (start >= static_cast<std::int64_t>(i)) {
      break;
    }
    state = t;
    ++len;
    on_length(len, static_cast<std::size_t>(start));
  }
  return len;
}

std::uint64_t zigzag(std::int64_t v) {
  return v >= 0 ? static_cast<std::uint64_t>(v) * 2 : static_cast<std::uint64_t>(-v) * 2 - 1;
}

std::int64_t unzigzag(std::uint64_t v) {
  return (v & 1) ? -static_cast<std::int64_t>((v + 1) / 2) : static_cast<std::int64_t>(v / 2);
}

constexpr unsigned kLengthGolombOrder = 1;

// Per-pair cost model and serializer. The contextual layout keeps a
// running average of copy lengths (fixed point, 4 fractional bits, weight 1/4)
// that encoder and decoder update identically.
class PairCoder {
 public:
  explicit PairCoder(PairLayout layout) : layout_(layout) {}

  [[nodiscard]] std::size_t literal_cost(std::size_t produced) const {
    if (layout_ == PairLayout::kEliasDelta) {
      return elias_delta_length(1) + 1;
    }
    return truncated_binary_length(0, produced + 1) + 1;
  }

  [[nodiscard]] std::size_t copy_cost(std::size_t produced, std::uint64_t position, std::uint64_t length) const {
    if (layout_ == PairLayout::kEliasDelta) {
      return elias_delta_length(position + 1) + elias_delta_length(length);
    }
    return truncated_binary_length(position, produced + 1) +
           exp_golomb_length(zigzag(static_cast<std::int64_t>(length) - predicted(produced)), kLengthGolombOrder);
  }

  void write(BitWriter& out, std::size_t produced, const Pair& pair) const {
    if (layout_ == PairLayout::kEliasDelta) {
      write_elias_delta(out, pair.position + 1);
      if (pair.is_literal()) {
        out.put(pair.payload != 0);
      } else {
        write_elias_delta(out, pair.payload);
      }
      return;
    }
    write_truncated_binary(out, pair.position, produced + 1);
    if (pair.is_literal()) {
      out.put(pair.payload != 0);
    } else {
      write_exp_golomb(out, zigzag(static_cast<std::int64_t>(pair.payload) - predicted(produced)),
                       kLengthGolombOrder);
    }
  }

  [[nodiscard]] Pair read(BitReader& in, std::size_t produced) const {
    Pair pair;
    if (layout_ == PairLayout::kEliasDelta) {
      pair.position = read_elias_delta(in) - 1;
      pair.payload = pair.is_literal() ? static_cast<std::uint64_t>(in.get()) : read_elias_delta(in);
      return pair;
    }
    pair.position = read_truncated_binary(in, produced + 1);
    if (pair.is_literal()) {
      pair.payload = static_cast<std::uint64_t>(in.get());
    } else {
      const std::int64_t len = predicted(produced) + unzigzag(read_exp_golomb(in, kLengthGolombOrder));
      pair.payload = len > 0 ? static_cast<std::uint64_t>(len) : 0;
    }
    return pair;
  }

  void observe(const Pair& pair) {
    if (pair.is_literal()) {
      return;
    }
    const auto scaled = static_cast<std::int64_t>(pair.payload) * 16;
    if (!has_average_) {
      average16_ = scaled;
      has_average_ = true;
    } else {
      average16_ += (scaled - average16_) / 4;
    }
  }

 private:
  [[nodiscard]] std::int64_t predicted(std::size_t produced) const {
    if (has_average_) {
      return std::max<std::int64_t>(1, (average16_ + 8) / 16);
    }
    return std::max<std::int64_t>(1, produced > 0 ? floor_log2(produced) : 0);
  }

  PairLayout layout_;
  std::int64_t average16_ = 0;
  bool has_average_ = false;
};

std::size_t header_length(std::size_t n) { return elias_delta_length(static_cast<std::uint64_t>(n) + 1); }

}  // namespace

Parse parse(const BitString& x) {
  Parse out;
  out.total_length = x.size();
  if (x.empty()) {
    return out;
  }
  const SuffixAutomaton sam(x);
  std::size_t i = 0;
  while (i < x.size()) {
    std::size_t start = 0;
    const std::size_t len = walk_match(sam, x, i, [&](std::size_t, std::size_t s) { start = s; });
    if (len == 0) {
      out.pairs.push_back({0, x[i] ? 1u : 0u});
      ++i;
    } else {
      out.pairs.push_back({start + 1, len});
      i += len;
    }
  }
  return out;
}

BitString expand(const Parse& parse) {
  BitString out;
  out.reserve(parse.total_length);
  for (const Pair& pair : parse.pairs) {
    if (pair.is_literal()) {
      if (pair.payload > 1) {
        throw std::invalid_argument("lz77: literal payload must be a single bit");
      }
      out.push_back(pair.payload != 0);
      continue;
    }
    if (pair.position > out.size() || pair.payload == 0) {
      throw std::invalid_argument("lz77: copy refers outside the produced prefix");
    }
    const std::size_t from = pair.position - 1;
    for (std::uint64_t t = 0; t < pair.payload; ++t) {
      out.push_back(out[from + t]);
    }
  }
  return out;
}

Codeword encode(const BitString& x, PairLayout layout) {
  Codeword cw;
  cw.source_length = x.size();
  BitWriter out(cw.bits);
  write_elias_delta(out, static_cast<std::uint64_t>(x.size()) + 1);
  PairCoder coder(layout);
  std::size_t produced = 0;
  for (const Pair& pair : parse(x).pairs) {
    coder.write(out, produced, pair);
    coder.observe(pair);
    produced += pair.span();
  }
  return cw;
}

BitString decode(const BitString& code, PairLayout layout) {
  BitReader in(code);
  const std::uint64_t n = read_elias_delta(in) - 1;
  BitString out;
  out.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(n, code.size() * 64)));
  PairCoder coder(layout);
  while (out.size() < n) {
    const std::size_t at = in.position();
    const Pair pair = coder.read(in, out.size());
    if (pair.is_literal()) {
      if (pair.payload > 1) {
        throw DecodeError("lz77: bad literal", at);
      }
      out.push_back(pair.payload != 0);
    } else {
      if (pair.position > out.size() || pair.payload == 0 || pair.payload > n - out.size()) {
        throw DecodeError("lz77: copy outside the produced prefix", at);
      }
      const std::size_t from = pair.position - 1;
      for (std::uint64_t t = 0; t < pair.payload; ++t) {
        out.push_back(out[from + t]);
      }
    }
    coder.observe(pair);
  }
  if (!in.at_end()) {
    throw DecodeError("lz77: trailing bits after codeword", in.position());
  }
  return out;
}

std::size_t code_length(const BitString& x, PairLayout layout) {
  std::size_t total = header_length(x.size());
  PairCoder coder(layout);
  std::size_t produced = 0;
  for (const Pair& pair : parse(x).pairs) {
    total += pair.is_literal() ? coder.literal_cost(produced) : coder.copy_cost(produced, pair.position, pair.payload);
    coder.observe(pair);
    produced += pair.span();
  }
  return total;
}

// The greedy parse of x|_1^m is the parse of x with its last factor cut at m:
// a match of length t <= m - i against a start j < i ends before m. Only the
// leftmost position of the shortened factor can differ, and walk_match
// reports it for every intermediate length.
std::vector<std::size_t> prefix_code_lengths(const BitString& x, PairLayout layout) {
  std::vector<std::size_t> lengths(x.size());
  if (x.empty()) {
    return lengths;
  }
  const SuffixAutomaton sam(x);
  PairCoder coder(layout);
  std::size_t body = 0;
  std::size_t i = 0;
  while (i < x.size()) {
    std::size_t start = 0;
    const std::size_t len = walk_match(sam, x, i, [&](std::size_t t, std::size_t s) {
      start = s;
      const std::size_t m = i + t;
      lengths[m - 1] = header_length(m) + body + coder.copy_cost(i, s + 1, t);
    });
    Pair pair;
    std::size_t cost = 0;
    if (len == 0) {
      pair = {0, x[i] ? 1u : 0u};
      cost = coder.literal_cost(i);
      lengths[i] = header_length(i + 1) + body + cost;
    } else {
      pair = {start + 1, len};
      cost = coder.copy_cost(i, pair.position, pair.payload);
    }
    body += cost;
    coder.observe(pair);
    i += pair.span();
  }
  return lengths;
}

}  // namespace rngcal::lz77
