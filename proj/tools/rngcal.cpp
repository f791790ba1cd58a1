// rngcal: compression-based randomness tests for bit streams.
//
//   rngcal test --input FILE [--format raw|framed|ascii] [--tests lz77,tauk] [--alpha A]
//   rngcal gen SPEC --bits N [--format ascii] [--out FILE]
//   rngcal scan --source SPEC [--tests lz77] [--alpha A] [--start N] [--budget N]
//
// Exit status: 0 accept, 1 reject, 2 usage or I/O error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rngcal/bit_string.hpp"
#include "rngcal/lz77.hpp"
#include "rngcal/report_json.hpp"
#include "rngcal/sources.hpp"
#include "rngcal/stats.hpp"

namespace {

constexpr const char* kToolVersion = "0.1.0";
constexpr int kExitAccept = 0;
constexpr int kExitReject = 1;
constexpr int kExitError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string input;   // path, "-" for stdin
  std::string source;  // SourceSpec string, used when no input is given
  std::string format = "raw";
  std::vector<std::string> tests{"lz77"};
  std::vector<std::string> estimators{"literal", "lz77", "enumerative"};
  std::string layout = "contextual";
  double alpha = 0.01;
  std::string schedule = "omega_star";
  std::vector<double> weights;
  std::size_t max_bits = 0;  // 0: no limit
  std::size_t memory_cap_bits = std::size_t{1} << 24;
  std::string output = "text";
  std::size_t start = 1024;
  std::size_t budget = std::size_t{1} << 20;
};

rngcal::BitFormat parse_format(const std::string& f) {
  if (f == "raw") return rngcal::BitFormat::kRaw;
  if (f == "framed") return rngcal::BitFormat::kFramed;
  if (f == "ascii") return rngcal::BitFormat::kAscii;
  throw UsageError("unknown format '" + f + "' (raw, framed, ascii)");
}

rngcal::lz77::PairLayout parse_layout(const std::string& l) {
  if (l == "contextual") return rngcal::lz77::PairLayout::kContextual;
  if (l == "elias-delta") return rngcal::lz77::PairLayout::kEliasDelta;
  throw UsageError("unknown layout '" + l + "' (contextual, elias-delta)");
}

rngcal::WeightSchedule make_schedule(const RunConfig& cfg) {
  if (!cfg.weights.empty()) {
    return rngcal::WeightSchedule::explicit_weights(cfg.weights);
  }
  if (cfg.schedule == "omega_star") {
    return rngcal::WeightSchedule::omega_star();
  }
  throw UsageError("unknown schedule '" + cfg.schedule + "' (omega_star, or give --weights)");
}

std::vector<rngcal::EstimatorPtr> make_estimators(const RunConfig& cfg) {
  std::vector<rngcal::EstimatorPtr> out;
  const bool elias = parse_layout(cfg.layout) == rngcal::lz77::PairLayout::kEliasDelta;
  for (const std::string& id : cfg.estimators) {
    if (id == "literal") {
      out.push_back(rngcal::make_literal_estimator());
    } else if (id == "lz77") {
      out.push_back(rngcal::make_lz77_estimator(elias));
    } else if (id == "enumerative") {
      out.push_back(rngcal::make_enumerative_estimator());
    } else {
      throw UsageError("unknown estimator '" + id + "' (literal, lz77, enumerative)");
    }
  }
  if (out.empty()) {
    throw UsageError("at least one estimator is required for tauk");
  }
  return out;
}

void validate(const RunConfig& cfg) {
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
    throw UsageError("--alpha must lie in (0, 1)");
  }
  if (cfg.tests.empty()) {
    throw UsageError("no tests selected");
  }
  for (const std::string& t : cfg.tests) {
    if (t != "lz77" && t != "tauk") {
      throw UsageError("unknown test '" + t + "' (lz77, tauk)");
    }
  }
  if (cfg.memory_cap_bits < 8) {
    throw UsageError("--memory-cap-bits must be at least 8");
  }
  parse_format(cfg.format);
  parse_layout(cfg.layout);
}

// Runs one configured test on an in-memory sample.
rngcal::TestReport run_single(const std::string& id, const rngcal::BitString& x, const RunConfig& cfg,
                              rngcal::SignificanceLevel alpha) {
  if (id == "lz77") {
    const auto code = rngcal::make_lz77_estimator(parse_layout(cfg.layout) == rngcal::lz77::PairLayout::kEliasDelta);
    return rngcal::compression_test(x, *code, alpha);
  }
  const auto estimators = make_estimators(cfg);
  return rngcal::tau_k_test(x, estimators, rngcal::WeightSchedule::omega_star(), alpha);
}

rngcal::TestReport run_tests(const rngcal::BitString& x, const RunConfig& cfg) {
  const rngcal::SignificanceLevel alpha(cfg.alpha);
  if (cfg.tests.size() == 1) {
    return run_single(cfg.tests[0], x, cfg, alpha);
  }
  std::vector<rngcal::TestReport> parts;
  for (const std::string& id : cfg.tests) {
    parts.push_back(run_single(id, x, cfg, alpha));
  }
  return rngcal::combine_battery(parts, make_schedule(cfg), alpha);
}

// LZ77 over independent windows of `window` bits. Each window's codeword is
// self-delimiting, so the concatenation is still a prefix-free code and the
// Kraft bound on the p-value holds; long-range repeats are invisible.
rngcal::TestReport windowed_lz77(rngcal::BitInput& in, std::vector<rngcal::BitString> pending,
                                 const RunConfig& cfg, std::size_t limit, std::size_t& total_bits) {
  const auto layout = parse_layout(cfg.layout);
  double saved = 0.0;
  total_bits = 0;
  auto consume = [&](const rngcal::BitString& chunk) {
    total_bits += chunk.size();
    saved += static_cast<double>(chunk.size()) - static_cast<double>(rngcal::lz77::code_length(chunk, layout));
  };
  for (const auto& chunk : pending) {
    consume(chunk);
  }
  pending.clear();
  while (total_bits < limit) {
    const rngcal::BitString chunk = in.read(std::min(cfg.memory_cap_bits, limit - total_bits));
    if (chunk.empty()) {
      break;
    }
    consume(chunk);
  }
  const rngcal::SignificanceLevel alpha(cfg.alpha);
  rngcal::TestReport r;
  r.test_id = "lz77";
  r.statistic = saved;
  r.p_value = rngcal::p_value_from_bits(saved);
  r.p_value_kind = rngcal::PValueKind::kUpperBound;
  r.alpha = alpha.value();
  r.decision = r.p_value <= r.alpha ? rngcal::Decision::kReject : rngcal::Decision::kAccept;
  r.notes.push_back("bounded-window (non-consistent) mode: window " + std::to_string(cfg.memory_cap_bits) + " bits");
  return r;
}

nlohmann::ordered_json config_json(const RunConfig& cfg) {
  nlohmann::ordered_json c;
  c["tests"] = cfg.tests;
  c["alpha"] = cfg.alpha;
  c["schedule"] = cfg.weights.empty() ? cfg.schedule : "custom";
  if (!cfg.weights.empty()) {
    c["weights"] = cfg.weights;
  }
  c["estimators"] = cfg.estimators;
  c["layout"] = cfg.layout;
  c["format"] = cfg.format;
  c["max_bits"] = cfg.max_bits;
  return c;
}

void print_report(const rngcal::TestReport& r, const RunConfig& cfg, const std::string& input_name,
                  std::size_t bits) {
  if (cfg.output == "json") {
    nlohmann::ordered_json j = rngcal::report_to_json(r);
    j["input"] = {{"name", input_name}, {"bits", bits}};
    j["config"] = config_json(cfg);
    j["tool_version"] = kToolVersion;
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::cout << "input:      " << input_name << " (" << bits << " bits)\n";
  for (const auto& c : r.components) {
    std::cout << "component:  " << c.test_id << " statistic=" << c.statistic << " bits p<=" << c.p_value
              << " weight=" << c.weight << '\n';
  }
  std::cout << "test:       " << r.test_id << '\n'
            << "statistic:  " << r.statistic << " bits\n"
            << "p-value:    " << r.p_value << " (" << rngcal::to_string(r.p_value_kind) << ")\n"
            << "alpha:      " << r.alpha << '\n'
            << "decision:   " << rngcal::to_string(r.decision) << '\n';
  for (const auto& note : r.notes) {
    std::cout << "note:       " << note << '\n';
  }
}

int cmd_test(const RunConfig& cfg) {
  validate(cfg);
  const auto format = parse_format(cfg.format);
  const std::size_t limit = cfg.max_bits == 0 ? SIZE_MAX : cfg.max_bits;
  std::string name;
  rngcal::BitString x;
  rngcal::TestReport report;

  if (cfg.input.empty() && !cfg.source.empty()) {
    if (cfg.max_bits == 0) {
      throw UsageError("--source needs --max-bits to bound the sample");
    }
    name = cfg.source;
    x = rngcal::generate(rngcal::parse_source_spec(cfg.source), cfg.max_bits);
    report = run_tests(x, cfg);
    print_report(report, cfg, name, x.size());
    return report.rejected() ? kExitReject : kExitAccept;
  }

  std::ifstream file;
  std::istream* stream = &std::cin;
  if (cfg.input.empty() || cfg.input == "-") {
    name = "<stdin>";
  } else {
    file.open(cfg.input, std::ios::binary);
    if (!file) {
      throw std::runtime_error("cannot open '" + cfg.input + "'");
    }
    stream = &file;
    name = cfg.input;
  }
  rngcal::BitInput in(*stream, format);
  const std::size_t window = cfg.memory_cap_bits / 8 * 8;
  rngcal::BitString first = in.read(std::min(window, limit));
  rngcal::BitString second = first.size() < limit ? in.read(std::min(window, limit - first.size()))
                                                  : rngcal::BitString{};
  if (second.empty()) {
    x = std::move(first);
    if (x.empty()) {
      throw std::runtime_error("input holds no bits");
    }
    report = run_tests(x, cfg);
    print_report(report, cfg, name, x.size());
    return report.rejected() ? kExitReject : kExitAccept;
  }
  if (cfg.tests.size() != 1 || cfg.tests[0] != "lz77") {
    throw std::runtime_error("input exceeds --memory-cap-bits; only the lz77 test has a bounded-window mode");
  }
  std::size_t total = 0;
  std::vector<rngcal::BitString> pending;
  pending.push_back(std::move(first));
  pending.push_back(std::move(second));
  report = windowed_lz77(in, std::move(pending), cfg, limit, total);
  print_report(report, cfg, name, total);
  return report.rejected() ? kExitReject : kExitAccept;
}

int cmd_gen(const std::string& spec_text, std::size_t bits, const std::string& format_name,
            const std::string& out_path) {
  const auto spec = rngcal::parse_source_spec(spec_text);
  const auto format = parse_format(format_name);
  const rngcal::BitString x = rngcal::generate(spec, bits);
  if (out_path.empty() || out_path == "-") {
    rngcal::write_bits(std::cout, x, format);
    std::cout.flush();
  } else {
    rngcal::write_bit_file(out_path, x, format);
  }
  return kExitAccept;
}

int cmd_scan(const RunConfig& cfg) {
  validate(cfg);
  rngcal::PrefixSource source;
  std::string name;
  if (!cfg.source.empty()) {
    const auto spec = rngcal::parse_source_spec(cfg.source);
    name = cfg.source;
    source = [spec](std::size_t n) { return rngcal::generate(spec, n); };
  } else {
    auto data = std::make_shared<rngcal::BitString>(
        cfg.input.empty() || cfg.input == "-" ? rngcal::read_bits(std::cin, parse_format(cfg.format), cfg.budget)
                                              : rngcal::read_bit_file(cfg.input, parse_format(cfg.format), cfg.budget));
    name = cfg.input.empty() ? "<stdin>" : cfg.input;
    source = [data](std::size_t n) { return data->prefix(n); };
  }
  const rngcal::ConfiguredTest test = [&cfg](const rngcal::BitString& x, rngcal::SignificanceLevel alpha) {
    RunConfig local = cfg;
    local.alpha = alpha.value();
    return run_tests(x, local);
  };
  const rngcal::ScanResult scan =
      rngcal::consistency_scan(source, test, rngcal::SignificanceLevel(cfg.alpha), cfg.start, cfg.budget);
  if (cfg.output == "json") {
    nlohmann::ordered_json j = rngcal::scan_to_json(scan);
    j["input"] = {{"name", name}};
    j["config"] = config_json(cfg);
    j["config"]["start"] = cfg.start;
    j["config"]["budget"] = cfg.budget;
    j["tool_version"] = kToolVersion;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "input: " << name << '\n';
    for (const auto& s : scan.steps) {
      std::cout << "n=" << s.length << " statistic=" << s.statistic << " bits p<=" << s.p_value << ' '
                << (s.rejected ? "reject" : "accept") << '\n';
    }
    if (scan.first_rejection) {
      std::cout << "first rejection: " << *scan.first_rejection << " bits\n";
    } else {
      std::cout << "first rejection: none within budget " << cfg.budget << " bits\n";
    }
  }
  return scan.first_rejection ? kExitReject : kExitAccept;
}

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--format", cfg.format, "input format: raw, framed, ascii");
  cmd->add_option("--tests", cfg.tests, "comma-separated tests in battery order: lz77, tauk")->delimiter(',');
  cmd->add_option("--estimators", cfg.estimators, "tauk ensemble: literal, lz77, enumerative")->delimiter(',');
  cmd->add_option("--layout", cfg.layout, "LZ77 pair layout: contextual, elias-delta");
  cmd->add_option("--alpha", cfg.alpha, "significance level in (0, 1)");
  cmd->add_option("--schedule", cfg.schedule, "battery weight schedule: omega_star");
  cmd->add_option("--weights", cfg.weights, "explicit battery weights, summing to at most 1")->delimiter(',');
  cmd->add_option("--output", cfg.output, "report format: text, json")->check(CLI::IsMember({"text", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compression-based randomness tests"};
  app.require_subcommand(1);

  RunConfig test_cfg;
  auto* test = app.add_subcommand("test", "test a bit stream for randomness");
  test->add_option("--input", test_cfg.input, "input file, '-' for stdin");
  test->add_option("--source", test_cfg.source, "generate the sample from a source spec instead");
  test->add_option("--max-bits", test_cfg.max_bits, "read at most this many bits");
  test->add_option("--memory-cap-bits", test_cfg.memory_cap_bits,
                   "largest input held in memory; larger lz77 inputs run in bounded-window mode");
  add_common(test, test_cfg);

  std::string gen_spec;
  std::size_t gen_bits = 0;
  std::string gen_format = "raw";
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "generate a bit sequence from a source spec");
  gen->add_option("spec", gen_spec, "kind[:p1,p2,...][:seed=N]")->required();
  gen->add_option("--bits", gen_bits, "number of bits")->required();
  gen->add_option("--format", gen_format, "output format: raw, framed, ascii");
  gen->add_option("--out", gen_out, "output file (default stdout)");

  RunConfig scan_cfg;
  auto* scan = app.add_subcommand("scan", "find the first prefix length at which a test rejects");
  scan->add_option("--input", scan_cfg.input, "input file, '-' for stdin");
  scan->add_option("--source", scan_cfg.source, "source spec to scan");
  scan->add_option("--start", scan_cfg.start, "first prefix length");
  scan->add_option("--budget", scan_cfg.budget, "largest prefix length");
  add_common(scan, scan_cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*test) {
      return cmd_test(test_cfg);
    }
    if (*gen) {
      return cmd_gen(gen_spec, gen_bits, gen_format, gen_out);
    }
    return cmd_scan(scan_cfg);
  } catch (const std::exception& e) {
    std::cerr << "rngcal: " << e.what() << '\n';
    return kExitError;
  }
}
