#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace rngcal {

/// Worker count: hardware concurrency, capped by the RNGCAL_THREADS
/// environment variable when it holds a positive integer.
[[nodiscard]] unsigned worker_count();

/// Runs trial(0) .. trial(trials - 1) across worker_count() threads and
/// returns how many returned true. Trials must be independent; the result
/// does not depend on scheduling.
[[nodiscard]] std::uint64_t parallel_count(std::uint64_t trials, const std::function<bool(std::uint64_t)>& trial);

}  // namespace rngcal
