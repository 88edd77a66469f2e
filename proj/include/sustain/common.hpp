#ifndef SUSTAIN_COMMON_HPP
#define SUSTAIN_COMMON_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace sustain {

inline constexpr const char* kToolVersion = "0.1.0";

// Time units. A "month" is a fixed 30-day window anchored at the first
// commit; calendar months would give project-specific window lengths.
inline constexpr std::int64_t kSecondsPerDay = 86400;
inline constexpr std::int64_t kSecondsPerMonth = 30 * kSecondsPerDay;
inline constexpr double kDaysPerYear = 365.0;

using Timestamp = std::int64_t;

inline std::int64_t day_of(Timestamp ts) { return ts / kSecondsPerDay; }

// SplitMix64; used to derive independent stream seeds from a master seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Seed for a named substream (e.g. one project id).
std::uint64_t derive_seed(std::uint64_t master, const std::string& name);

// Runs fn(i) for i in [0, n). Thread count is capped by the
// SUSTAIN_THREADS environment variable; results must be written to
// index-addressed slots so the output is independent of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

std::size_t thread_budget();

// Canonical float formatting for CSV/JSON artifacts: shortest form that
// round-trips, so byte-identical re-runs are possible.
std::string format_double(double v);

}  // namespace sustain

#endif
