#ifndef SUSTAIN_TESTS_HELPERS_HPP
#define SUSTAIN_TESTS_HELPERS_HPP

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sustain/events.hpp"

namespace testutil {

// Fresh scratch directory per test binary run.
inline std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("sustain_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::string write_text(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
    out.close();
    return path.string();
}

inline std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline sustain::Event ev(const std::string& pid, const std::string& actor,
                         sustain::EventKind kind, sustain::Timestamp ts,
                         std::int64_t seq = 0) {
    return sustain::Event{pid, actor, kind, ts, "", seq};
}

// Builds a normalized log the way the parser would.
inline sustain::ProjectEventLog make_log(const std::string& pid,
                                         std::vector<sustain::Event> events) {
    sustain::ProjectEventLog log;
    log.project_id = pid;
    std::sort(events.begin(), events.end(),
              [](const sustain::Event& a, const sustain::Event& b) {
                  return std::tie(a.timestamp, a.sequence_no) < std::tie(b.timestamp, b.sequence_no);
              });
    log.events = std::move(events);
    log.info.project_id = pid;
    for (const sustain::Event& e : log.events) {
        if (e.kind == sustain::EventKind::Commit) {
            log.created_at = e.timestamp;
            log.has_commits = true;
            break;
        }
    }
    if (!log.has_commits && !log.events.empty()) log.created_at = log.events.front().timestamp;
    return log;
}

inline constexpr std::int64_t kDay = 86400;

}  // namespace testutil

#endif
