#include "sustain/roles.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <tuple>

#include "sustain/csv.hpp"
#include "sustain/errors.hpp"

namespace sustain {

bool is_bot(const std::string& actor_id, const RoleConfig& config) {
    for (const std::string& suffix : config.bot_suffixes) {
        if (suffix.empty() || actor_id.size() < suffix.size()) continue;
        if (actor_id.compare(actor_id.size() - suffix.size(), suffix.size(), suffix) == 0)
            return true;
    }
    return false;
}

ProjectEventLog filter_bots(const ProjectEventLog& log, const RoleConfig& config) {
    ProjectEventLog out = log;
    out.events.clear();
    for (const Event& e : log.events)
        if (!is_bot(e.actor_id, config)) out.events.push_back(e);
    return out;
}

RoleAssignment assign_roles(const ProjectEventLog& window, const RoleConfig& config) {
    if (window.events.empty())
        throw NoParticipants("project " + window.project_id + " has an empty window");

    struct Committer {
        std::int64_t commits = 0;
        Timestamp first_commit = std::numeric_limits<Timestamp>::max();
    };
    std::map<std::string, Committer> committers;
    std::map<std::string, bool> commenters;  // actor -> has qualifying non-code activity
    for (const Event& e : window.events) {
        if (is_bot(e.actor_id, config)) continue;
        switch (e.kind) {
            case EventKind::Commit: {
                Committer& c = committers[e.actor_id];
                ++c.commits;
                c.first_commit = std::min(c.first_commit, e.timestamp);
                break;
            }
            case EventKind::IssueOpened:
            case EventKind::IssueComment:
            case EventKind::CommitComment:
            case EventKind::IssueEvent:
                commenters[e.actor_id] = true;
                break;
            default:
                break;
        }
    }

    std::vector<std::pair<std::string, Committer>> ordered(committers.begin(), committers.end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        return std::tuple(-a.second.commits, a.second.first_commit, a.first) <
               std::tuple(-b.second.commits, b.second.first_commit, b.first);
    });

    std::int64_t total = 0;
    for (const auto& [_, c] : ordered) total += c.commits;

    RoleAssignment roles;
    std::int64_t cumulative = 0;
    double target = config.core_share * static_cast<double>(total);
    bool covered = false;
    for (const auto& [actor, c] : ordered) {
        if (covered) {
            roles.peripheral.insert(actor);
            continue;
        }
        roles.core.insert(actor);
        cumulative += c.commits;
        double mass = static_cast<double>(cumulative);
        covered = config.strict_greater ? mass > target : mass >= target;
    }
    for (const auto& [actor, _] : commenters)
        if (!committers.count(actor)) roles.noncode.insert(actor);
    return roles;
}

void write_roles_csv(const std::string& path,
                     const std::vector<std::pair<std::string, RoleAssignment>>& roles,
                     const std::string& provenance_params) {
    CsvWriter w(path, provenance_line(provenance_params), {"project_id", "actor_id", "role"});
    for (const auto& [pid, r] : roles) {
        for (const std::string& a : r.core) w.write_row({pid, a, "core"});
        for (const std::string& a : r.peripheral) w.write_row({pid, a, "peripheral"});
        for (const std::string& a : r.noncode) w.write_row({pid, a, "noncode"});
    }
    w.close();
}

}  // namespace sustain
