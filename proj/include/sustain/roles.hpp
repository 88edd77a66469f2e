#ifndef SUSTAIN_ROLES_HPP
#define SUSTAIN_ROLES_HPP

#include <set>
#include <string>
#include <vector>

#include "sustain/events.hpp"

namespace sustain {

struct RoleConfig {
    // Core developers cover at least this share of window commits; the
    // boundary case (exactly the share) is included unless strict.
    double core_share = 0.8;
    bool strict_greater = false;
    // Actor ids with these suffixes are excluded from every role.
    std::vector<std::string> bot_suffixes = {"[bot]"};
};

struct RoleAssignment {
    std::set<std::string> core;
    std::set<std::string> peripheral;
    std::set<std::string> noncode;

    bool is_core(const std::string& actor) const { return core.count(actor) > 0; }
    bool is_peripheral(const std::string& actor) const { return peripheral.count(actor) > 0; }
};

bool is_bot(const std::string& actor_id, const RoleConfig& config);

// Strips events attributed to bot actors; roles and features operate on
// the filtered log.
ProjectEventLog filter_bots(const ProjectEventLog& log, const RoleConfig& config);

// Partitions the window's participants: committers sorted by commit count
// (ties: earlier first commit, then actor id); core is the shortest prefix
// covering core_share of all commits; the remaining committers are
// peripheral; actors with no commits but issue/comment activity are
// non-code contributors.
RoleAssignment assign_roles(const ProjectEventLog& window, const RoleConfig& config = {});

void write_roles_csv(const std::string& path,
                     const std::vector<std::pair<std::string, RoleAssignment>>& roles,
                     const std::string& provenance_params);

}  // namespace sustain

#endif
