#ifndef SUSTAIN_EVENTS_HPP
#define SUSTAIN_EVENTS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sustain/common.hpp"

namespace sustain {

enum class EventKind {
    Commit,
    PullRequest,
    IssueOpened,
    IssueComment,
    CommitComment,
    IssueEvent,
    Star,
    Fork,
    MemberAdded,
    GfiLabel,
};

inline constexpr int kEventKindCount = 10;

const char* to_string(EventKind kind);
std::optional<EventKind> parse_event_kind(const std::string& s);

struct Event {
    std::string project_id;
    std::string actor_id;
    EventKind kind = EventKind::Commit;
    Timestamp timestamp = 0;
    std::string issue_id;           // set for issue-scoped kinds, empty otherwise
    std::int64_t sequence_no = 0;   // disambiguates equal-timestamp events
};

enum class OwnerType { Organization = 0, User = 1 };

// Per-project metadata and cutoff snapshot counts (projects.csv row).
// Snapshot fields are supplied by the input as values at the observation
// cutoff; the tool does not reconstruct file histories.
struct ProjectInfo {
    std::string project_id;
    OwnerType owner_type = OwnerType::User;
    bool is_fork = false;
    bool is_deleted = false;
    std::int64_t readme_lines = 0;
    std::int64_t contributing_lines = 0;
    std::int64_t open_issues_at_cutoff = 0;
    std::int64_t closed_issues_at_cutoff = 0;
    std::int64_t gfi_at_cutoff = 0;
    std::int64_t stars_at_cutoff = 0;
    std::int64_t forks_at_cutoff = 0;
    std::int64_t members_at_cutoff = 0;
};

/** Time-ordered, actor-attributed events of one project.
 *
 *  Events are sorted by (timestamp, sequence_no, actor_id, kind).
 *  created_at is the timestamp of the earliest Commit event (falling back
 *  to the earliest event for commit-less logs, which the selection and
 *  labelling stages reject where commits are required).
 */
struct ProjectEventLog {
    std::string project_id;
    std::vector<Event> events;
    Timestamp created_at = 0;
    bool has_commits = false;
    // End of the observation window (exclusive); 0 while unwindowed.
    Timestamp window_end = 0;
    ProjectInfo info;

    std::size_t count(EventKind kind) const;
    Timestamp first_commit() const;  // requires has_commits
    Timestamp last_commit() const;   // requires has_commits
};

// A participant's platform-wide history snapshot at the observation cutoff.
struct ParticipantProfile {
    std::string actor_id;
    std::int64_t commits_all = 0;
    std::int64_t prs_all = 0;
    std::int64_t issues_all = 0;
    std::int64_t owned_projects = 0;
    std::int64_t owned_projects_1yr = 0;
    std::int64_t owned_projects_2yr = 0;
    std::int64_t followers = 0;
    std::int64_t following = 0;
    std::int64_t starred_projects = 0;
    std::int64_t org_count = 0;
    bool shows_affiliation = false;
};

}  // namespace sustain

#endif
