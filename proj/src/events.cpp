#include "sustain/events.hpp"

#include <algorithm>
#include <cassert>

namespace sustain {

const char* to_string(EventKind kind) {
    switch (kind) {
        case EventKind::Commit: return "commit";
        case EventKind::PullRequest: return "pull_request";
        case EventKind::IssueOpened: return "issue_opened";
        case EventKind::IssueComment: return "issue_comment";
        case EventKind::CommitComment: return "commit_comment";
        case EventKind::IssueEvent: return "issue_event";
        case EventKind::Star: return "star";
        case EventKind::Fork: return "fork";
        case EventKind::MemberAdded: return "member_added";
        case EventKind::GfiLabel: return "gfi_label";
    }
    return "unknown";
}

std::optional<EventKind> parse_event_kind(const std::string& s) {
    static const std::pair<const char*, EventKind> table[] = {
        {"commit", EventKind::Commit},
        {"pull_request", EventKind::PullRequest},
        {"issue_opened", EventKind::IssueOpened},
        {"issue_comment", EventKind::IssueComment},
        {"commit_comment", EventKind::CommitComment},
        {"issue_event", EventKind::IssueEvent},
        {"star", EventKind::Star},
        {"fork", EventKind::Fork},
        {"member_added", EventKind::MemberAdded},
        {"gfi_label", EventKind::GfiLabel},
    };
    for (const auto& [name, kind] : table)
        if (s == name) return kind;
    return std::nullopt;
}

std::size_t ProjectEventLog::count(EventKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(events.begin(), events.end(),
                      [kind](const Event& e) { return e.kind == kind; }));
}

Timestamp ProjectEventLog::first_commit() const {
    for (const Event& e : events)
        if (e.kind == EventKind::Commit) return e.timestamp;
    assert(false && "first_commit on a log without commits");
    return 0;
}

Timestamp ProjectEventLog::last_commit() const {
    for (auto it = events.rbegin(); it != events.rend(); ++it)
        if (it->kind == EventKind::Commit) return it->timestamp;
    assert(false && "last_commit on a log without commits");
    return 0;
}

}  // namespace sustain
