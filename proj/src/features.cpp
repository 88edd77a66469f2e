#include "sustain/features.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "sustain/errors.hpp"

namespace sustain {

namespace {

struct ActorActivity {
    double commits = 0, prs = 0, issues = 0, iss_comments = 0, cmt_comments = 0, iss_events = 0;
};

std::map<std::string, ActorActivity> collect_activity(const ProjectEventLog& window) {
    std::map<std::string, ActorActivity> acc;
    for (const Event& e : window.events) {
        ActorActivity& a = acc[e.actor_id];
        switch (e.kind) {
            case EventKind::Commit: a.commits += 1; break;
            case EventKind::PullRequest: a.prs += 1; break;
            case EventKind::IssueOpened: a.issues += 1; break;
            case EventKind::IssueComment: a.iss_comments += 1; break;
            case EventKind::CommitComment: a.cmt_comments += 1; break;
            case EventKind::IssueEvent: a.iss_events += 1; break;
            default: break;
        }
    }
    return acc;
}

const ParticipantProfile* lookup_profile(const ProfileMap& profiles, const std::string& actor,
                                         const FeatureConfig& config) {
    static const ParticipantProfile zero{};
    auto it = profiles.find(actor);
    if (it != profiles.end()) return &it->second;
    if (config.zero_fill_missing_profiles) return &zero;
    throw MissingProfile(actor);
}

// Mean of `get` over the role group; 0 for an empty group.
template <typename Get>
double group_mean(const std::set<std::string>& group, Get&& get) {
    if (group.empty()) return 0.0;
    double sum = 0.0;
    for (const std::string& actor : group) sum += get(actor);
    return sum / static_cast<double>(group.size());
}

double population_std(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(xs.size()));
}

double median_sorted(std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    std::sort(xs.begin(), xs.end());
    std::size_t n = xs.size();
    return n % 2 == 1 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

Timestamp effective_window_end(const ProjectEventLog& window) {
    if (window.window_end > 0) return window.window_end;
    // Unwindowed fallback: one past the last event.
    return window.events.empty() ? window.created_at + 1
                                 : window.events.back().timestamp + 1;
}

}  // namespace

FeatureVector willingness_features(const ProjectEventLog& window, const RoleAssignment& roles,
                                   const ProfileMap& profiles, const FeatureConfig& config) {
    FeatureVector fv;
    fv.core_empty = roles.core.empty();
    fv.peripheral_empty = roles.peripheral.empty();
    fv.noncode_empty = roles.noncode.empty();

    auto activity = collect_activity(window);
    auto act = [&](const std::string& actor) -> const ActorActivity& {
        static const ActorActivity zero{};
        auto it = activity.find(actor);
        return it == activity.end() ? zero : it->second;
    };
    auto fill_group = [&](const std::set<std::string>& group, int cmt, int pr, int issue,
                          int iss_com, int cmt_com, int iss_ev, int following, int star_pro) {
        if (cmt >= 0) fv[cmt] = group_mean(group, [&](const auto& a) { return act(a).commits; });
        if (pr >= 0) fv[pr] = group_mean(group, [&](const auto& a) { return act(a).prs; });
        fv[issue] = group_mean(group, [&](const auto& a) { return act(a).issues; });
        fv[iss_com] = group_mean(group, [&](const auto& a) { return act(a).iss_comments; });
        fv[cmt_com] = group_mean(group, [&](const auto& a) { return act(a).cmt_comments; });
        fv[iss_ev] = group_mean(group, [&](const auto& a) { return act(a).iss_events; });
        fv[following] = group_mean(group, [&](const auto& a) {
            return static_cast<double>(lookup_profile(profiles, a, config)->following);
        });
        fv[star_pro] = group_mean(group, [&](const auto& a) {
            return static_cast<double>(lookup_profile(profiles, a, config)->starred_projects);
        });
    };
    fill_group(roles.core, feat::cmt_c, feat::pr_c, feat::issue_c, feat::iss_comment_c,
               feat::cmt_comment_c, feat::iss_event_c, feat::following_c, feat::star_pro_c);
    fill_group(roles.peripheral, feat::cmt_p, feat::pr_p, feat::issue_p, feat::iss_comment_p,
               feat::cmt_comment_p, feat::iss_event_p, feat::following_p, feat::star_pro_p);
    fill_group(roles.noncode, -1, -1, feat::issue_n, feat::iss_comment_n, feat::cmt_comment_n,
               feat::iss_event_n, feat::following_n, feat::star_pro_n);

    // Commit steadiness over the window. Day buckets are UTC calendar
    // days; every day the window touches counts, including zero days.
    Timestamp start = window.created_at;
    Timestamp end = effective_window_end(window);
    std::int64_t first_day = day_of(start);
    std::int64_t last_day = day_of(std::max(start, end - 1));
    auto n_days = static_cast<std::size_t>(last_day - first_day + 1);
    std::vector<double> per_day(n_days, 0.0);
    Timestamp midpoint = start + (end - start) / 2;
    std::set<std::int64_t> active_days;
    double front = 0.0, back = 0.0;
    std::map<std::string, double> per_committer;
    for (const Event& e : window.events) {
        if (e.kind != EventKind::Commit) continue;
        std::int64_t d = day_of(e.timestamp);
        if (d >= first_day && d <= last_day) per_day[static_cast<std::size_t>(d - first_day)] += 1.0;
        active_days.insert(d);
        (e.timestamp < midpoint ? front : back) += 1.0;
        per_committer[e.actor_id] += 1.0;
    }
    fv[feat::cmt_actday] = static_cast<double>(active_days.size());
    fv[feat::cmt_front] = front;
    fv[feat::cmt_end] = back;
    fv[feat::cmt_day_std] = population_std(per_day);
    std::vector<double> day_counts = per_day;
    fv[feat::cmt_median] = median_sorted(day_counts);
    std::vector<double> committer_counts;
    committer_counts.reserve(per_committer.size());
    for (const auto& [_, c] : per_committer) committer_counts.push_back(c);
    fv[feat::cmt_dev_std] = population_std(committer_counts);
    return fv;
}

FeatureVector capacity_features(const RoleAssignment& roles, const ProfileMap& profiles,
                                const FeatureConfig& config) {
    FeatureVector fv;
    fv.core_empty = roles.core.empty();
    fv.peripheral_empty = roles.peripheral.empty();
    fv.noncode_empty = roles.noncode.empty();
    auto fill_group = [&](const std::set<std::string>& group, int base) {
        auto mean_of = [&](auto field) {
            return group_mean(group, [&](const std::string& a) {
                return static_cast<double>(lookup_profile(profiles, a, config)->*field);
            });
        };
        fv[base + 0] = mean_of(&ParticipantProfile::commits_all);
        fv[base + 1] = mean_of(&ParticipantProfile::prs_all);
        fv[base + 2] = mean_of(&ParticipantProfile::issues_all);
        fv[base + 3] = mean_of(&ParticipantProfile::owned_projects);
        fv[base + 4] = mean_of(&ParticipantProfile::owned_projects_1yr);
        fv[base + 5] = mean_of(&ParticipantProfile::owned_projects_2yr);
        fv[base + 6] = mean_of(&ParticipantProfile::followers);
    };
    fill_group(roles.core, feat::cmt_all_c);
    fill_group(roles.peripheral, feat::cmt_all_p);
    fill_group(roles.noncode, feat::cmt_all_n);
    return fv;
}

FeatureVector opportunity_features(const ProjectInfo& info) {
    FeatureVector fv;
    fv[feat::iss_open] = static_cast<double>(info.open_issues_at_cutoff);
    double total =
        static_cast<double>(info.open_issues_at_cutoff + info.closed_issues_at_cutoff);
    fv[feat::iss_open_ratio] =
        total > 0.0 ? static_cast<double>(info.open_issues_at_cutoff) / total : 0.0;
    fv[feat::gfi] = static_cast<double>(info.gfi_at_cutoff);
    fv[feat::line_readme] = static_cast<double>(info.readme_lines);
    fv[feat::line_contributing] = static_cast<double>(info.contributing_lines);
    return fv;
}

FeatureVector control_features(const ProjectEventLog& window, const RoleAssignment& roles,
                               const ProfileMap& profiles, const ProjectInfo& info,
                               const FeatureConfig& config) {
    (void)window;
    FeatureVector fv;
    fv.core_empty = roles.core.empty();
    fv.peripheral_empty = roles.peripheral.empty();
    fv.noncode_empty = roles.noncode.empty();
    auto fill_group = [&](const std::set<std::string>& group, int show_comp, int org) {
        fv[show_comp] = group_mean(group, [&](const std::string& a) {
            return lookup_profile(profiles, a, config)->shows_affiliation ? 1.0 : 0.0;
        });
        fv[org] = group_mean(group, [&](const std::string& a) {
            return static_cast<double>(lookup_profile(profiles, a, config)->org_count);
        });
    };
    fill_group(roles.core, feat::show_comp_c, feat::org_c);
    fill_group(roles.peripheral, feat::show_comp_p, feat::org_p);
    fill_group(roles.noncode, feat::show_comp_n, feat::org_n);
    fv[feat::type] = info.owner_type == OwnerType::Organization ? 0.0 : 1.0;
    fv[feat::star] = static_cast<double>(info.stars_at_cutoff);
    fv[feat::fork] = static_cast<double>(info.forks_at_cutoff);
    fv[feat::member] = static_cast<double>(info.members_at_cutoff);
    return fv;
}

FeatureVector extract_all(const ProjectEventLog& window, const RoleAssignment& roles,
                          const ProfileMap& profiles, const ProjectInfo& info,
                          const FeatureConfig& config) {
    FeatureVector w = willingness_features(window, roles, profiles, config);
    FeatureVector c = capacity_features(roles, profiles, config);
    FeatureVector o = opportunity_features(info);
    FeatureVector ctl = control_features(window, roles, profiles, info, config);
    FeatureVector fv = w;
    for (int i = feat::cmt_all_c; i <= feat::follower_n; ++i) fv[i] = c[i];
    for (int i = feat::iss_open; i <= feat::line_contributing; ++i) fv[i] = o[i];
    for (int i = feat::show_comp_c; i <= feat::member; ++i) fv[i] = ctl[i];
    return fv;
}

}  // namespace sustain
