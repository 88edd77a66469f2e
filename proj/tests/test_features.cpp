#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "sustain/errors.hpp"
#include "sustain/features.hpp"
#include "sustain/ingest.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace sustain;
using testutil::kDay;

namespace {

ParticipantProfile profile(const std::string& id, std::int64_t followers = 0,
                           std::int64_t following = 0, std::int64_t starred = 0,
                           std::int64_t orgs = 0, bool affiliation = false) {
    ParticipantProfile p;
    p.actor_id = id;
    p.followers = followers;
    p.following = following;
    p.starred_projects = starred;
    p.org_count = orgs;
    p.shows_affiliation = affiliation;
    return p;
}

ProjectEventLog windowed(std::vector<Event> events, int m = 3) {
    auto log = testutil::make_log("P", std::move(events));
    return window_events(log, m);
}

}  // namespace

TEST_CASE("distinct active days") {
    // Commits on days 1, 1, 2, 5.
    auto w = windowed({testutil::ev("P", "a", EventKind::Commit, 1 * kDay + 10, 0),
                       testutil::ev("P", "a", EventKind::Commit, 1 * kDay + 20, 1),
                       testutil::ev("P", "a", EventKind::Commit, 2 * kDay + 5, 2),
                       testutil::ev("P", "a", EventKind::Commit, 5 * kDay, 3)});
    RoleAssignment roles = assign_roles(w);
    ProfileMap profiles{{"a", profile("a")}};
    FeatureVector fv = willingness_features(w, roles, profiles);
    CHECK(fv[feat::cmt_actday] == 3.0);
}

TEST_CASE("per-committer std is a population std") {
    auto w = windowed([] {
        std::vector<Event> events;
        for (int i = 0; i < 10; ++i)
            events.push_back(testutil::ev("P", "a", EventKind::Commit, 100 + i, i));
        for (int i = 0; i < 2; ++i)
            events.push_back(testutil::ev("P", "b", EventKind::Commit, 200 + i, 100 + i));
        return events;
    }());
    RoleAssignment roles = assign_roles(w);
    ProfileMap profiles{{"a", profile("a")}, {"b", profile("b")}};
    FeatureVector fv = willingness_features(w, roles, profiles);
    CHECK(fv[feat::cmt_dev_std] == doctest::Approx(4.0));  // counts 10,2: mean 6, |dev| 4
}

TEST_CASE("front/end split at the window midpoint") {
    auto w = windowed({testutil::ev("P", "a", EventKind::Commit, 0, 0),
                       testutil::ev("P", "a", EventKind::Commit, 10 * kDay, 1),
                       testutil::ev("P", "a", EventKind::Commit, 10 * kDay + 5, 2)});
    RoleAssignment roles = assign_roles(w);
    ProfileMap profiles{{"a", profile("a")}};
    FeatureVector fv = willingness_features(w, roles, profiles);
    CHECK(fv[feat::cmt_front] == 3.0);
    CHECK(fv[feat::cmt_end] == 0.0);
    CHECK(fv[feat::cmt_front] + fv[feat::cmt_end] == 3.0);

    SUBCASE("a commit exactly at the midpoint counts as second half") {
        auto w2 = windowed({testutil::ev("P", "a", EventKind::Commit, 0, 0),
                            testutil::ev("P", "a", EventKind::Commit, 45 * kDay, 1)});
        FeatureVector fv2 =
            willingness_features(w2, assign_roles(w2), profiles);
        CHECK(fv2[feat::cmt_front] == 1.0);
        CHECK(fv2[feat::cmt_end] == 1.0);
    }
}

TEST_CASE("capacity features are role means of profile fields") {
    auto w = windowed({testutil::ev("P", "a", EventKind::Commit, 0, 0),
                       testutil::ev("P", "a", EventKind::Commit, 1, 1),
                       testutil::ev("P", "a", EventKind::Commit, 2, 2),
                       testutil::ev("P", "a", EventKind::Commit, 3, 3),
                       testutil::ev("P", "b", EventKind::Commit, 4, 4)});
    RoleAssignment roles = assign_roles(w);
    REQUIRE(roles.core == std::set<std::string>{"a"});
    REQUIRE(roles.peripheral == std::set<std::string>{"b"});
    ProfileMap profiles{{"a", profile("a", 80)}, {"b", profile("b", 20)}};
    profiles.at("a").commits_all = 100;
    profiles.at("b").commits_all = 50;

    SUBCASE("core mean of followers") {
        ProfileMap two{{"a", profile("a", 80)}, {"b", profile("b", 20)}};
        auto w2 = windowed({testutil::ev("P", "a", EventKind::Commit, 0, 0),
                            testutil::ev("P", "b", EventKind::Commit, 1, 1)});
        RoleAssignment r2 = assign_roles(w2);
        REQUIRE(r2.core == std::set<std::string>{"a", "b"});
        FeatureVector fv = capacity_features(r2, two);
        CHECK(fv[feat::follower_c] == doctest::Approx(50.0));
    }
    SUBCASE("empty groups zero-fill and set the flag") {
        FeatureVector fv = capacity_features(roles, profiles);
        CHECK(fv[feat::cmt_all_c] == 100.0);
        CHECK(fv[feat::cmt_all_p] == 50.0);
        CHECK(fv[feat::cmt_all_n] == 0.0);
        CHECK(fv.noncode_empty);
        CHECK_FALSE(fv.core_empty);
    }
    SUBCASE("missing profile raises unless zero-fill is configured") {
        ProfileMap missing{{"a", profile("a")}};
        CHECK_THROWS_AS(capacity_features(roles, missing), MissingProfile);
        FeatureConfig zero_fill;
        zero_fill.zero_fill_missing_profiles = true;
        FeatureVector fv = capacity_features(roles, missing, zero_fill);
        CHECK(fv[feat::cmt_all_p] == 0.0);
    }
}

TEST_CASE("opportunity features") {
    ProjectInfo info;
    info.open_issues_at_cutoff = 3;
    info.closed_issues_at_cutoff = 7;
    info.gfi_at_cutoff = 2;
    info.readme_lines = 120;
    info.contributing_lines = 30;
    FeatureVector fv = opportunity_features(info);
    CHECK(fv[feat::iss_open] == 3.0);
    CHECK(fv[feat::iss_open_ratio] == doctest::Approx(0.3));
    CHECK(fv[feat::gfi] == 2.0);
    CHECK(fv[feat::line_readme] == 120.0);
    CHECK(fv[feat::line_contributing] == 30.0);

    SUBCASE("no issues gives ratio zero") {
        ProjectInfo none;
        CHECK(opportunity_features(none)[feat::iss_open_ratio] == 0.0);
    }
}

TEST_CASE("control features") {
    auto w = windowed([] {
        std::vector<Event> events;
        for (int i = 0; i < 4; ++i)
            events.push_back(testutil::ev("P", "c" + std::to_string(i), EventKind::Commit,
                                          100 + i, i));
        return events;
    }());
    RoleAssignment roles = assign_roles(w);
    REQUIRE(roles.core.size() == 4);  // uniform counts, 0.8*4 = 3.2 -> 4
    ProfileMap profiles;
    for (int i = 0; i < 4; ++i)
        profiles.emplace("c" + std::to_string(i),
                         profile("c" + std::to_string(i), 0, 0, 0, i, i < 3));
    ProjectInfo info;
    info.owner_type = OwnerType::Organization;
    info.stars_at_cutoff = 9;
    info.forks_at_cutoff = 4;
    info.members_at_cutoff = 2;
    FeatureVector fv = control_features(w, roles, profiles, info);
    CHECK(fv[feat::show_comp_c] == doctest::Approx(0.75));
    CHECK(fv[feat::org_c] == doctest::Approx(1.5));
    CHECK(fv[feat::type] == 0.0);  // organization
    CHECK(fv[feat::star] == 9.0);
    CHECK(fv[feat::fork] == 4.0);
    CHECK(fv[feat::member] == 2.0);
    CHECK(fv[feat::show_comp_n] == 0.0);  // empty group

    SUBCASE("user owner maps to 1") {
        info.owner_type = OwnerType::User;
        CHECK(control_features(w, roles, profiles, info)[feat::type] == 1.0);
    }
}

TEST_CASE("extract_all covers all 64 names exactly once") {
    std::set<std::string> names(feature_names().begin(), feature_names().end());
    CHECK(names.size() == kFeatureCount);
    for (const std::string& n : names) CHECK(feature_index(n) >= 0);

    // Dimension subsets partition the variables.
    std::vector<int> counted(kFeatureCount, 0);
    for (Dimension d : {Dimension::CumulativeEffort, Dimension::Stability,
                        Dimension::Concentration, Dimension::OssExperience,
                        Dimension::Popularity, Dimension::Opportunity, Dimension::Controls}) {
        for (int c : dimension_columns(d)) counted[static_cast<std::size_t>(c)] += 1;
    }
    for (int c : counted) CHECK(c == 1);
    CHECK(dimension_columns(Dimension::Common).size() == 8);
    CHECK(dimension_columns(Dimension::Other).size() == kFeatureCount - 8);
    CHECK(dimension_columns(Dimension::All).size() == kFeatureCount);
}

TEST_CASE("input row order does not change the vector") {
    auto dir = testutil::scratch_dir("features_order");
    std::string rows = "P,a,commit,100,,0\n"
                       "P,b,commit,100,,1\n"
                       "P,b,issue_opened,100,,2\n"
                       "P,x,issue_comment,100,,3\n";
    std::string shuffled = "P,x,issue_comment,100,,3\n"
                           "P,b,commit,100,,1\n"
                           "P,b,issue_opened,100,,2\n"
                           "P,a,commit,100,,0\n";
    std::string header = "project_id,actor_id,kind,timestamp,issue_id,sequence_no\n";
    auto parse_and_extract = [&](const std::string& body, const char* name) {
        std::string path = testutil::write_text(dir / name, header + body);
        auto corpus = parse_event_log(path);
        auto w = window_events(corpus[0], 3);
        RoleAssignment roles = assign_roles(w);
        ProfileMap profiles{{"a", profile("a", 1, 2, 3)},
                            {"b", profile("b", 4, 5, 6)},
                            {"x", profile("x", 7, 8, 9)}};
        return extract_all(w, roles, profiles, corpus[0].info);
    };
    FeatureVector v1 = parse_and_extract(rows, "a.csv");
    FeatureVector v2 = parse_and_extract(shuffled, "b.csv");
    for (int i = 0; i < kFeatureCount; ++i) CHECK(v1[i] == v2[i]);
}

TEST_CASE("commit-mass identity and group-by oracle on random corpora") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 200; ++trial) {
        // Random window: up to 6 committers, up to 4 reporters.
        std::vector<Event> events;
        std::int64_t seq = 0;
        int n_dev = 1 + static_cast<int>(rng() % 6);
        int n_rep = static_cast<int>(rng() % 4);
        ProfileMap profiles;
        for (int d = 0; d < n_dev; ++d) {
            std::string id = "d" + std::to_string(d);
            int commits = 1 + static_cast<int>(rng() % 15);
            for (int c = 0; c < commits; ++c)
                events.push_back(testutil::ev("P", id, EventKind::Commit,
                                              static_cast<Timestamp>(rng() % (80 * kDay)),
                                              seq++));
            int issues = static_cast<int>(rng() % 3);
            for (int c = 0; c < issues; ++c)
                events.push_back(testutil::ev("P", id, EventKind::IssueOpened,
                                              static_cast<Timestamp>(rng() % (80 * kDay)),
                                              seq++));
            profiles.emplace(id, profile(id, static_cast<std::int64_t>(rng() % 100),
                                         static_cast<std::int64_t>(rng() % 100),
                                         static_cast<std::int64_t>(rng() % 100),
                                         static_cast<std::int64_t>(rng() % 4), rng() % 2 == 0));
        }
        for (int r = 0; r < n_rep; ++r) {
            std::string id = "r" + std::to_string(r);
            int comments = 1 + static_cast<int>(rng() % 5);
            for (int c = 0; c < comments; ++c)
                events.push_back(testutil::ev("P", id, EventKind::IssueComment,
                                              static_cast<Timestamp>(rng() % (80 * kDay)),
                                              seq++));
            profiles.emplace(id, profile(id, static_cast<std::int64_t>(rng() % 100),
                                         static_cast<std::int64_t>(rng() % 100),
                                         static_cast<std::int64_t>(rng() % 100),
                                         static_cast<std::int64_t>(rng() % 4), rng() % 2 == 0));
        }
        // Ensure a commit at t=0 anchors the window.
        events.push_back(testutil::ev("P", "d0", EventKind::Commit, 0, seq++));

        auto w = windowed(std::move(events));
        RoleAssignment roles = assign_roles(w);
        FeatureVector fv = extract_all(w, roles, profiles, ProjectInfo{});

        // Commit-mass identity.
        double total_commits = 0;
        std::map<std::string, double> per_actor;
        for (const Event& e : w.events)
            if (e.kind == EventKind::Commit) {
                total_commits += 1;
                per_actor[e.actor_id] += 1;
            }
        double reconstructed = fv[feat::cmt_c] * static_cast<double>(roles.core.size()) +
                               fv[feat::cmt_p] * static_cast<double>(roles.peripheral.size());
        CHECK(reconstructed == doctest::Approx(total_commits).epsilon(1e-9));

        // Group-by oracle for a few role means.
        auto group_mean_oracle = [&](const std::set<std::string>& group, auto&& get) {
            if (group.empty()) return 0.0;
            double sum = 0;
            for (const auto& a : group) sum += get(a);
            return sum / static_cast<double>(group.size());
        };
        CHECK(fv[feat::cmt_c] ==
              doctest::Approx(group_mean_oracle(
                  roles.core, [&](const std::string& a) { return per_actor[a]; })));
        CHECK(fv[feat::follower_c] ==
              doctest::Approx(group_mean_oracle(roles.core, [&](const std::string& a) {
                  return static_cast<double>(profiles.at(a).followers);
              })));
        CHECK(fv[feat::iss_comment_n] ==
              doctest::Approx(group_mean_oracle(roles.noncode, [&](const std::string& a) {
                  double c = 0;
                  for (const Event& e : w.events)
                      if (e.kind == EventKind::IssueComment && e.actor_id == a) c += 1;
                  return c;
              })));
        CHECK(fv[feat::show_comp_p] ==
              doctest::Approx(group_mean_oracle(roles.peripheral, [&](const std::string& a) {
                  return profiles.at(a).shows_affiliation ? 1.0 : 0.0;
              })));

        // Bounded features stay in range.
        CHECK(fv[feat::iss_open_ratio] >= 0.0);
        CHECK(fv[feat::iss_open_ratio] <= 1.0);
        for (int f : {feat::show_comp_c, feat::show_comp_p, feat::show_comp_n}) {
            CHECK(fv[f] >= 0.0);
            CHECK(fv[f] <= 1.0);
        }
    }
}

TEST_CASE("uniform commits over all window days give zero day std") {
    std::vector<Event> events;
    for (int d = 0; d < 90; ++d)
        events.push_back(testutil::ev("P", "a", EventKind::Commit, d * kDay, d));
    auto w = windowed(std::move(events));
    ProfileMap profiles{{"a", profile("a")}};
    FeatureVector fv = willingness_features(w, assign_roles(w), profiles);
    CHECK(fv[feat::cmt_day_std] == doctest::Approx(0.0));
    CHECK(fv[feat::cmt_median] == doctest::Approx(1.0));
    CHECK(fv[feat::cmt_actday] == 90.0);
}
