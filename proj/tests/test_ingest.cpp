#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sustain/errors.hpp"
#include "sustain/ingest.hpp"
#include "helpers.hpp"

using namespace sustain;
using testutil::kDay;

TEST_CASE("csv events parse into per-project logs with created_at") {
    auto dir = testutil::scratch_dir("ingest_basic");
    std::string path = testutil::write_text(dir / "events.csv",
                                            "project_id,actor_id,kind,timestamp,issue_id,sequence_no\n"
                                            "P,alice,commit,20,,1\n"
                                            "P,alice,commit,10,,0\n"
                                            "P,bob,commit,30,,2\n");
    auto corpus = parse_event_log(path);
    REQUIRE(corpus.size() == 1);
    CHECK(corpus[0].project_id == "P");
    CHECK(corpus[0].created_at == 10);
    CHECK(corpus[0].has_commits);
    REQUIRE(corpus[0].events.size() == 3);
    CHECK(corpus[0].events.front().timestamp == 10);
    CHECK(corpus[0].events.back().timestamp == 30);
}

TEST_CASE("unknown event kind is a schema violation") {
    auto dir = testutil::scratch_dir("ingest_kind");
    std::string path = testutil::write_text(dir / "events.csv",
                                            "project_id,actor_id,kind,timestamp,issue_id,sequence_no\n"
                                            "P,alice,release,10,,0\n");
    CHECK_THROWS_AS(parse_event_log(path), MalformedRow);
}

TEST_CASE("empty input and duplicates are rejected") {
    auto dir = testutil::scratch_dir("ingest_errors");
    std::string empty = testutil::write_text(dir / "empty.csv",
                                             "project_id,actor_id,kind,timestamp,issue_id,sequence_no\n");
    CHECK_THROWS_AS(parse_event_log(empty), EmptyInput);

    std::string dup = testutil::write_text(dir / "dup.csv",
                                           "project_id,actor_id,kind,timestamp,issue_id,sequence_no\n"
                                           "P,alice,commit,10,,0\n"
                                           "P,alice,commit,10,,0\n");
    CHECK_THROWS_AS(parse_event_log(dup), DuplicateEvent);

    CHECK_THROWS_AS(parse_event_log(dir.string() + "/missing.csv"), IoError);
}

TEST_CASE("jsonl parse matches csv parse") {
    auto dir = testutil::scratch_dir("ingest_jsonl");
    std::string csv = testutil::write_text(dir / "events.csv",
                                           "project_id,actor_id,kind,timestamp,issue_id,sequence_no\n"
                                           "P,a,commit,10,,0\n"
                                           "P,b,issue_opened,15,i1,1\n");
    std::string jsonl = testutil::write_text(
        dir / "events.jsonl",
        R"({"project_id":"P","actor_id":"a","kind":"commit","timestamp":10,"sequence_no":0})"
        "\n"
        R"({"project_id":"P","actor_id":"b","kind":"issue_opened","timestamp":15,"issue_id":"i1","sequence_no":1})"
        "\n");
    auto from_csv = parse_event_log(csv, LogFormat::Csv);
    auto from_jsonl = parse_event_log(jsonl, LogFormat::Jsonl);
    REQUIRE(from_csv.size() == from_jsonl.size());
    CHECK(from_csv[0].events.size() == from_jsonl[0].events.size());
    CHECK(from_csv[0].created_at == from_jsonl[0].created_at);
}

TEST_CASE("windowing is a half-open 30-day-month interval") {
    auto log = testutil::make_log("P", {testutil::ev("P", "a", EventKind::Commit, 0),
                                        testutil::ev("P", "a", EventKind::Commit, 5 * kDay, 1),
                                        testutil::ev("P", "a", EventKind::Commit, 95 * kDay, 2)});
    ProjectEventLog w3 = window_events(log, 3);
    CHECK(w3.events.size() == 2);  // day 0 and day 5
    CHECK(w3.created_at == log.created_at);
    CHECK(w3.window_end == 90 * kDay);

    SUBCASE("event exactly on the boundary is excluded") {
        auto boundary =
            testutil::make_log("P", {testutil::ev("P", "a", EventKind::Commit, 0),
                                     testutil::ev("P", "a", EventKind::Commit, 90 * kDay, 1)});
        CHECK(window_events(boundary, 3).events.size() == 1);
    }
    SUBCASE("windowing is idempotent") {
        ProjectEventLog again = window_events(w3, 3);
        CHECK(again.events.size() == w3.events.size());
        CHECK(again.window_end == w3.window_end);
        CHECK(again.created_at == w3.created_at);
    }
    SUBCASE("windows are monotone in m") {
        auto w1 = window_events(log, 1);
        for (const Event& e : w1.events) {
            bool found = false;
            for (const Event& f : w3.events)
                found = found || (f.timestamp == e.timestamp && f.sequence_no == e.sequence_no);
            CHECK(found);
        }
    }
}

TEST_CASE("profile parsing applies defaults and invariants") {
    auto dir = testutil::scratch_dir("ingest_profiles");
    SUBCASE("missing optional affiliation defaults to false") {
        std::string path = testutil::write_text(dir / "profiles.csv",
                                                "actor_id,followers,shows_affiliation\n"
                                                "alice,10,\n");
        auto profiles = parse_profiles(path);
        CHECK_FALSE(profiles.at("alice").shows_affiliation);
        CHECK(profiles.at("alice").followers == 10);
        CHECK(profiles.at("alice").commits_all == 0);
    }
    SUBCASE("owned-project nesting is enforced") {
        std::string path =
            testutil::write_text(dir / "bad.csv",
                                 "actor_id,owned_projects,owned_projects_1yr,owned_projects_2yr\n"
                                 "bob,5,1,3\n");
        CHECK_THROWS_AS(parse_profiles(path), InvariantViolation);
    }
    SUBCASE("duplicate actors are rejected") {
        std::string path = testutil::write_text(dir / "dup.csv",
                                                "actor_id,followers\nal,1\nal,2\n");
        CHECK_THROWS_AS(parse_profiles(path), DuplicateActor);
    }
}

TEST_CASE("write-then-parse round-trips a random corpus") {
    auto dir = testutil::scratch_dir("ingest_roundtrip");
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> kind_pick(0, kEventKindCount - 1);
    std::uniform_int_distribution<Timestamp> ts_pick(0, 200 * kDay);
    std::vector<ProjectEventLog> corpus;
    for (int p = 0; p < 60; ++p) {
        std::vector<Event> events;
        char pid_buf[8];
        std::snprintf(pid_buf, sizeof(pid_buf), "P%02d", p);
        std::string pid = pid_buf;
        int n = 1 + static_cast<int>(rng() % 40);
        events.push_back(testutil::ev(pid, "a0", EventKind::Commit, 0, 0));
        for (int e = 1; e < n; ++e) {
            events.push_back(testutil::ev(pid, "a" + std::to_string(rng() % 5),
                                          static_cast<EventKind>(kind_pick(rng)), ts_pick(rng),
                                          e));
        }
        corpus.push_back(testutil::make_log(pid, std::move(events)));
    }
    std::string path = (dir / "events.csv").string();
    write_event_log_csv(path, corpus, "test");
    auto parsed = parse_event_log(path);
    REQUIRE(parsed.size() == corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        CHECK(parsed[i].project_id == corpus[i].project_id);
        CHECK(parsed[i].created_at == corpus[i].created_at);
        REQUIRE(parsed[i].events.size() == corpus[i].events.size());
        for (std::size_t e = 0; e < corpus[i].events.size(); ++e) {
            CHECK(parsed[i].events[e].timestamp == corpus[i].events[e].timestamp);
            CHECK(parsed[i].events[e].actor_id == corpus[i].events[e].actor_id);
            CHECK(parsed[i].events[e].kind == corpus[i].events[e].kind);
        }
    }

    SUBCASE("profiles round-trip too") {
        std::map<std::string, ParticipantProfile> profiles;
        for (int a = 0; a < 100; ++a) {
            ParticipantProfile p;
            p.actor_id = "actor" + std::to_string(a);
            p.commits_all = static_cast<std::int64_t>(rng() % 1000);
            p.owned_projects = static_cast<std::int64_t>(rng() % 20);
            p.owned_projects_1yr = p.owned_projects / 2;
            p.owned_projects_2yr = p.owned_projects / 4;
            p.followers = static_cast<std::int64_t>(rng() % 500);
            p.following = static_cast<std::int64_t>(rng() % 300);
            p.starred_projects = static_cast<std::int64_t>(rng() % 400);
            p.org_count = static_cast<std::int64_t>(rng() % 5);
            p.shows_affiliation = rng() % 2 == 0;
            profiles.emplace(p.actor_id, p);
        }
        std::string ppath = (dir / "profiles.csv").string();
        write_profiles_csv(ppath, profiles, "test");
        auto parsed_profiles = parse_profiles(ppath);
        REQUIRE(parsed_profiles.size() == profiles.size());
        for (const auto& [aid, p] : profiles) {
            const ParticipantProfile& q = parsed_profiles.at(aid);
            CHECK(q.commits_all == p.commits_all);
            CHECK(q.owned_projects_2yr == p.owned_projects_2yr);
            CHECK(q.shows_affiliation == p.shows_affiliation);
        }
    }
}
