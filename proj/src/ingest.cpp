#include "sustain/ingest.hpp"

#include <algorithm>
#include <tuple>

#include <nlohmann/json.hpp>

#include "sustain/csv.hpp"
#include "sustain/errors.hpp"

namespace sustain {

namespace {

bool event_order(const Event& a, const Event& b) {
    return std::tie(a.timestamp, a.sequence_no, a.actor_id, a.kind) <
           std::tie(b.timestamp, b.sequence_no, b.actor_id, b.kind);
}

bool event_equal(const Event& a, const Event& b) {
    return a.timestamp == b.timestamp && a.sequence_no == b.sequence_no &&
           a.actor_id == b.actor_id && a.kind == b.kind;
}

std::vector<ProjectEventLog> finalize(std::map<std::string, std::vector<Event>>& grouped) {
    std::vector<ProjectEventLog> corpus;
    corpus.reserve(grouped.size());
    for (auto& [pid, events] : grouped) {
        ProjectEventLog log;
        log.project_id = pid;
        log.events = std::move(events);
        std::sort(log.events.begin(), log.events.end(), event_order);
        for (std::size_t i = 1; i < log.events.size(); ++i) {
            if (event_equal(log.events[i - 1], log.events[i]))
                throw DuplicateEvent("duplicate event in project " + pid + " at t=" +
                                     std::to_string(log.events[i].timestamp));
        }
        log.has_commits = false;
        for (const Event& e : log.events) {
            if (e.kind == EventKind::Commit) {
                log.created_at = e.timestamp;
                log.has_commits = true;
                break;
            }
        }
        if (!log.has_commits && !log.events.empty())
            log.created_at = log.events.front().timestamp;
        log.info.project_id = pid;
        corpus.push_back(std::move(log));
    }
    return corpus;
}

Event parse_event_fields(const std::string& project_id, const std::string& actor_id,
                         const std::string& kind_s, const std::string& ts_s,
                         const std::string& issue_id, const std::string& seq_s,
                         std::size_t line_no) {
    Event e;
    if (project_id.empty()) throw MalformedRow(line_no, "empty project_id");
    if (actor_id.empty()) throw MalformedRow(line_no, "empty actor_id");
    auto kind = parse_event_kind(kind_s);
    if (!kind) throw MalformedRow(line_no, "unknown kind '" + kind_s + "'");
    e.project_id = project_id;
    e.actor_id = actor_id;
    e.kind = *kind;
    e.timestamp = parse_int_field(ts_s, line_no);
    if (e.timestamp < 0) throw MalformedRow(line_no, "negative timestamp");
    e.issue_id = issue_id;
    e.sequence_no = seq_s.empty() ? 0 : parse_int_field(seq_s, line_no);
    return e;
}

std::vector<ProjectEventLog> parse_event_log_csv(const std::string& path) {
    CsvReader reader(path);
    std::size_t c_pid = reader.require_column("project_id");
    std::size_t c_aid = reader.require_column("actor_id");
    std::size_t c_kind = reader.require_column("kind");
    std::size_t c_ts = reader.require_column("timestamp");
    int c_issue = reader.column("issue_id");
    std::size_t c_seq = reader.require_column("sequence_no");

    std::map<std::string, std::vector<Event>> grouped;
    std::vector<std::string> f;
    std::size_t rows = 0;
    while (reader.next(f)) {
        ++rows;
        Event e = parse_event_fields(f[c_pid], f[c_aid], f[c_kind], f[c_ts],
                                     c_issue >= 0 ? f[static_cast<std::size_t>(c_issue)] : "",
                                     f[c_seq], reader.line_no());
        grouped[e.project_id].push_back(std::move(e));
    }
    if (rows == 0) throw EmptyInput("no event rows in " + path);
    return finalize(grouped);
}

std::vector<ProjectEventLog> parse_event_log_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::map<std::string, std::vector<Event>> grouped;
    std::string line;
    std::size_t line_no = 0, rows = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object())
            throw MalformedRow(line_no, "invalid JSON object");
        auto str = [&](const char* key, bool required) -> std::string {
            if (!j.contains(key)) {
                if (required) throw MalformedRow(line_no, std::string("missing key ") + key);
                return "";
            }
            if (!j[key].is_string()) throw MalformedRow(line_no, std::string(key) + " not a string");
            return j[key].get<std::string>();
        };
        auto num = [&](const char* key, bool required) -> std::int64_t {
            if (!j.contains(key)) {
                if (required) throw MalformedRow(line_no, std::string("missing key ") + key);
                return 0;
            }
            if (!j[key].is_number_integer())
                throw MalformedRow(line_no, std::string(key) + " not an integer");
            return j[key].get<std::int64_t>();
        };
        Event e = parse_event_fields(str("project_id", true), str("actor_id", true),
                                     str("kind", true), std::to_string(num("timestamp", true)),
                                     str("issue_id", false), std::to_string(num("sequence_no", false)),
                                     line_no);
        grouped[e.project_id].push_back(std::move(e));
        ++rows;
    }
    if (rows == 0) throw EmptyInput("no event rows in " + path);
    return finalize(grouped);
}

bool parse_bool_field(const std::string& s, std::size_t line_no) {
    if (s == "1" || s == "true") return true;
    if (s == "0" || s == "false" || s.empty()) return false;
    throw MalformedRow(line_no, "not a flag: '" + s + "'");
}

}  // namespace

std::vector<ProjectEventLog> parse_event_log(const std::string& path, LogFormat format) {
    return format == LogFormat::Csv ? parse_event_log_csv(path) : parse_event_log_jsonl(path);
}

std::map<std::string, ProjectInfo> parse_projects(const std::string& path) {
    CsvReader reader(path);
    std::size_t c_pid = reader.require_column("project_id");
    std::size_t c_owner = reader.require_column("owner_type");
    std::size_t c_fork = reader.require_column("is_fork");
    std::size_t c_del = reader.require_column("is_deleted");
    std::size_t c_readme = reader.require_column("readme_lines");
    std::size_t c_contrib = reader.require_column("contributing_lines");
    std::size_t c_open = reader.require_column("open_issues_at_cutoff");
    std::size_t c_closed = reader.require_column("closed_issues_at_cutoff");
    std::size_t c_gfi = reader.require_column("gfi_at_cutoff");
    std::size_t c_stars = reader.require_column("stars_at_cutoff");
    std::size_t c_forks = reader.require_column("forks_at_cutoff");
    std::size_t c_members = reader.require_column("members_at_cutoff");

    std::map<std::string, ProjectInfo> out;
    std::vector<std::string> f;
    while (reader.next(f)) {
        ProjectInfo p;
        std::size_t ln = reader.line_no();
        p.project_id = f[c_pid];
        if (p.project_id.empty()) throw MalformedRow(ln, "empty project_id");
        std::int64_t owner = parse_int_field(f[c_owner], ln);
        if (owner != 0 && owner != 1) throw MalformedRow(ln, "owner_type must be 0 or 1");
        p.owner_type = owner == 0 ? OwnerType::Organization : OwnerType::User;
        p.is_fork = parse_bool_field(f[c_fork], ln);
        p.is_deleted = parse_bool_field(f[c_del], ln);
        p.readme_lines = parse_int_field(f[c_readme], ln);
        p.contributing_lines = parse_int_field(f[c_contrib], ln);
        p.open_issues_at_cutoff = parse_int_field(f[c_open], ln);
        p.closed_issues_at_cutoff = parse_int_field(f[c_closed], ln);
        p.gfi_at_cutoff = parse_int_field(f[c_gfi], ln);
        p.stars_at_cutoff = parse_int_field(f[c_stars], ln);
        p.forks_at_cutoff = parse_int_field(f[c_forks], ln);
        p.members_at_cutoff = parse_int_field(f[c_members], ln);
        if (p.readme_lines < 0 || p.contributing_lines < 0 || p.open_issues_at_cutoff < 0 ||
            p.closed_issues_at_cutoff < 0 || p.gfi_at_cutoff < 0 || p.stars_at_cutoff < 0 ||
            p.forks_at_cutoff < 0 || p.members_at_cutoff < 0)
            throw MalformedRow(ln, "negative count");
        if (!out.emplace(p.project_id, p).second)
            throw MalformedRow(ln, "duplicate project_id " + p.project_id);
    }
    if (out.empty()) throw EmptyInput("no project rows in " + path);
    return out;
}

std::map<std::string, ParticipantProfile> parse_profiles(const std::string& path) {
    CsvReader reader(path);
    std::size_t c_aid = reader.require_column("actor_id");
    // All numeric columns are optional; absent columns default to zero.
    auto col = [&](const char* name) { return reader.column(name); };
    int c_cmt = col("commits_all"), c_pr = col("prs_all"), c_iss = col("issues_all");
    int c_pro = col("owned_projects"), c_pro1 = col("owned_projects_1yr"),
        c_pro2 = col("owned_projects_2yr");
    int c_fol = col("followers"), c_fog = col("following"), c_star = col("starred_projects");
    int c_org = col("org_count"), c_aff = col("shows_affiliation");

    std::map<std::string, ParticipantProfile> out;
    std::vector<std::string> f;
    auto opt_int = [&](int c, std::size_t ln) -> std::int64_t {
        if (c < 0) return 0;
        const std::string& s = f[static_cast<std::size_t>(c)];
        return s.empty() ? 0 : parse_int_field(s, ln);
    };
    while (reader.next(f)) {
        std::size_t ln = reader.line_no();
        ParticipantProfile p;
        p.actor_id = f[c_aid];
        if (p.actor_id.empty()) throw MalformedRow(ln, "empty actor_id");
        p.commits_all = opt_int(c_cmt, ln);
        p.prs_all = opt_int(c_pr, ln);
        p.issues_all = opt_int(c_iss, ln);
        p.owned_projects = opt_int(c_pro, ln);
        p.owned_projects_1yr = opt_int(c_pro1, ln);
        p.owned_projects_2yr = opt_int(c_pro2, ln);
        p.followers = opt_int(c_fol, ln);
        p.following = opt_int(c_fog, ln);
        p.starred_projects = opt_int(c_star, ln);
        p.org_count = opt_int(c_org, ln);
        p.shows_affiliation =
            c_aff >= 0 && parse_bool_field(f[static_cast<std::size_t>(c_aff)], ln);
        if (p.commits_all < 0 || p.prs_all < 0 || p.issues_all < 0 || p.owned_projects < 0 ||
            p.owned_projects_1yr < 0 || p.owned_projects_2yr < 0 || p.followers < 0 ||
            p.following < 0 || p.starred_projects < 0 || p.org_count < 0)
            throw MalformedRow(ln, "negative count");
        if (p.owned_projects_2yr > p.owned_projects_1yr ||
            p.owned_projects_1yr > p.owned_projects)
            throw InvariantViolation("actor " + p.actor_id +
                                     ": owned-project counts must be nested "
                                     "(2yr <= 1yr <= total)");
        if (!out.emplace(p.actor_id, p).second)
            throw DuplicateActor("duplicate actor_id " + p.actor_id + " at line " +
                                 std::to_string(ln));
    }
    if (out.empty()) throw EmptyInput("no profile rows in " + path);
    return out;
}

void attach_project_info(std::vector<ProjectEventLog>& corpus,
                         const std::map<std::string, ProjectInfo>& infos) {
    for (ProjectEventLog& log : corpus) {
        auto it = infos.find(log.project_id);
        if (it != infos.end()) log.info = it->second;
    }
}

ProjectEventLog window_events(const ProjectEventLog& log, int months) {
    if (months < 1) throw InvalidConfig("window months must be >= 1");
    ProjectEventLog out;
    out.project_id = log.project_id;
    out.created_at = log.created_at;
    out.has_commits = false;
    out.info = log.info;
    Timestamp end = log.created_at + static_cast<Timestamp>(months) * kSecondsPerMonth;
    // Windowing an already-windowed log never extends it (idempotence).
    out.window_end = log.window_end > 0 ? std::min(log.window_end, end) : end;
    for (const Event& e : log.events) {
        if (e.timestamp >= log.created_at && e.timestamp < end) {
            out.events.push_back(e);
            if (e.kind == EventKind::Commit) out.has_commits = true;
        }
    }
    return out;
}

void write_event_log_csv(const std::string& path, const std::vector<ProjectEventLog>& corpus,
                         const std::string& provenance_params) {
    CsvWriter w(path, provenance_line(provenance_params),
                {"project_id", "actor_id", "kind", "timestamp", "issue_id", "sequence_no"});
    for (const ProjectEventLog& log : corpus) {
        for (const Event& e : log.events) {
            w.write_row({e.project_id, e.actor_id, to_string(e.kind),
                         std::to_string(e.timestamp), e.issue_id,
                         std::to_string(e.sequence_no)});
        }
    }
    w.close();
}

void write_projects_csv(const std::string& path, const std::vector<ProjectInfo>& infos,
                        const std::string& provenance_params) {
    CsvWriter w(path, provenance_line(provenance_params),
                {"project_id", "owner_type", "is_fork", "is_deleted", "readme_lines",
                 "contributing_lines", "open_issues_at_cutoff", "closed_issues_at_cutoff",
                 "gfi_at_cutoff", "stars_at_cutoff", "forks_at_cutoff", "members_at_cutoff"});
    for (const ProjectInfo& p : infos) {
        w.write_row({p.project_id, std::to_string(p.owner_type == OwnerType::Organization ? 0 : 1),
                     p.is_fork ? "1" : "0", p.is_deleted ? "1" : "0",
                     std::to_string(p.readme_lines), std::to_string(p.contributing_lines),
                     std::to_string(p.open_issues_at_cutoff),
                     std::to_string(p.closed_issues_at_cutoff), std::to_string(p.gfi_at_cutoff),
                     std::to_string(p.stars_at_cutoff), std::to_string(p.forks_at_cutoff),
                     std::to_string(p.members_at_cutoff)});
    }
    w.close();
}

void write_profiles_csv(const std::string& path,
                        const std::map<std::string, ParticipantProfile>& profiles,
                        const std::string& provenance_params) {
    CsvWriter w(path, provenance_line(provenance_params),
                {"actor_id", "commits_all", "prs_all", "issues_all", "owned_projects",
                 "owned_projects_1yr", "owned_projects_2yr", "followers", "following",
                 "starred_projects", "org_count", "shows_affiliation"});
    for (const auto& [aid, p] : profiles) {
        w.write_row({aid, std::to_string(p.commits_all), std::to_string(p.prs_all),
                     std::to_string(p.issues_all), std::to_string(p.owned_projects),
                     std::to_string(p.owned_projects_1yr), std::to_string(p.owned_projects_2yr),
                     std::to_string(p.followers), std::to_string(p.following),
                     std::to_string(p.starred_projects), std::to_string(p.org_count),
                     p.shows_affiliation ? "1" : "0"});
    }
    w.close();
}

}  // namespace sustain
