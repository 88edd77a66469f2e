#include "sustain/corpus.hpp"

#include <algorithm>
#include <cmath>

#include "sustain/csv.hpp"
#include "sustain/errors.hpp"

namespace sustain {

SelectionThresholds SelectionThresholds::reference() {
    SelectionThresholds t;
    t.min_commits = 57;
    t.min_prs = 4;
    t.min_issues = 1;
    t.min_forks = 1;
    t.min_stars = 2;
    t.min_span_days = 90;
    return t;
}

ProjectMetrics lifetime_metrics(const ProjectEventLog& log) {
    ProjectMetrics m;
    for (const Event& e : log.events) {
        switch (e.kind) {
            case EventKind::Commit: ++m.commits; break;
            case EventKind::PullRequest: ++m.prs; break;
            case EventKind::IssueOpened: ++m.issues; break;
            case EventKind::Fork: ++m.forks; break;
            case EventKind::Star: ++m.stars; break;
            default: break;
        }
    }
    if (m.commits > 0) {
        m.span_days = static_cast<double>(log.last_commit() - log.first_commit()) /
                      static_cast<double>(kSecondsPerDay);
    }
    return m;
}

namespace {

std::int64_t nearest_rank(std::vector<std::int64_t>& values, double percentile) {
    std::sort(values.begin(), values.end());
    std::size_t n = values.size();
    auto rank = static_cast<std::size_t>(std::ceil(percentile * static_cast<double>(n)));
    if (rank == 0) rank = 1;
    if (rank > n) rank = n;
    return values[rank - 1];
}

double median_of(std::vector<double>& values) {
    std::sort(values.begin(), values.end());
    std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

SelectionThresholds compute_percentile_thresholds(const std::vector<ProjectEventLog>& corpus,
                                                  double percentile) {
    if (corpus.empty()) throw EmptyCorpus("cannot compute percentile thresholds of nothing");
    if (!(percentile > 0.0 && percentile < 1.0))
        throw InvalidConfig("percentile must be in (0,1)");
    std::vector<std::int64_t> commits, prs, issues, forks, stars;
    for (const ProjectEventLog& log : corpus) {
        ProjectMetrics m = lifetime_metrics(log);
        commits.push_back(m.commits);
        prs.push_back(m.prs);
        issues.push_back(m.issues);
        forks.push_back(m.forks);
        stars.push_back(m.stars);
    }
    SelectionThresholds t;
    t.min_commits = nearest_rank(commits, percentile);
    t.min_prs = nearest_rank(prs, percentile);
    t.min_issues = nearest_rank(issues, percentile);
    t.min_forks = nearest_rank(forks, percentile);
    t.min_stars = nearest_rank(stars, percentile);
    return t;
}

bool selection_predicate(const ProjectEventLog& log, const SelectionThresholds& t) {
    if (log.info.is_fork || log.info.is_deleted) return false;
    if (log.created_at < t.created_after || log.created_at > t.created_before) return false;
    ProjectMetrics m = lifetime_metrics(log);
    return m.commits >= t.min_commits && m.prs >= t.min_prs && m.issues >= t.min_issues &&
           m.forks >= t.min_forks && m.stars >= t.min_stars &&
           m.span_days >= static_cast<double>(t.min_span_days);
}

std::vector<ProjectEventLog> select_projects(const std::vector<ProjectEventLog>& corpus,
                                             const SelectionThresholds& thresholds) {
    std::vector<ProjectEventLog> out;
    for (const ProjectEventLog& log : corpus)
        if (selection_predicate(log, thresholds)) out.push_back(log);
    return out;
}

SustainedLabel label_sustained(const ProjectEventLog& log, int t_years, int k_commits,
                               const LabelConfig& config) {
    if (t_years < 1 || k_commits < 1)
        throw InvalidConfig("label parameters require t >= 1 and k >= 1");
    if (!log.has_commits)
        throw NoCommits("project " + log.project_id + " has no commits");

    Timestamp first = log.first_commit();
    Timestamp last = log.last_commit();
    auto n_buckets = static_cast<std::size_t>((last - first) / kSecondsPerMonth) + 1;
    std::vector<double> buckets(n_buckets, 0.0);
    for (const Event& e : log.events) {
        if (e.kind != EventKind::Commit) continue;
        auto b = static_cast<std::size_t>((e.timestamp - first) / kSecondsPerMonth);
        buckets[b] += 1.0;
    }
    if (!config.include_empty_buckets) {
        buckets.erase(std::remove(buckets.begin(), buckets.end(), 0.0), buckets.end());
    }

    SustainedLabel label;
    label.t_years = t_years;
    label.k_commits = k_commits;
    label.active_span_days =
        static_cast<double>(last - first) / static_cast<double>(kSecondsPerDay);
    label.median_monthly_commits = median_of(buckets);
    // "more than t years" is strict.
    label.status = (label.active_span_days > static_cast<double>(t_years) * kDaysPerYear &&
                    label.median_monthly_commits >= static_cast<double>(k_commits))
                       ? 1
                       : 0;
    return label;
}

void write_labels_csv(const std::string& path,
                      const std::vector<std::pair<std::string, SustainedLabel>>& labels,
                      const std::string& provenance_params) {
    CsvWriter w(path, provenance_line(provenance_params),
                {"project_id", "status", "t", "k", "active_span_days",
                 "median_monthly_commits"});
    for (const auto& [pid, l] : labels) {
        w.write_row({pid, std::to_string(l.status), std::to_string(l.t_years),
                     std::to_string(l.k_commits), format_double(l.active_span_days),
                     format_double(l.median_monthly_commits)});
    }
    w.close();
}

std::vector<std::pair<std::string, SustainedLabel>> read_labels_csv(const std::string& path) {
    CsvReader reader(path);
    std::size_t c_pid = reader.require_column("project_id");
    std::size_t c_status = reader.require_column("status");
    std::size_t c_t = reader.require_column("t");
    std::size_t c_k = reader.require_column("k");
    std::size_t c_span = reader.require_column("active_span_days");
    std::size_t c_med = reader.require_column("median_monthly_commits");
    std::vector<std::pair<std::string, SustainedLabel>> out;
    std::vector<std::string> f;
    while (reader.next(f)) {
        std::size_t ln = reader.line_no();
        SustainedLabel l;
        l.status = static_cast<int>(parse_int_field(f[c_status], ln));
        l.t_years = static_cast<int>(parse_int_field(f[c_t], ln));
        l.k_commits = static_cast<int>(parse_int_field(f[c_k], ln));
        l.active_span_days = parse_double_field(f[c_span], ln);
        l.median_monthly_commits = parse_double_field(f[c_med], ln);
        out.emplace_back(f[c_pid], l);
    }
    if (out.empty()) throw EmptyInput("no label rows in " + path);
    return out;
}

}  // namespace sustain
