#ifndef SUSTAIN_CORPUS_HPP
#define SUSTAIN_CORPUS_HPP

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "sustain/events.hpp"

namespace sustain {

struct SelectionThresholds {
    std::int64_t min_commits = 0;
    std::int64_t min_prs = 0;
    std::int64_t min_issues = 0;
    std::int64_t min_forks = 0;
    std::int64_t min_stars = 0;
    std::int64_t min_span_days = 0;
    Timestamp created_after = 0;
    Timestamp created_before = std::numeric_limits<Timestamp>::max();

    // The reference thresholds this tool documents for GHTorrent-scale
    // corpora: 57 commits, 4 PRs, 1 issue, 1 fork, 2 stars, 90-day span.
    static SelectionThresholds reference();
};

struct SustainedLabel {
    int status = 0;            // 1 iff sustained under (t, k)
    int t_years = 0;
    int k_commits = 0;
    double active_span_days = 0.0;
    double median_monthly_commits = 0.0;
};

struct LabelConfig {
    // Zero-commit buckets between the first and last commit count toward
    // the median; excluding them would make any active project trivially
    // sustained.
    bool include_empty_buckets = true;
};

// Lifetime activity of one project, used by the selection predicate.
struct ProjectMetrics {
    std::int64_t commits = 0;
    std::int64_t prs = 0;
    std::int64_t issues = 0;
    std::int64_t forks = 0;
    std::int64_t stars = 0;
    double span_days = 0.0;
};

ProjectMetrics lifetime_metrics(const ProjectEventLog& log);

// Nearest-rank percentile of each lifetime metric over the corpus: the
// smallest value v such that at least `percentile` of projects have the
// metric <= v. Span/date bounds are left at their defaults.
SelectionThresholds compute_percentile_thresholds(const std::vector<ProjectEventLog>& corpus,
                                                  double percentile);

// Keeps projects that are not forks/deleted, were created inside the
// configured date range, meet every lifetime threshold, and whose
// first-to-last-commit span is at least min_span_days.
std::vector<ProjectEventLog> select_projects(const std::vector<ProjectEventLog>& corpus,
                                             const SelectionThresholds& thresholds);

bool selection_predicate(const ProjectEventLog& log, const SelectionThresholds& thresholds);

// A project has t-year sustained activity when its commit activity spans
// more than t*365 days and the median commit count over consecutive
// 30-day buckets (first through last commit, trailing partial bucket
// included) is at least k.
SustainedLabel label_sustained(const ProjectEventLog& log, int t_years, int k_commits,
                               const LabelConfig& config = {});

void write_labels_csv(const std::string& path,
                      const std::vector<std::pair<std::string, SustainedLabel>>& labels,
                      const std::string& provenance_params);
std::vector<std::pair<std::string, SustainedLabel>> read_labels_csv(const std::string& path);

}  // namespace sustain

#endif
