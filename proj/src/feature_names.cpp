#include "sustain/feature_names.hpp"

#include <algorithm>

#include "sustain/errors.hpp"

namespace sustain {

const std::array<std::string, kFeatureCount>& feature_names() {
    static const std::array<std::string, kFeatureCount> names = {
        "#cmt_c", "#pr_c", "#issue_c", "#iss_comment_c", "#cmt_comment_c", "#iss_event_c",
        "#following_c", "#star_pro_c",
        "#cmt_p", "#pr_p", "#issue_p", "#iss_comment_p", "#cmt_comment_p", "#iss_event_p",
        "#following_p", "#star_pro_p",
        "#issue_n", "#iss_comment_n", "#cmt_comment_n", "#iss_event_n", "#following_n",
        "#star_pro_n",
        "#cmt_actday", "#cmt_median", "#cmt_front", "#cmt_end", "cmt_day_std", "cmt_dev_std",
        "#cmt_all_c", "#pr_all_c", "#issue_all_c", "#pro_c", "#pro_oneyear_c", "#pro_twoyear_c",
        "#follower_c",
        "#cmt_all_p", "#pr_all_p", "#issue_all_p", "#pro_p", "#pro_oneyear_p", "#pro_twoyear_p",
        "#follower_p",
        "#cmt_all_n", "#pr_all_n", "#issue_all_n", "#pro_n", "#pro_oneyear_n", "#pro_twoyear_n",
        "#follower_n",
        "#iss_open", "iss_open_ratio", "#GFI", "#line_readme", "#line_contributing",
        "show_comp_c", "#org_c", "show_comp_p", "#org_p", "show_comp_n", "#org_n", "type",
        "#star", "#fork", "#member",
    };
    return names;
}

int feature_index(const std::string& name) {
    const auto& names = feature_names();
    for (int i = 0; i < kFeatureCount; ++i)
        if (names[static_cast<std::size_t>(i)] == name) return i;
    return -1;
}

const std::array<std::string, kFeatureCount>& feature_definitions() {
    static const std::array<std::string, kFeatureCount> defs = {
        "mean window commits per core developer",
        "mean window pull requests per core developer",
        "mean window issues opened per core developer",
        "mean window issue comments per core developer",
        "mean window commit comments per core developer",
        "mean window issue events per core developer",
        "mean developers followed per core developer",
        "mean projects starred per core developer",
        "mean window commits per peripheral developer",
        "mean window pull requests per peripheral developer",
        "mean window issues opened per peripheral developer",
        "mean window issue comments per peripheral developer",
        "mean window commit comments per peripheral developer",
        "mean window issue events per peripheral developer",
        "mean developers followed per peripheral developer",
        "mean projects starred per peripheral developer",
        "mean window issues opened per non-code contributor",
        "mean window issue comments per non-code contributor",
        "mean window commit comments per non-code contributor",
        "mean window issue events per non-code contributor",
        "mean developers followed per non-code contributor",
        "mean projects starred per non-code contributor",
        "days in the window with commit activity",
        "median commits per window day",
        "commits in the first half of the window",
        "commits in the second half of the window",
        "std deviation of commits per window day",
        "std deviation of commits per code contributor",
        "mean platform-wide commits per core developer",
        "mean platform-wide pull requests per core developer",
        "mean platform-wide issues per core developer",
        "mean owned projects per core developer",
        "mean one-year-sustained owned projects per core developer",
        "mean two-year-sustained owned projects per core developer",
        "mean followers per core developer",
        "mean platform-wide commits per peripheral developer",
        "mean platform-wide pull requests per peripheral developer",
        "mean platform-wide issues per peripheral developer",
        "mean owned projects per peripheral developer",
        "mean one-year-sustained owned projects per peripheral developer",
        "mean two-year-sustained owned projects per peripheral developer",
        "mean followers per peripheral developer",
        "mean platform-wide commits per non-code contributor",
        "mean platform-wide pull requests per non-code contributor",
        "mean platform-wide issues per non-code contributor",
        "mean owned projects per non-code contributor",
        "mean one-year-sustained owned projects per non-code contributor",
        "mean two-year-sustained owned projects per non-code contributor",
        "mean followers per non-code contributor",
        "open issues at the cutoff",
        "open share of all issues at the cutoff",
        "good-first-issue labels at the cutoff",
        "README lines at the cutoff",
        "CONTRIBUTING lines at the cutoff",
        "share of core developers showing an affiliation",
        "mean organization memberships per core developer",
        "share of peripheral developers showing an affiliation",
        "mean organization memberships per peripheral developer",
        "share of non-code contributors showing an affiliation",
        "mean organization memberships per non-code contributor",
        "owner account type (0 organization, 1 user)",
        "stars at the cutoff",
        "forks at the cutoff",
        "project members at the cutoff",
    };
    return defs;
}

const char* to_string(Dimension d) {
    switch (d) {
        case Dimension::CumulativeEffort: return "cumulative_effort";
        case Dimension::Stability: return "stability";
        case Dimension::Concentration: return "concentration";
        case Dimension::OssExperience: return "oss_experience";
        case Dimension::Popularity: return "popularity";
        case Dimension::Opportunity: return "opportunity";
        case Dimension::Controls: return "controls";
        case Dimension::Common: return "common";
        case Dimension::Other: return "other";
        case Dimension::All: return "all";
    }
    return "unknown";
}

std::vector<Dimension> all_dimensions() {
    return {Dimension::CumulativeEffort, Dimension::Stability, Dimension::Concentration,
            Dimension::OssExperience, Dimension::Popularity, Dimension::Opportunity,
            Dimension::Controls, Dimension::Common, Dimension::Other, Dimension::All};
}

Dimension parse_dimension(const std::string& s) {
    for (Dimension d : all_dimensions())
        if (s == to_string(d)) return d;
    throw InvalidConfig("unknown dimension '" + s + "'");
}

std::vector<int> dimension_columns(Dimension d) {
    using namespace feat;
    switch (d) {
        case Dimension::CumulativeEffort:
            return {cmt_c, pr_c, issue_c, iss_comment_c, cmt_comment_c, iss_event_c,
                    cmt_p, pr_p, issue_p, iss_comment_p, cmt_comment_p, iss_event_p,
                    issue_n, iss_comment_n, cmt_comment_n, iss_event_n};
        case Dimension::Stability:
            return {cmt_actday, cmt_median, cmt_front, cmt_end, cmt_day_std, cmt_dev_std};
        case Dimension::Concentration:
            return {following_c, star_pro_c, following_p, star_pro_p, following_n, star_pro_n};
        case Dimension::OssExperience:
            return {cmt_all_c, pr_all_c, issue_all_c, pro_c, pro_oneyear_c, pro_twoyear_c,
                    cmt_all_p, pr_all_p, issue_all_p, pro_p, pro_oneyear_p, pro_twoyear_p,
                    cmt_all_n, pr_all_n, issue_all_n, pro_n, pro_oneyear_n, pro_twoyear_n};
        case Dimension::Popularity:
            return {follower_c, follower_p, follower_n};
        case Dimension::Opportunity:
            return {iss_open, iss_open_ratio, gfi, line_readme, line_contributing};
        case Dimension::Controls:
            return {show_comp_c, org_c, show_comp_p, org_p, show_comp_n, org_n, type, star,
                    fork, member};
        case Dimension::Common:
            // Variables also examined by earlier sustainability studies.
            return {cmt_c, issue_c, cmt_p, issue_p, issue_n, cmt_actday, type, member};
        case Dimension::Other: {
            std::vector<int> common = dimension_columns(Dimension::Common);
            std::vector<int> out;
            for (int i = 0; i < kFeatureCount; ++i)
                if (std::find(common.begin(), common.end(), i) == common.end()) out.push_back(i);
            return out;
        }
        case Dimension::All: {
            std::vector<int> out(kFeatureCount);
            for (int i = 0; i < kFeatureCount; ++i) out[static_cast<std::size_t>(i)] = i;
            return out;
        }
    }
    return {};
}

}  // namespace sustain
