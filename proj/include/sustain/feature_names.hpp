#ifndef SUSTAIN_FEATURE_NAMES_HPP
#define SUSTAIN_FEATURE_NAMES_HPP

#include <array>
#include <string>
#include <vector>

namespace sustain {

inline constexpr int kFeatureCount = 64;

// Canonical feature indices. Order is the documented column order of
// features.csv: willingness (per-role activity, stability, concentration),
// capacity (per-role platform history), opportunity, controls.
namespace feat {
// Willingness - core developers
inline constexpr int cmt_c = 0;
inline constexpr int pr_c = 1;
inline constexpr int issue_c = 2;
inline constexpr int iss_comment_c = 3;
inline constexpr int cmt_comment_c = 4;
inline constexpr int iss_event_c = 5;
inline constexpr int following_c = 6;
inline constexpr int star_pro_c = 7;
// Willingness - peripheral developers
inline constexpr int cmt_p = 8;
inline constexpr int pr_p = 9;
inline constexpr int issue_p = 10;
inline constexpr int iss_comment_p = 11;
inline constexpr int cmt_comment_p = 12;
inline constexpr int iss_event_p = 13;
inline constexpr int following_p = 14;
inline constexpr int star_pro_p = 15;
// Willingness - non-code contributors
inline constexpr int issue_n = 16;
inline constexpr int iss_comment_n = 17;
inline constexpr int cmt_comment_n = 18;
inline constexpr int iss_event_n = 19;
inline constexpr int following_n = 20;
inline constexpr int star_pro_n = 21;
// Willingness - stability of effort
inline constexpr int cmt_actday = 22;
inline constexpr int cmt_median = 23;
inline constexpr int cmt_front = 24;
inline constexpr int cmt_end = 25;
inline constexpr int cmt_day_std = 26;
inline constexpr int cmt_dev_std = 27;
// Capacity - core developers
inline constexpr int cmt_all_c = 28;
inline constexpr int pr_all_c = 29;
inline constexpr int issue_all_c = 30;
inline constexpr int pro_c = 31;
inline constexpr int pro_oneyear_c = 32;
inline constexpr int pro_twoyear_c = 33;
inline constexpr int follower_c = 34;
// Capacity - peripheral developers
inline constexpr int cmt_all_p = 35;
inline constexpr int pr_all_p = 36;
inline constexpr int issue_all_p = 37;
inline constexpr int pro_p = 38;
inline constexpr int pro_oneyear_p = 39;
inline constexpr int pro_twoyear_p = 40;
inline constexpr int follower_p = 41;
// Capacity - non-code contributors
inline constexpr int cmt_all_n = 42;
inline constexpr int pr_all_n = 43;
inline constexpr int issue_all_n = 44;
inline constexpr int pro_n = 45;
inline constexpr int pro_oneyear_n = 46;
inline constexpr int pro_twoyear_n = 47;
inline constexpr int follower_n = 48;
// Opportunity of contribution
inline constexpr int iss_open = 49;
inline constexpr int iss_open_ratio = 50;
inline constexpr int gfi = 51;
inline constexpr int line_readme = 52;
inline constexpr int line_contributing = 53;
// Controls
inline constexpr int show_comp_c = 54;
inline constexpr int org_c = 55;
inline constexpr int show_comp_p = 56;
inline constexpr int org_p = 57;
inline constexpr int show_comp_n = 58;
inline constexpr int org_n = 59;
inline constexpr int type = 60;
inline constexpr int star = 61;
inline constexpr int fork = 62;
inline constexpr int member = 63;
}  // namespace feat

// Canonical column names, indexed by the constants above.
const std::array<std::string, kFeatureCount>& feature_names();

// Index of a named feature, -1 if unknown.
int feature_index(const std::string& name);

// Human-readable definition of each variable (determinants report).
const std::array<std::string, kFeatureCount>& feature_definitions();

// The seven variable sub-dimensions, plus the composite subsets used by
// the baseline comparisons.
enum class Dimension {
    CumulativeEffort,   // per-role in-window contribution counts
    Stability,          // commit steadiness over the window
    Concentration,      // following / starred-project averages
    OssExperience,      // platform-wide history averages
    Popularity,         // follower averages
    Opportunity,        // open issues, GFI, docs
    Controls,           // affiliation, orgs, owner type, stars/forks/members
    Common,             // variables shared with prior studies
    Other,              // complement of Common
    All,
};

const char* to_string(Dimension d);
std::vector<Dimension> all_dimensions();
Dimension parse_dimension(const std::string& s);

// Column indices belonging to a dimension, ascending.
std::vector<int> dimension_columns(Dimension d);

}  // namespace sustain

#endif
