#ifndef SUSTAIN_FEATURES_HPP
#define SUSTAIN_FEATURES_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

#include "sustain/events.hpp"
#include "sustain/feature_names.hpp"
#include "sustain/roles.hpp"

namespace sustain {

using ProfileMap = std::map<std::string, ParticipantProfile>;

struct FeatureConfig {
    // When an actor lacks a profile: throw MissingProfile, or treat every
    // profile field as zero.
    bool zero_fill_missing_profiles = false;
};

struct FeatureVector {
    std::array<double, kFeatureCount> values{};
    // Empty-group indicators; carried as metadata, not model inputs.
    bool core_empty = false;
    bool peripheral_empty = false;
    bool noncode_empty = false;

    double& operator[](int i) { return values[static_cast<std::size_t>(i)]; }
    double operator[](int i) const { return values[static_cast<std::size_t>(i)]; }
};

// Per-role in-window activity averages plus the commit-steadiness
// measures over the window (distinct active days; median/std of commits
// per window day with zero days included; first/second-half commit
// counts split at the window midpoint; per-committer commit std) and the
// per-role following/starred-project averages.
FeatureVector willingness_features(const ProjectEventLog& window, const RoleAssignment& roles,
                                   const ProfileMap& profiles, const FeatureConfig& config = {});

// Per-role means of the platform-wide history fields.
FeatureVector capacity_features(const RoleAssignment& roles, const ProfileMap& profiles,
                                const FeatureConfig& config = {});

// Snapshot passthrough: open issues, open ratio, GFI count, documentation
// line counts. A project with no issues has open ratio 0.
FeatureVector opportunity_features(const ProjectInfo& info);

// Affiliation ratios, organization-count means, owner type, stars, forks,
// member count.
FeatureVector control_features(const ProjectEventLog& window, const RoleAssignment& roles,
                               const ProfileMap& profiles, const ProjectInfo& info,
                               const FeatureConfig& config = {});

// All 64 variables of one windowed project.
FeatureVector extract_all(const ProjectEventLog& window, const RoleAssignment& roles,
                          const ProfileMap& profiles, const ProjectInfo& info,
                          const FeatureConfig& config = {});

}  // namespace sustain

#endif
