#include "sustain/synth.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <tuple>

#include <nlohmann/json.hpp>

#include "sustain/boosting.hpp"
#include "sustain/common.hpp"
#include "sustain/errors.hpp"
#include "sustain/ingest.hpp"
#include "sustain/roles.hpp"

namespace sustain {

const char* to_string(Regime r) {
    switch (r) {
        case Regime::Steady: return "steady";
        case Regime::FrontLoaded: return "front_loaded";
        case Regime::Bursty: return "bursty";
    }
    return "steady";
}

void SynthConfig::validate() const {
    if (n_projects < 1) throw InvalidConfig("n_projects must be >= 1");
    double mix = steady_fraction + front_loaded_fraction + bursty_fraction;
    if (std::abs(mix - 1.0) > 1e-9) throw InvalidConfig("regime fractions must sum to 1");
    if (steady_fraction < 0 || front_loaded_fraction < 0 || bursty_fraction < 0)
        throw InvalidConfig("regime fractions must be >= 0");
    if (noise_level < 0) throw InvalidConfig("noise_level must be >= 0");
    if (!(lin_mix >= 0.0 && lin_mix <= 1.0)) throw InvalidConfig("lin_mix must be in [0,1]");
    if (observation_months < 1) throw InvalidConfig("observation_months must be >= 1");
    if (sustain_t_years < 1 || sustain_k < 1)
        throw InvalidConfig("sustain parameters require t >= 1 and k >= 1");
    for (const auto& [name, _] : planted_effects)
        if (feature_index(name) < 0) throw InvalidConfig("unknown planted variable " + name);
}

double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) throw InvalidConfig("inverse normal cdf needs p in (0,1)");
    // Bisection on the standard normal CDF; deterministic and accurate to
    // well below the rank resolution it is used at.
    double lo = -9.0, hi = 9.0;
    for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        double cdf = 0.5 * std::erfc(-mid / std::sqrt(2.0));
        (cdf < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> normal_scores(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> scores(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && values[order[j]] == values[order[i]]) ++j;
        double midrank = 0.5 * static_cast<double>(i + 1 + j);
        double z = inverse_normal_cdf((midrank - 0.5) / static_cast<double>(n));
        for (std::size_t k = i; k < j; ++k) scores[order[k]] = z;
        i = j;
    }
    return scores;
}

std::vector<Timestamp> regime_stream(Regime regime, double intensity_per_day,
                                     double duration_days, std::uint64_t seed) {
    if (duration_days <= 0.0) throw InvalidConfig("duration must be positive");
    std::vector<double> offsets_days;
    if (intensity_per_day > 0.0) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        switch (regime) {
            case Regime::Steady: {
                std::exponential_distribution<double> gap(intensity_per_day);
                double t = gap(rng);
                while (t < duration_days) {
                    offsets_days.push_back(t);
                    t += gap(rng);
                }
                break;
            }
            case Regime::FrontLoaded: {
                // Rate decays linearly to 10% across the window while the
                // expected total matches intensity * duration; simulated
                // by thinning a homogeneous stream at the peak rate.
                double peak = intensity_per_day * 2.0 / 1.1;
                std::exponential_distribution<double> gap(peak);
                double t = gap(rng);
                while (t < duration_days) {
                    double rate_frac = 1.0 - 0.9 * (t / duration_days);
                    if (unit(rng) < rate_frac) offsets_days.push_back(t);
                    t += gap(rng);
                }
                break;
            }
            case Regime::Bursty: {
                const double burst_mean = 5.0;
                std::exponential_distribution<double> gap(intensity_per_day / burst_mean);
                std::geometric_distribution<int> extra(1.0 / burst_mean);
                std::uniform_real_distribution<double> jitter(0.0, 1.0);
                double t = gap(rng);
                while (t < duration_days) {
                    int burst = 1 + extra(rng);
                    for (int b = 0; b < burst; ++b) {
                        double at = t + jitter(rng);
                        if (at < duration_days) offsets_days.push_back(at);
                    }
                    t += gap(rng);
                }
                break;
            }
        }
    }
    std::vector<Timestamp> out;
    out.reserve(offsets_days.size());
    for (double d : offsets_days)
        out.push_back(static_cast<Timestamp>(d * static_cast<double>(kSecondsPerDay)));
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

struct ProjectDraft {
    ProjectEventLog log;  // window events only at first
    ProjectInfo info;
    std::vector<ParticipantProfile> actors;
    std::vector<std::string> committer_ids;
    Regime regime = Regime::Steady;
    double noise_draw = 0.0;
    double label_draw = 0.0;
    FeatureVector features;
};

std::string project_name(std::size_t i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "P%06zu", i);
    return buf;
}

// Lognormal draw rounded to a count.
std::int64_t lognormal_count(std::mt19937_64& rng, double log_mean, double log_sigma) {
    std::lognormal_distribution<double> d(log_mean, log_sigma);
    return static_cast<std::int64_t>(std::llround(d(rng)));
}

ProjectDraft generate_project(std::size_t index, const SynthConfig& config,
                              std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);

    ProjectDraft draft;
    // Label randomness is stashed up front; the planted logit needs the
    // whole corpus and is applied in a second pass.
    draft.noise_draw = normal(rng);
    draft.label_draw = unit(rng);

    const std::string pid = project_name(index);
    const double window_days =
        static_cast<double>(config.observation_months) * 30.0;
    const Timestamp start = 1'500'000'000 + static_cast<Timestamp>(index) * kSecondsPerDay;
    const Timestamp window_len =
        static_cast<Timestamp>(config.observation_months) * kSecondsPerMonth;

    double mix = unit(rng);
    draft.regime = mix < config.steady_fraction ? Regime::Steady
                   : mix < config.steady_fraction + config.front_loaded_fraction
                       ? Regime::FrontLoaded
                       : Regime::Bursty;

    std::poisson_distribution<int> committer_extra(config.committer_mean);
    std::poisson_distribution<int> noncode_count(config.noncode_mean);
    int n_committers = 1 + std::min(committer_extra(rng), 7);
    int n_noncode = std::min(noncode_count(rng), 10);

    std::vector<Event> events;
    std::int64_t seq = 0;
    auto push = [&](const std::string& actor, EventKind kind, Timestamp at) {
        events.push_back(Event{pid, actor, kind, at, "", seq++});
    };

    // Commit streams: a project-level intensity split across committers
    // by exponential weights, shaped by the activity regime.
    std::lognormal_distribution<double> intensity_dist(std::log(0.8), 0.7);
    double lambda_total = intensity_dist(rng);
    std::vector<double> weights(static_cast<std::size_t>(n_committers));
    std::exponential_distribution<double> wdist(1.0);
    double wsum = 0.0;
    for (double& w : weights) {
        w = wdist(rng) + 0.05;
        wsum += w;
    }
    for (int c = 0; c < n_committers; ++c) {
        std::string actor = pid + "_dev" + std::to_string(c);
        draft.committer_ids.push_back(actor);
        double lam = lambda_total * weights[static_cast<std::size_t>(c)] / wsum;
        std::vector<Timestamp> stream =
            regime_stream(draft.regime, lam, window_days, mix_seed(seed, 1000 + static_cast<std::uint64_t>(c)));
        for (Timestamp off : stream) push(actor, EventKind::Commit, start + off);
    }
    // Anchor commit: created_at is the first commit, and every project
    // must have one.
    push(draft.committer_ids.front(), EventKind::Commit, start);

    // Per-project rates for the remaining activity streams.
    auto project_rate = [&](double log_mean, double log_sigma) {
        std::lognormal_distribution<double> d(log_mean, log_sigma);
        return d(rng);
    };
    double r_pr = project_rate(std::log(0.02), 0.9);
    double r_issue = project_rate(std::log(0.03), 0.9);
    double r_iss_comment = project_rate(std::log(0.05), 1.0);
    double r_cmt_comment = project_rate(std::log(0.008), 1.0);
    double r_iss_event = project_rate(std::log(0.03), 1.0);
    double r_noncode_issue = project_rate(std::log(0.02), 0.9);
    double r_noncode_comment = project_rate(std::log(0.06), 1.0);

    auto poisson_events = [&](const std::string& actor, EventKind kind, double rate_per_day) {
        std::poisson_distribution<int> d(rate_per_day * window_days);
        int count = d(rng);
        for (int i = 0; i < count; ++i) {
            auto at = start + static_cast<Timestamp>(unit(rng) * static_cast<double>(window_len));
            if (at >= start + window_len) at = start + window_len - 1;
            push(actor, kind, at);
        }
        return count;
    };

    for (const std::string& actor : draft.committer_ids) {
        poisson_events(actor, EventKind::PullRequest, r_pr);
        poisson_events(actor, EventKind::IssueOpened, r_issue);
        poisson_events(actor, EventKind::IssueComment, r_iss_comment);
        poisson_events(actor, EventKind::CommitComment, r_cmt_comment);
        poisson_events(actor, EventKind::IssueEvent, r_iss_event);
    }
    for (int c = 0; c < n_noncode; ++c) {
        std::string actor = pid + "_rep" + std::to_string(c);
        int total = 0;
        total += poisson_events(actor, EventKind::IssueOpened, r_noncode_issue);
        total += poisson_events(actor, EventKind::IssueComment, r_noncode_comment);
        total += poisson_events(actor, EventKind::CommitComment, r_cmt_comment * 0.5);
        total += poisson_events(actor, EventKind::IssueEvent, r_iss_event * 0.5);
        if (total == 0) push(actor, EventKind::IssueComment, start + window_len / 2);
    }

    // Popularity / bookkeeping streams double as the snapshot counts.
    std::poisson_distribution<int> star_count(3.0);
    std::poisson_distribution<int> fork_count(1.0);
    std::poisson_distribution<int> member_count(1.2);
    std::poisson_distribution<int> gfi_count(0.4);
    int stars = star_count(rng), forks = fork_count(rng), members = member_count(rng),
        gfis = gfi_count(rng);
    for (int i = 0; i < stars; ++i)
        push(pid + "_w" + std::to_string(i), EventKind::Star,
             start + static_cast<Timestamp>(unit(rng) * static_cast<double>(window_len)));
    for (int i = 0; i < forks; ++i)
        push(pid + "_f" + std::to_string(i), EventKind::Fork,
             start + static_cast<Timestamp>(unit(rng) * static_cast<double>(window_len)));
    for (int i = 0; i < members; ++i)
        push(pid + "_dev0", EventKind::MemberAdded,
             start + static_cast<Timestamp>(unit(rng) * static_cast<double>(window_len)));
    for (int i = 0; i < gfis; ++i)
        push(pid + "_dev0", EventKind::GfiLabel,
             start + static_cast<Timestamp>(unit(rng) * static_cast<double>(window_len)));

    // Profiles. Per-project multipliers give the role-averaged features
    // their cross-project variance.
    double follower_base = project_rate(std::log(8.0), 0.8);
    double history_base = project_rate(std::log(150.0), 0.8);
    std::uniform_real_distribution<double> beta_like(0.05, 0.95);
    double sustained_share = beta_like(rng) * beta_like(rng);  // mode near low values
    double affiliation_rate = unit(rng) * 0.8;
    auto make_profile = [&](const std::string& actor) {
        ParticipantProfile p;
        p.actor_id = actor;
        p.commits_all = lognormal_count(rng, std::log(history_base), 0.9);
        p.prs_all = lognormal_count(rng, std::log(20.0), 1.1);
        p.issues_all = lognormal_count(rng, std::log(15.0), 1.1);
        std::poisson_distribution<int> owned(8.0);
        p.owned_projects = owned(rng);
        std::binomial_distribution<int> one_yr(static_cast<int>(p.owned_projects),
                                               sustained_share);
        p.owned_projects_1yr = p.owned_projects > 0 ? one_yr(rng) : 0;
        std::binomial_distribution<int> two_yr(static_cast<int>(p.owned_projects_1yr), 0.5);
        p.owned_projects_2yr = p.owned_projects_1yr > 0 ? two_yr(rng) : 0;
        p.followers = lognormal_count(rng, std::log(follower_base), 0.6);
        p.following = lognormal_count(rng, std::log(30.0), 1.0);
        p.starred_projects = lognormal_count(rng, std::log(40.0), 1.1);
        std::poisson_distribution<int> orgs(0.8);
        p.org_count = orgs(rng);
        p.shows_affiliation = unit(rng) < affiliation_rate;
        return p;
    };
    // Star/fork actors never enter a role group, so only participants
    // get profiles.
    for (const std::string& actor : draft.committer_ids) draft.actors.push_back(make_profile(actor));
    for (int c = 0; c < n_noncode; ++c)
        draft.actors.push_back(make_profile(pid + "_rep" + std::to_string(c)));

    // Snapshot: issue split consistent with the window's opened issues.
    std::int64_t total_issues = 0;
    for (const Event& e : events)
        if (e.kind == EventKind::IssueOpened) ++total_issues;
    std::uniform_real_distribution<double> ratio_dist(0.0, 1.0);
    double open_ratio = 0.5 * (ratio_dist(rng) + ratio_dist(rng));  // triangular around 0.5
    std::binomial_distribution<int> open_split(static_cast<int>(total_issues), open_ratio);
    std::int64_t open_issues = total_issues > 0 ? open_split(rng) : 0;

    draft.info.project_id = pid;
    draft.info.owner_type = unit(rng) < 0.45 ? OwnerType::Organization : OwnerType::User;
    draft.info.is_fork = unit(rng) < config.fork_fraction;
    draft.info.is_deleted = unit(rng) < config.deleted_fraction;
    std::poisson_distribution<int> readme_lines(40.0);
    draft.info.readme_lines = readme_lines(rng);
    draft.info.contributing_lines =
        unit(rng) < 0.55 ? 5 + lognormal_count(rng, std::log(40.0), 0.8) : 0;
    draft.info.open_issues_at_cutoff = open_issues;
    draft.info.closed_issues_at_cutoff = total_issues - open_issues;
    draft.info.gfi_at_cutoff = gfis;
    draft.info.stars_at_cutoff = stars;
    draft.info.forks_at_cutoff = forks;
    draft.info.members_at_cutoff = members;

    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
        return std::tie(a.timestamp, a.sequence_no) < std::tie(b.timestamp, b.sequence_no);
    });
    draft.log.project_id = pid;
    draft.log.events = std::move(events);
    draft.log.created_at = start;
    draft.log.has_commits = true;
    draft.log.info = draft.info;
    return draft;
}

void append_sustain_tail(ProjectDraft& draft, const SynthConfig& config) {
    // Commits at a steady per-bucket cadence out past t years make the
    // labelling stage reproduce status = 1 exactly; projects labelled 0
    // stop at the window boundary and stay short of the span rule.
    const Timestamp first = draft.log.created_at;
    const auto window_buckets = static_cast<std::int64_t>(config.observation_months);
    const double tail_days = static_cast<double>(config.sustain_t_years) * kDaysPerYear + 60.0;
    const auto last_bucket = static_cast<std::int64_t>(tail_days / 30.0);
    std::int64_t seq = static_cast<std::int64_t>(draft.log.events.size()) + 1000;
    std::size_t committer = 0;
    for (std::int64_t b = window_buckets; b <= last_bucket; ++b) {
        for (int j = 0; j < config.sustain_k; ++j) {
            Timestamp at = first + b * kSecondsPerMonth + (12 + j) * 3600;
            const std::string& actor = draft.committer_ids[committer % draft.committer_ids.size()];
            draft.log.events.push_back(
                Event{draft.log.project_id, actor, EventKind::Commit, at, "", seq++});
            ++committer;
        }
    }
}

}  // namespace

SynthCorpus generate(const SynthConfig& config) {
    config.validate();
    SynthCorpus corpus;
    corpus.planted_effects = config.planted_effects;
    corpus.lin_mix = config.lin_mix;

    std::vector<ProjectDraft> drafts(config.n_projects);
    parallel_for(config.n_projects, [&](std::size_t i) {
        drafts[i] = generate_project(i, config, mix_seed(config.seed, i));
    });

    // Extract features through the real pipeline.
    FeatureConfig fc;
    parallel_for(config.n_projects, [&](std::size_t i) {
        ProjectDraft& d = drafts[i];
        ProjectEventLog window = window_events(d.log, config.observation_months);
        RoleAssignment roles = assign_roles(window, RoleConfig{});
        ProfileMap local;
        for (const ParticipantProfile& p : d.actors) local.emplace(p.actor_id, p);
        d.features = extract_all(window, roles, local, d.info, fc);
    });

    // Planted logistic labels over rank-normal scores of the planted
    // variables.
    std::vector<double> logits(config.n_projects, 0.0);
    for (const auto& [name, strength] : config.planted_effects) {
        int col = feature_index(name);
        std::vector<double> values(config.n_projects);
        for (std::size_t i = 0; i < config.n_projects; ++i)
            values[i] = drafts[i].features[col];
        std::vector<double> z = normal_scores(values);
        for (std::size_t i = 0; i < config.n_projects; ++i) {
            double link = config.lin_mix * z[i] +
                          (1.0 - config.lin_mix) * (z[i] * z[i] - 1.0) / std::sqrt(2.0);
            logits[i] += strength * link;
        }
    }
    corpus.features.n_cols = kFeatureCount;
    for (std::size_t i = 0; i < config.n_projects; ++i) {
        logits[i] += config.noise_level * drafts[i].noise_draw;
        int status = drafts[i].label_draw < sigmoid(logits[i]) ? 1 : 0;
        if (status == 1) append_sustain_tail(drafts[i], config);
        corpus.features.add_row(drafts[i].log.project_id, drafts[i].features.values, status);
    }
    corpus.logits = std::move(logits);

    for (ProjectDraft& d : drafts) {
        corpus.regimes.push_back(d.regime);
        corpus.infos.push_back(d.info);
        for (ParticipantProfile& p : d.actors) corpus.profiles.emplace(p.actor_id, p);
        corpus.logs.push_back(std::move(d.log));
    }
    return corpus;
}

void write_synth_corpus(const SynthCorpus& corpus, const SynthConfig& config,
                        const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::string params = "stage=synth seed=" + std::to_string(config.seed) +
                         " n_projects=" + std::to_string(config.n_projects);
    write_event_log_csv(out_dir + "/events.csv", corpus.logs, params);
    write_projects_csv(out_dir + "/projects.csv", corpus.infos, params);
    write_profiles_csv(out_dir + "/profiles.csv", corpus.profiles, params);

    nlohmann::json j;
    j["seed"] = config.seed;
    j["n_projects"] = config.n_projects;
    j["noise_level"] = config.noise_level;
    j["lin_mix"] = config.lin_mix;
    j["link"] = "lin_mix * z + (1 - lin_mix) * (z^2 - 1)/sqrt(2), z = rank-normal score";
    j["intercept"] = 0.0;
    nlohmann::json effects = nlohmann::json::object();
    for (const auto& [name, strength] : config.planted_effects) effects[name] = strength;
    j["planted_effects"] = effects;
    nlohmann::json projects = nlohmann::json::array();
    for (std::size_t i = 0; i < corpus.features.n_rows(); ++i) {
        nlohmann::json p;
        p["id"] = corpus.features.project_ids[i];
        p["status"] = corpus.features.labels[i];
        p["logit"] = corpus.logits[i];
        p["regime"] = to_string(corpus.regimes[i]);
        projects.push_back(std::move(p));
    }
    j["projects"] = std::move(projects);
    std::ofstream out(out_dir + "/ground_truth.json");
    if (!out) throw IoError("cannot write " + out_dir + "/ground_truth.json");
    out << j.dump(2) << "\n";
}

}  // namespace sustain
