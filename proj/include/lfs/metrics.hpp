#pragma once

#include <map>
#include <string>
#include <vector>

namespace lfs {

// One search run's outcome for scoring purposes.
struct GameRecord {
    std::string game_id;
    std::string method_id;
    int run_index = 0;
    int win = 0; // 0 or 1
    long long tokens = 0;
};

struct WinRateResult {
    double rate = 0.0;
    bool solved = false; // strictly more than half the runs won
};

// Per-game win rate over the n repeated runs; a game counts as solved only
// when the rate is strictly above 0.5.
WinRateResult win_rate(const std::vector<int>& wins);

struct AggregateReport {
    std::string method_id;
    double win_rate_star = 0.0;
    double tokens_star = 0.0;
    double efficiency_score = 0.0;
    bool efficiency_defined = true; // false when tokens_star == 0
    double wilson_low = 0.0;
    double wilson_high = 0.0;
    int games = 0;
    int runs = 0;
};

// WinRate* = mean per-game WinRate, Tokens* = mean per-game mean tokens,
// EfficiencyScore = WinRate* / Tokens*. Wilson bounds cover the pooled
// per-run win indicator.
AggregateReport aggregate(const std::vector<GameRecord>& records, const std::string& method_id);

// Wilson score interval for successes out of trials at normal quantile z,
// clamped to [0, 1].
std::pair<double, double> wilson_interval(long long successes, long long trials,
                                          double z = 1.96);

// Right-continuous step curve: rho(tau) = fraction of tasks whose log10
// performance ratio is <= tau.
struct ProfileCurve {
    std::string method_id;
    std::vector<std::pair<double, double>> breakpoints; // (tau, rho) ascending
    double tau_max = 0.0;

    double rho_at(double tau) const;
};

struct ProfileOptions {
    // Substitute for zero scores before ratios are formed (scores are on the
    // same percentage scale as the published tables).
    double zero_score_epsilon = 0.01;
};

// Dolan-More performance profiles over a higher-is-better score table:
// r[t][m] = best score on t / score of m on t, rho_m(tau) = fraction of tasks
// with log10(r) <= tau. Throws DegenerateInputError when every method scores
// zero on some task.
std::map<std::string, ProfileCurve> performance_profile(
    const std::map<std::string, std::map<std::string, double>>& method_task_scores,
    const ProfileOptions& options = {});

// Area under the profile between lower_bound and tau_max (exact step-function
// integral). The published definition integrates from 1; lower_bound 0 keeps
// the sub-decade region where most method separation lives.
double aup(const ProfileCurve& curve, double lower_bound = 1.0);

// For each budget grid point, the number of runs that won using at most that
// many tokens.
std::vector<std::pair<long long, long long>> cumulative_wins(
    const std::vector<GameRecord>& records, const std::vector<long long>& token_grid);

} // namespace lfs
