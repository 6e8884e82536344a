#include "lfs/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "lfs/errors.hpp"

namespace lfs {

WinRateResult win_rate(const std::vector<int>& wins) {
    if (wins.empty()) throw DomainError("win_rate: no records");
    double sum = 0.0;
    for (int w : wins) sum += w;
    WinRateResult out;
    out.rate = sum / static_cast<double>(wins.size());
    out.solved = out.rate > 0.5;
    return out;
}

AggregateReport aggregate(const std::vector<GameRecord>& records, const std::string& method_id) {
    std::map<std::string, std::vector<const GameRecord*>> by_game;
    long long successes = 0;
    long long trials = 0;
    for (const GameRecord& r : records) {
        if (r.method_id != method_id) continue;
        by_game[r.game_id].push_back(&r);
        successes += r.win;
        ++trials;
    }
    if (by_game.empty()) throw DomainError("aggregate: no records for method " + method_id);

    AggregateReport report;
    report.method_id = method_id;
    report.games = static_cast<int>(by_game.size());
    report.runs = static_cast<int>(trials);
    double rate_sum = 0.0;
    double token_sum = 0.0;
    for (const auto& [game, runs] : by_game) {
        double wins = 0.0;
        double tokens = 0.0;
        for (const GameRecord* r : runs) {
            wins += r->win;
            tokens += static_cast<double>(r->tokens);
        }
        rate_sum += wins / static_cast<double>(runs.size());
        token_sum += tokens / static_cast<double>(runs.size());
    }
    report.win_rate_star = rate_sum / static_cast<double>(by_game.size());
    report.tokens_star = token_sum / static_cast<double>(by_game.size());
    if (report.tokens_star > 0.0) {
        report.efficiency_score = report.win_rate_star / report.tokens_star;
    } else {
        report.efficiency_defined = false;
    }
    auto [low, high] = wilson_interval(successes, trials);
    report.wilson_low = low;
    report.wilson_high = high;
    return report;
}

std::pair<double, double> wilson_interval(long long successes, long long trials, double z) {
    if (trials < 1 || successes < 0 || successes > trials) {
        throw DomainError("wilson_interval: invalid counts");
    }
    double n = static_cast<double>(trials);
    double p = static_cast<double>(successes) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double ProfileCurve::rho_at(double tau) const {
    double rho = 0.0;
    for (const auto& [t, r] : breakpoints) {
        if (t <= tau) {
            rho = r;
        } else {
            break;
        }
    }
    return rho;
}

std::map<std::string, ProfileCurve> performance_profile(
    const std::map<std::string, std::map<std::string, double>>& method_task_scores,
    const ProfileOptions& options) {
    if (method_task_scores.size() < 2) {
        throw DegenerateInputError("performance_profile: need at least 2 methods");
    }
    // Collect the task set and per-task best scores.
    std::set<std::string> tasks;
    for (const auto& [method, scores] : method_task_scores) {
        for (const auto& [task, score] : scores) {
            if (score < 0.0) throw DomainError("performance_profile: negative score");
            tasks.insert(task);
        }
    }
    if (tasks.empty()) throw DegenerateInputError("performance_profile: no tasks");
    std::map<std::string, double> best;
    for (const std::string& task : tasks) {
        double b = 0.0;
        for (const auto& [method, scores] : method_task_scores) {
            auto it = scores.find(task);
            if (it == scores.end()) {
                throw DomainError("performance_profile: method " + method +
                                  " has no score for task " + task);
            }
            b = std::max(b, it->second);
        }
        if (b <= 0.0) {
            throw DegenerateInputError("performance_profile: all methods score 0 on " + task);
        }
        best[task] = b;
    }

    std::map<std::string, ProfileCurve> out;
    double tau_max = 0.0;
    for (const auto& [method, scores] : method_task_scores) {
        std::vector<double> log_ratios;
        log_ratios.reserve(tasks.size());
        for (const std::string& task : tasks) {
            double score = scores.at(task);
            if (score <= 0.0) score = options.zero_score_epsilon;
            log_ratios.push_back(std::log10(best.at(task) / score));
        }
        std::sort(log_ratios.begin(), log_ratios.end());
        ProfileCurve curve;
        curve.method_id = method;
        double count = 0.0;
        for (size_t i = 0; i < log_ratios.size(); ++i) {
            count += 1.0;
            if (i + 1 < log_ratios.size() && log_ratios[i + 1] == log_ratios[i]) continue;
            curve.breakpoints.emplace_back(log_ratios[i],
                                           count / static_cast<double>(tasks.size()));
        }
        tau_max = std::max(tau_max, curve.breakpoints.back().first);
        out[method] = std::move(curve);
    }
    for (auto& [method, curve] : out) curve.tau_max = tau_max;
    return out;
}

double aup(const ProfileCurve& curve, double lower_bound) {
    if (curve.tau_max <= lower_bound) return 0.0;
    double total = 0.0;
    double prev_tau = lower_bound;
    double rho = curve.rho_at(lower_bound);
    for (const auto& [tau, r] : curve.breakpoints) {
        if (tau <= lower_bound) {
            rho = r;
            continue;
        }
        double upper = std::min(tau, curve.tau_max);
        if (upper > prev_tau) total += rho * (upper - prev_tau);
        prev_tau = upper;
        rho = r;
        if (prev_tau >= curve.tau_max) break;
    }
    if (prev_tau < curve.tau_max) total += rho * (curve.tau_max - prev_tau);
    return total;
}

std::vector<std::pair<long long, long long>> cumulative_wins(
    const std::vector<GameRecord>& records, const std::vector<long long>& token_grid) {
    std::vector<long long> win_tokens;
    for (const GameRecord& r : records) {
        if (r.win) win_tokens.push_back(r.tokens);
    }
    std::sort(win_tokens.begin(), win_tokens.end());
    std::vector<std::pair<long long, long long>> out;
    out.reserve(token_grid.size());
    for (long long budget : token_grid) {
        auto it = std::upper_bound(win_tokens.begin(), win_tokens.end(), budget);
        out.emplace_back(budget, static_cast<long long>(it - win_tokens.begin()));
    }
    return out;
}

} // namespace lfs
