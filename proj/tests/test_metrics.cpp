#include <doctest.h>

#include <cmath>
#include <random>

#include "lfs/errors.hpp"
#include "lfs/metrics.hpp"

using namespace lfs;

namespace {

// Independent Wilson bounds via the quadratic roots of
// (p - p_hat)^2 = z^2 p (1 - p) / n.
std::pair<double, double> wilson_by_roots(long long successes, long long trials, double z) {
    double n = static_cast<double>(trials);
    double p = static_cast<double>(successes) / n;
    double z2 = z * z;
    double a = 1.0 + z2 / n;
    double b = -(2.0 * p + z2 / n);
    double c = p * p;
    double disc = std::sqrt(b * b - 4.0 * a * c);
    double low = (-b - disc) / (2.0 * a);
    double high = (-b + disc) / (2.0 * a);
    return {std::max(0.0, low), std::min(1.0, high)};
}

std::vector<GameRecord> make_records(const std::string& method,
                                     const std::vector<std::vector<int>>& game_wins,
                                     const std::vector<long long>& game_tokens) {
    std::vector<GameRecord> out;
    for (size_t g = 0; g < game_wins.size(); ++g) {
        for (size_t r = 0; r < game_wins[g].size(); ++r) {
            GameRecord rec;
            rec.game_id = "g" + std::to_string(g);
            rec.method_id = method;
            rec.run_index = static_cast<int>(r);
            rec.win = game_wins[g][r];
            rec.tokens = game_tokens[g];
            out.push_back(rec);
        }
    }
    return out;
}

// The published GPT-4o WinRate table: 4 methods x 5 tasks, percent scale.
std::map<std::string, std::map<std::string, double>> published_win_rates() {
    return {
        {"tot_bfs", {{"countdown_d3", 82.11}, {"countdown_d5", 9.47}, {"countdown_d7", 0.0},
                     {"sudoku_4x4", 53.68}, {"sudoku_6x6", 0.0}}},
        {"bestfs", {{"countdown_d3", 100.0}, {"countdown_d5", 49.47}, {"countdown_d7", 11.11},
                    {"sudoku_4x4", 41.05}, {"sudoku_6x6", 0.0}}},
        {"mcts", {{"countdown_d3", 100.0}, {"countdown_d5", 60.0}, {"countdown_d7", 32.63},
                  {"sudoku_4x4", 100.0}, {"sudoku_6x6", 0.0}}},
        {"lfs", {{"countdown_d3", 100.0}, {"countdown_d5", 63.16}, {"countdown_d7", 47.37},
                 {"sudoku_4x4", 96.84}, {"sudoku_6x6", 2.22}}},
    };
}

} // namespace

TEST_CASE("win rate and the strict solved threshold") {
    auto r = win_rate({1, 1, 1, 0, 0});
    CHECK(r.rate == doctest::Approx(0.6));
    CHECK(r.solved);
    r = win_rate({0, 0, 0, 0, 0});
    CHECK(r.rate == doctest::Approx(0.0));
    CHECK_FALSE(r.solved);
    // Exactly 0.5 is NOT solved.
    r = win_rate({1, 0, 1, 0, 0});
    CHECK(r.rate == doctest::Approx(0.4));
    CHECK_FALSE(r.solved);
    r = win_rate({1, 1, 0, 0});
    CHECK(r.rate == doctest::Approx(0.5));
    CHECK_FALSE(r.solved);
}

TEST_CASE("aggregate over two games") {
    auto records = make_records("m", {{1, 1, 1, 1, 1}, {0, 0, 0, 0, 0}}, {100, 300});
    auto report = aggregate(records, "m");
    CHECK(report.win_rate_star == doctest::Approx(0.5));
    CHECK(report.tokens_star == doctest::Approx(200.0));
    CHECK(report.efficiency_score == doctest::Approx(0.0025));
    CHECK(report.games == 2);
    CHECK(report.runs == 10);
}

TEST_CASE("all games won gives efficiency 1 over tokens") {
    auto records = make_records("m", {{1, 1}, {1, 1}}, {500, 1500});
    auto report = aggregate(records, "m");
    CHECK(report.win_rate_star == doctest::Approx(1.0));
    CHECK(report.efficiency_score == doctest::Approx(1.0 / 1000.0));
}

TEST_CASE("zero tokens leaves efficiency undefined") {
    auto records = make_records("m", {{1}}, {0});
    auto report = aggregate(records, "m");
    CHECK_FALSE(report.efficiency_defined);
}

TEST_CASE("per-game win mixes reproduce the published 14.74-point gap") {
    // 19 games x 5 runs: 45/95 run wins = 47.37%, 31/95 = 32.63%.
    std::vector<std::vector<int>> lfs_wins(19, std::vector<int>(5, 0));
    int remaining = 45;
    for (auto& game : lfs_wins) {
        for (auto& w : game) {
            if (remaining > 0) {
                w = 1;
                --remaining;
            }
        }
    }
    std::vector<std::vector<int>> mcts_wins(19, std::vector<int>(5, 0));
    remaining = 31;
    for (auto& game : mcts_wins) {
        for (auto& w : game) {
            if (remaining > 0) {
                w = 1;
                --remaining;
            }
        }
    }
    auto lfs_report = aggregate(make_records("lfs", lfs_wins,
                                             std::vector<long long>(19, 1000)),
                                "lfs");
    auto mcts_report = aggregate(make_records("mcts", mcts_wins,
                                              std::vector<long long>(19, 1000)),
                                 "mcts");
    CHECK(100.0 * lfs_report.win_rate_star == doctest::Approx(47.37).epsilon(0.001));
    CHECK(100.0 * mcts_report.win_rate_star == doctest::Approx(32.63).epsilon(0.001));
    CHECK(100.0 * (lfs_report.win_rate_star - mcts_report.win_rate_star) ==
          doctest::Approx(14.74).epsilon(0.001));
}

TEST_CASE("wilson interval spot values") {
    auto [low0, high0] = wilson_interval(0, 5);
    CHECK(low0 == doctest::Approx(0.0));
    CHECK(high0 > 0.0);

    auto [low5, high5] = wilson_interval(5, 5);
    CHECK(low5 == doctest::Approx(0.566).epsilon(0.002));
    CHECK(high5 == doctest::Approx(1.0));

    auto [low3, high3] = wilson_interval(3, 5);
    CHECK(low3 < 0.6);
    CHECK(high3 > 0.6);
}

TEST_CASE("wilson interval matches the quadratic-root reference") {
    for (long long trials = 1; trials <= 20; ++trials) {
        for (long long successes = 0; successes <= trials; ++successes) {
            auto [low, high] = wilson_interval(successes, trials);
            auto [rlow, rhigh] = wilson_by_roots(successes, trials, 1.96);
            CHECK(std::abs(low - rlow) < 1e-6);
            CHECK(std::abs(high - rhigh) < 1e-6);
        }
    }
}

TEST_CASE("wilson interval always contains the point estimate") {
    std::mt19937_64 rng(10);
    for (int iter = 0; iter < 200; ++iter) {
        long long trials = 1 + static_cast<long long>(rng() % 100);
        long long successes = static_cast<long long>(rng() % (trials + 1));
        auto [low, high] = wilson_interval(successes, trials);
        double p = static_cast<double>(successes) / static_cast<double>(trials);
        CHECK(low <= p + 1e-12);
        CHECK(high >= p - 1e-12);
        CHECK(low >= 0.0);
        CHECK(high <= 1.0);
    }
    CHECK_THROWS_AS(wilson_interval(3, 0), DomainError);
    CHECK_THROWS_AS(wilson_interval(6, 5), DomainError);
}

TEST_CASE("two-method profile by hand") {
    std::map<std::string, std::map<std::string, double>> scores = {
        {"A", {{"t1", 1.0}, {"t2", 0.5}}},
        {"B", {{"t1", 0.5}, {"t2", 1.0}}},
    };
    auto profiles = performance_profile(scores);
    CHECK(profiles.at("A").rho_at(0.0) == doctest::Approx(0.5));
    CHECK(profiles.at("A").rho_at(std::log10(2.0)) == doctest::Approx(1.0));
    CHECK(profiles.at("B").rho_at(0.0) == doctest::Approx(0.5));
    CHECK(profiles.at("B").rho_at(std::log10(2.0)) == doctest::Approx(1.0));
    CHECK(profiles.at("A").tau_max == doctest::Approx(std::log10(2.0)));
}

TEST_CASE("a dominant method reaches rho 1 at tau 0") {
    std::map<std::string, std::map<std::string, double>> scores = {
        {"best", {{"t1", 10.0}, {"t2", 20.0}}},
        {"worse", {{"t1", 5.0}, {"t2", 2.0}}},
    };
    auto profiles = performance_profile(scores);
    CHECK(profiles.at("best").rho_at(0.0) == doctest::Approx(1.0));
    CHECK(profiles.at("worse").rho_at(0.0) == doctest::Approx(0.0));
}

TEST_CASE("rho is non-decreasing") {
    auto profiles = performance_profile(published_win_rates());
    for (const auto& [method, curve] : profiles) {
        double prev = 0.0;
        for (const auto& [tau, rho] : curve.breakpoints) {
            CHECK(rho >= prev);
            prev = rho;
        }
        CHECK(prev == doctest::Approx(1.0));
    }
}

TEST_CASE("aup of simple step functions") {
    ProfileCurve flat;
    flat.breakpoints = {{0.0, 1.0}};
    flat.tau_max = 3.0;
    CHECK(aup(flat, 1.0) == doctest::Approx(2.0));

    ProfileCurve stepped;
    stepped.breakpoints = {{0.0, 0.5}, {2.0, 1.0}};
    stepped.tau_max = 3.0;
    CHECK(aup(stepped, 1.0) == doctest::Approx(0.5 * 1.0 + 1.0 * 1.0)); // = 1.5

    // Degenerate window.
    ProfileCurve narrow;
    narrow.breakpoints = {{0.0, 1.0}};
    narrow.tau_max = 0.5;
    CHECK(aup(narrow, 1.0) == doctest::Approx(0.0));
}

TEST_CASE("aup is monotone under pointwise dominance") {
    ProfileCurve above;
    above.breakpoints = {{0.0, 0.6}, {1.5, 1.0}};
    above.tau_max = 4.0;
    ProfileCurve below;
    below.breakpoints = {{0.5, 0.4}, {2.5, 1.0}};
    below.tau_max = 4.0;
    // above dominates below pointwise.
    for (double tau = 0.0; tau <= 4.0; tau += 0.1) {
        CHECK(above.rho_at(tau) >= below.rho_at(tau));
    }
    CHECK(aup(above, 0.0) >= aup(below, 0.0));
    CHECK(aup(above, 1.0) >= aup(below, 1.0));
}

TEST_CASE("published table reproduces the AUP ordering") {
    ProfileOptions options; // epsilon = 0.01 on the percent scale
    auto profiles = performance_profile(published_win_rates(), options);
    double lfs = aup(profiles.at("lfs"), 0.0);
    double mcts = aup(profiles.at("mcts"), 0.0);
    double bestfs = aup(profiles.at("bestfs"), 0.0);
    double tot = aup(profiles.at("tot_bfs"), 0.0);
    CHECK(lfs > mcts);
    CHECK(mcts > bestfs);
    CHECK(bestfs > tot);
}

TEST_CASE("degenerate score tables are rejected") {
    std::map<std::string, std::map<std::string, double>> all_zero = {
        {"A", {{"t1", 0.0}}},
        {"B", {{"t1", 0.0}}},
    };
    CHECK_THROWS_AS(performance_profile(all_zero), DegenerateInputError);
    std::map<std::string, std::map<std::string, double>> single = {{"A", {{"t1", 1.0}}}};
    CHECK_THROWS_AS(performance_profile(single), DegenerateInputError);
}

TEST_CASE("cumulative wins counts runs within budget") {
    std::vector<GameRecord> records;
    GameRecord rec;
    rec.game_id = "g0";
    rec.method_id = "m";
    rec.win = 1;
    rec.tokens = 1000;
    records.push_back(rec);
    auto curve = cumulative_wins(records, {500, 1500});
    REQUIRE(curve.size() == 2);
    CHECK(curve[0] == std::pair<long long, long long>{500, 0});
    CHECK(curve[1] == std::pair<long long, long long>{1500, 1});
}

TEST_CASE("cumulative wins is zero without wins and non-decreasing otherwise") {
    std::vector<GameRecord> records = make_records("m", {{0, 0}, {0, 0}}, {100, 200});
    for (auto& [budget, wins] : cumulative_wins(records, {50, 150, 250})) CHECK(wins == 0);

    records = make_records("m", {{1, 0}, {1, 1}}, {700, 300});
    auto curve = cumulative_wins(records, {100, 300, 700, 900});
    long long prev = -1;
    for (auto& [budget, wins] : curve) {
        CHECK(wins >= prev);
        prev = wins;
    }
    CHECK(curve.back().second == 3);
}
