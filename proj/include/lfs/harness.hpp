#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "lfs/evaluator.hpp"
#include "lfs/search.hpp"

namespace lfs {

struct TaskSpec {
    std::string name; // directory/file-safe identifier, e.g. "countdown_d3"
    TaskKind kind = TaskKind::Countdown;
    int length = 3; // countdown sizes: 3, 5, 7
    int box_width = 2;
    int box_height = 2;
    double clue_fraction = 0.5;
    long long token_budget = 0; // required for benchmark runs
};

struct MethodSpec {
    std::string name; // e.g. "mcts_c0.5"
    SearchConfig search;
};

struct BenchmarkConfig {
    uint64_t seed = 0;
    int runs_per_game = 5;
    int games_per_task = 20;
    int parallelism = 4;
    std::string dataset_dir = "data";
    std::string output_dir = "runs";
    BackendConfig backend;
    std::vector<TaskSpec> tasks;
    std::vector<MethodSpec> methods;
    std::string record_dir; // when set, record per-run call logs here
    std::string replay_dir; // call logs consumed when backend = replay
};

BenchmarkConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const BenchmarkConfig& config);
BenchmarkConfig load_config(const std::string& path);

// Fingerprint of every run-affecting field; resumability is keyed on it.
std::string config_hash(const BenchmarkConfig& config);

std::string dataset_path(const BenchmarkConfig& config, const TaskSpec& task);

// Writes one JSONL instance file per task. Idempotent per seed: rerunning
// rewrites identical bytes.
void cmd_generate(const BenchmarkConfig& config);

struct RunBatchResult {
    int attempted = 0;
    int completed = 0; // finished now (any outcome, including dead ends)
    int skipped = 0;   // found complete from a previous invocation
    int infrastructure_failures = 0;
};

// Executes |methods| x |games| x runs_per_game searches with bounded
// parallelism. Each (method, game) pair owns one trace JSONL under
// output_dir/<method>/; summary.jsonl at the root collects one record per
// run. Runs already present in the summary (same config hash) are skipped.
RunBatchResult cmd_run(const BenchmarkConfig& config);

// Aggregates a run directory into CSV reports: per-method-per-task
// aggregates with Wilson bounds, performance-profile breakpoints, AUP table,
// cumulative-wins series, and tree-size summary.
void cmd_analyze(const std::string& run_dir, const std::string& out_dir);

// Reanalysis of published scores: CSV rows "method,task,score" feed the
// profile + AUP pipeline directly.
void cmd_analyze_scores(const std::string& csv_path, const std::string& out_dir,
                        double zero_score_epsilon = 0.01);

// Per-run seed derivation (recorded in summaries for reproducibility).
uint64_t run_seed(const BenchmarkConfig& config, size_t task_index, int game_index,
                  int run_index);

} // namespace lfs
