#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lfs/errors.hpp"
#include "lfs/harness.hpp"

namespace {

using lfs::BenchmarkConfig;

constexpr int kExitOk = 0;

std::string format_c(double c) {
    std::ostringstream os;
    os << c;
    std::string s = os.str();
    if (s.find('.') == std::string::npos) s += ".0";
    return s;
}

constexpr int kExitUsage = 1;
constexpr int kExitPartialFailure = 2;
constexpr int kExitDataError = 3;

// Preset tasks covering the benchmark suite; anything else comes from the
// config file.
lfs::TaskSpec preset_task(const std::string& name) {
    lfs::TaskSpec t;
    t.name = name;
    if (name == "countdown_d3") {
        t.kind = lfs::TaskKind::Countdown;
        t.length = 3;
    } else if (name == "countdown_d5") {
        t.kind = lfs::TaskKind::Countdown;
        t.length = 5;
    } else if (name == "countdown_d7") {
        t.kind = lfs::TaskKind::Countdown;
        t.length = 7;
    } else if (name == "sudoku_4x4") {
        t.kind = lfs::TaskKind::Sudoku;
        t.box_width = 2;
        t.box_height = 2;
        t.clue_fraction = 0.5;
    } else if (name == "sudoku_6x6") {
        t.kind = lfs::TaskKind::Sudoku;
        t.box_width = 2;
        t.box_height = 3;
        t.clue_fraction = 0.4;
    } else {
        throw lfs::DataError("unknown task preset: " + name +
                             " (expected countdown_d3/d5/d7, sudoku_4x4, sudoku_6x6)");
    }
    return t;
}

struct CommonFlags {
    std::string config_path;
    std::vector<std::string> tasks;
    std::vector<std::string> methods;
    long long budget = 0;
    uint64_t seed = 0;
    bool seed_set = false;
    int games = 0;
    int runs = 0;
    int parallelism = 0;
    double c_puct = 0.0;
    bool c_puct_set = false;
    int beam_width = 0;
    std::string backend;
    std::string model;
    std::string endpoint;
    std::string reasoning_effort;
    std::string dataset_dir;
    std::string output_dir;
    std::string record_dir;
    std::string replay_dir;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "benchmark config JSON file");
    cmd->add_option("--task", f.tasks,
                    "task preset (countdown_d3/d5/d7, sudoku_4x4, sudoku_6x6); repeatable");
    cmd->add_option("--method", f.methods, "search method (lfs, tot_bfs, bestfs, mcts); repeatable");
    cmd->add_option("--budget", f.budget, "token budget per run, applied to all tasks");
    cmd->add_option("--seed", f.seed, "top-level seed")->each([&](const std::string&) {
        f.seed_set = true;
    });
    cmd->add_option("--games", f.games, "games per task");
    cmd->add_option("--runs", f.runs, "runs per game");
    cmd->add_option("--parallelism", f.parallelism, "concurrent runs");
    cmd->add_option("--c-puct", f.c_puct, "MCTS exploration constant")
        ->each([&](const std::string&) { f.c_puct_set = true; });
    cmd->add_option("--beam-width", f.beam_width, "ToT-BFS beam width");
    cmd->add_option("--backend", f.backend, "evaluator backend (oracle, live, replay)");
    cmd->add_option("--model", f.model, "model name for the live backend");
    cmd->add_option("--endpoint", f.endpoint, "chat-completions endpoint URL");
    cmd->add_option("--reasoning-effort", f.reasoning_effort,
                    "reasoning effort for reasoning models (e.g. low)");
    cmd->add_option("--dataset-dir", f.dataset_dir, "instance dataset directory");
    cmd->add_option("--output-dir", f.output_dir, "run output directory");
    cmd->add_option("--record-dir", f.record_dir, "record per-run evaluator call logs here");
    cmd->add_option("--replay-dir", f.replay_dir, "read per-run call logs from here");
}

BenchmarkConfig build_config(const CommonFlags& f) {
    BenchmarkConfig config;
    if (!f.config_path.empty()) config = lfs::load_config(f.config_path);
    if (f.seed_set) config.seed = f.seed;
    if (f.games > 0) config.games_per_task = f.games;
    if (f.runs > 0) config.runs_per_game = f.runs;
    if (f.parallelism > 0) config.parallelism = f.parallelism;
    if (!f.dataset_dir.empty()) config.dataset_dir = f.dataset_dir;
    if (!f.output_dir.empty()) config.output_dir = f.output_dir;
    if (!f.record_dir.empty()) config.record_dir = f.record_dir;
    if (!f.replay_dir.empty()) config.replay_dir = f.replay_dir;
    if (!f.backend.empty()) config.backend.backend = lfs::backend_kind_from_name(f.backend);
    if (!f.model.empty()) config.backend.model = f.model;
    if (!f.endpoint.empty()) config.backend.endpoint = f.endpoint;
    if (!f.reasoning_effort.empty()) config.backend.reasoning_effort = f.reasoning_effort;
    for (const std::string& name : f.tasks) config.tasks.push_back(preset_task(name));
    if (f.budget > 0) {
        for (auto& task : config.tasks) task.token_budget = f.budget;
    }
    for (const std::string& name : f.methods) {
        lfs::MethodSpec m;
        m.search.method = lfs::search_method_from_name(name);
        m.name = name;
        if (f.c_puct_set && m.search.method == lfs::SearchMethod::MCTS) {
            m.search.c_puct = f.c_puct;
            m.name = "mcts_c" + format_c(f.c_puct);
        }
        if (f.beam_width > 0) m.search.beam_width = f.beam_width;
        config.methods.push_back(std::move(m));
    }
    return config;
}

int run_export_tree(const std::string& trace_path, int run_index, const std::string& format,
                    const std::string& out_path) {
    std::ifstream in(trace_path);
    if (!in) throw lfs::DataError("cannot open trace file: " + trace_path);
    std::vector<std::vector<nlohmann::json>> runs;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json ev = nlohmann::json::parse(line, nullptr, false);
        if (ev.is_discarded()) continue;
        if (ev.value("event", std::string()) == "run_start") runs.emplace_back();
        if (runs.empty()) continue;
        runs.back().push_back(std::move(ev));
    }
    if (run_index < 0 || run_index >= static_cast<int>(runs.size())) {
        throw lfs::DataError("trace has " + std::to_string(runs.size()) +
                             " runs; run index out of range");
    }
    lfs::RunResult result = lfs::result_from_trace(runs[static_cast<size_t>(run_index)]);
    std::string text = lfs::export_tree(result, format == "json"
                                                    ? lfs::TreeExportFormat::Json
                                                    : lfs::TreeExportFormat::Dot);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw lfs::DataError("cannot write: " + out_path);
        out << text;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Benchmark harness for LLM-guided tree search (LFS, ToT-BFS, BestFS, "
                 "PUCT-MCTS) on Countdown and Sudoku"};
    app.require_subcommand(1);

    CommonFlags gen_flags;
    CLI::App* gen = app.add_subcommand("generate", "generate task instance datasets");
    add_common_flags(gen, gen_flags);

    CommonFlags run_flags;
    CLI::App* run = app.add_subcommand("run", "execute the benchmark (resumable)");
    add_common_flags(run, run_flags);

    CommonFlags sweep_flags;
    std::vector<double> sweep_cs{0.5, 1.0, 2.5};
    CLI::App* sweep = app.add_subcommand(
        "sweep", "run MCTS over a set of exploration constants");
    add_common_flags(sweep, sweep_flags);
    sweep->add_option("--c", sweep_cs, "exploration constants to sweep");

    std::string analyze_runs, analyze_out = "reports", scores_csv;
    double epsilon = 0.01;
    CLI::App* analyze = app.add_subcommand("analyze", "aggregate run traces into CSV reports");
    analyze->add_option("--runs", analyze_runs, "run output directory to analyze");
    analyze->add_option("--out", analyze_out, "report output directory");
    analyze->add_option("--scores-csv", scores_csv,
                        "reanalyze a published score table (method,task,score)");
    analyze->add_option("--epsilon", epsilon, "zero-score substitution for profiles");

    std::string tree_trace, tree_format = "dot", tree_out;
    int tree_run = 0;
    CLI::App* export_tree_cmd = app.add_subcommand("export-tree", "render a recorded search tree");
    export_tree_cmd->add_option("--trace", tree_trace, "trace JSONL file")->required();
    export_tree_cmd->add_option("--run", tree_run, "run index within the trace file");
    export_tree_cmd->add_option("--format", tree_format, "dot or json")
        ->check(CLI::IsMember({"dot", "json"}));
    export_tree_cmd->add_option("--out", tree_out, "output file (stdout when omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            BenchmarkConfig config = build_config(gen_flags);
            if (config.tasks.empty()) {
                std::cerr << "generate: no tasks given (use --task or --config)\n";
                return kExitUsage;
            }
            lfs::cmd_generate(config);
            std::cerr << "generated " << config.tasks.size() << " dataset file(s) under "
                      << config.dataset_dir << "\n";
            return kExitOk;
        }
        if (run->parsed() || sweep->parsed()) {
            BenchmarkConfig config = build_config(run->parsed() ? run_flags : sweep_flags);
            if (sweep->parsed()) {
                config.methods.clear();
                for (double c : sweep_cs) {
                    lfs::MethodSpec m;
                    m.search.method = lfs::SearchMethod::MCTS;
                    m.search.c_puct = c;
                    m.name = "mcts_c" + format_c(c);
                    config.methods.push_back(std::move(m));
                }
            }
            if (config.tasks.empty() || config.methods.empty()) {
                std::cerr << "run: need at least one task and one method\n";
                return kExitUsage;
            }
            auto totals = lfs::cmd_run(config);
            std::cerr << "attempted " << totals.attempted << ", completed " << totals.completed
                      << ", skipped " << totals.skipped << ", infrastructure failures "
                      << totals.infrastructure_failures << "\n";
            return totals.infrastructure_failures > 0 ? kExitPartialFailure : kExitOk;
        }
        if (analyze->parsed()) {
            if (!scores_csv.empty()) {
                lfs::cmd_analyze_scores(scores_csv, analyze_out, epsilon);
            } else if (!analyze_runs.empty()) {
                lfs::cmd_analyze(analyze_runs, analyze_out);
            } else {
                std::cerr << "analyze: need --runs or --scores-csv\n";
                return kExitUsage;
            }
            std::cerr << "reports written to " << analyze_out << "\n";
            return kExitOk;
        }
        if (export_tree_cmd->parsed()) {
            return run_export_tree(tree_trace, tree_run, tree_format, tree_out);
        }
    } catch (const lfs::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDataError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDataError;
    }
    return kExitUsage;
}
