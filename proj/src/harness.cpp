#include "lfs/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "lfs/errors.hpp"
#include "lfs/metrics.hpp"
#include "lfs/rng.hpp"
#include "lfs/sha256.hpp"

namespace fs = std::filesystem;

namespace lfs {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Config
// ---------------------------------------------------------------------------

namespace {

json backend_to_json(const BackendConfig& b) {
    return {{"backend", backend_kind_name(b.backend)},
            {"endpoint", b.endpoint},
            {"model", b.model},
            {"temperature", b.temperature},
            {"max_completion_tokens", b.max_completion_tokens},
            {"timeout_seconds", b.timeout_seconds},
            {"reasoning_effort", b.reasoning_effort},
            {"max_parse_retries", b.max_parse_retries},
            {"max_transport_retries", b.max_transport_retries},
            {"max_concurrent_requests", b.max_concurrent_requests},
            {"api_key_env", b.api_key_env},
            {"replay_path", b.replay_path}};
}

BackendConfig backend_from_json(const json& j) {
    BackendConfig b;
    b.backend = backend_kind_from_name(j.value("backend", std::string("oracle")));
    b.endpoint = j.value("endpoint", b.endpoint);
    b.model = j.value("model", b.model);
    b.temperature = j.value("temperature", b.temperature);
    b.max_completion_tokens = j.value("max_completion_tokens", b.max_completion_tokens);
    b.timeout_seconds = j.value("timeout_seconds", b.timeout_seconds);
    b.reasoning_effort = j.value("reasoning_effort", b.reasoning_effort);
    b.max_parse_retries = j.value("max_parse_retries", b.max_parse_retries);
    b.max_transport_retries = j.value("max_transport_retries", b.max_transport_retries);
    b.max_concurrent_requests = j.value("max_concurrent_requests", b.max_concurrent_requests);
    b.api_key_env = j.value("api_key_env", b.api_key_env);
    b.replay_path = j.value("replay_path", b.replay_path);
    return b;
}

json task_to_json(const TaskSpec& t) {
    json j = {{"name", t.name},
              {"kind", task_kind_name(t.kind)},
              {"token_budget", t.token_budget}};
    if (t.kind == TaskKind::Countdown) {
        j["length"] = t.length;
    } else {
        j["box_width"] = t.box_width;
        j["box_height"] = t.box_height;
        j["clue_fraction"] = t.clue_fraction;
    }
    return j;
}

TaskSpec task_from_json(const json& j) {
    TaskSpec t;
    t.name = j.at("name").get<std::string>();
    t.kind = task_kind_from_name(j.at("kind").get<std::string>());
    t.token_budget = j.value("token_budget", 0LL);
    t.length = j.value("length", t.length);
    t.box_width = j.value("box_width", t.box_width);
    t.box_height = j.value("box_height", t.box_height);
    t.clue_fraction = j.value("clue_fraction", t.clue_fraction);
    return t;
}

json method_to_json(const MethodSpec& m) {
    json j = {{"name", m.name}, {"method", search_method_name(m.search.method)}};
    j["beam_width"] = m.search.beam_width;
    j["c_puct"] = m.search.c_puct;
    if (m.search.max_depth) j["max_depth"] = *m.search.max_depth;
    return j;
}

MethodSpec method_from_json(const json& j) {
    MethodSpec m;
    m.search.method = search_method_from_name(j.at("method").get<std::string>());
    m.name = j.value("name", search_method_name(m.search.method));
    m.search.beam_width = j.value("beam_width", m.search.beam_width);
    m.search.c_puct = j.value("c_puct", m.search.c_puct);
    if (j.contains("max_depth")) m.search.max_depth = j["max_depth"].get<int>();
    return m;
}

std::string csv_num(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

} // namespace

BenchmarkConfig config_from_json(const json& j) {
    BenchmarkConfig c;
    c.seed = j.value("seed", 0ULL);
    c.runs_per_game = j.value("runs_per_game", c.runs_per_game);
    c.games_per_task = j.value("games_per_task", c.games_per_task);
    c.parallelism = j.value("parallelism", c.parallelism);
    c.dataset_dir = j.value("dataset_dir", c.dataset_dir);
    c.output_dir = j.value("output_dir", c.output_dir);
    c.record_dir = j.value("record_dir", c.record_dir);
    c.replay_dir = j.value("replay_dir", c.replay_dir);
    if (j.contains("backend")) c.backend = backend_from_json(j["backend"]);
    for (const json& t : j.value("tasks", json::array())) c.tasks.push_back(task_from_json(t));
    for (const json& m : j.value("methods", json::array())) {
        c.methods.push_back(method_from_json(m));
    }
    if (c.runs_per_game < 1) throw DataError("config: runs_per_game must be >= 1");
    return c;
}

json config_to_json(const BenchmarkConfig& c) {
    json tasks = json::array();
    for (const TaskSpec& t : c.tasks) tasks.push_back(task_to_json(t));
    json methods = json::array();
    for (const MethodSpec& m : c.methods) methods.push_back(method_to_json(m));
    return {{"seed", c.seed},
            {"runs_per_game", c.runs_per_game},
            {"games_per_task", c.games_per_task},
            {"parallelism", c.parallelism},
            {"dataset_dir", c.dataset_dir},
            {"output_dir", c.output_dir},
            {"record_dir", c.record_dir},
            {"replay_dir", c.replay_dir},
            {"backend", backend_to_json(c.backend)},
            {"tasks", tasks},
            {"methods", methods}};
}

BenchmarkConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open config file: " + path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw DataError("config file is not valid JSON: " + path);
    return config_from_json(j);
}

std::string config_hash(const BenchmarkConfig& c) {
    // Run-affecting fields only: where outputs land and how many workers run
    // do not change results.
    json tasks = json::array();
    for (const TaskSpec& t : c.tasks) tasks.push_back(task_to_json(t));
    json methods = json::array();
    for (const MethodSpec& m : c.methods) methods.push_back(method_to_json(m));
    json key = {{"seed", c.seed},
                {"runs_per_game", c.runs_per_game},
                {"games_per_task", c.games_per_task},
                {"backend", backend_to_json(c.backend)},
                {"replay_dir", c.replay_dir},
                {"tasks", tasks},
                {"methods", methods}};
    return sha256_hex(key.dump()).substr(0, 16);
}

uint64_t run_seed(const BenchmarkConfig& config, size_t task_index, int game_index,
                  int run_index) {
    return mix_seed(config.seed, (task_index << 24) ^ static_cast<uint64_t>(game_index),
                    static_cast<uint64_t>(run_index));
}

std::string dataset_path(const BenchmarkConfig& config, const TaskSpec& task) {
    return (fs::path(config.dataset_dir) / (task.name + ".jsonl")).string();
}

// ---------------------------------------------------------------------------
// generate
// ---------------------------------------------------------------------------

void cmd_generate(const BenchmarkConfig& config) {
    fs::create_directories(config.dataset_dir);
    for (size_t ti = 0; ti < config.tasks.size(); ++ti) {
        const TaskSpec& task = config.tasks[ti];
        std::vector<TaskInstance> instances;
        instances.reserve(static_cast<size_t>(config.games_per_task));
        for (int g = 0; g < config.games_per_task; ++g) {
            uint64_t seed = mix_seed(config.seed, ti, static_cast<uint64_t>(g));
            try {
                if (task.kind == TaskKind::Countdown) {
                    instances.push_back(make_countdown_instance(task.length, seed));
                } else {
                    instances.push_back(make_sudoku_instance(task.box_width, task.box_height,
                                                             task.clue_fraction, seed));
                }
            } catch (const GenerationFailure& e) {
                throw GenerationFailure("task " + task.name + " game " + std::to_string(g) +
                                        ": " + e.what());
            }
        }
        if (instances.empty()) {
            std::cerr << "warning: task " << task.name << " generated an empty dataset\n";
        }
        save_instances(dataset_path(config, task), instances);
    }
}

// ---------------------------------------------------------------------------
// run
// ---------------------------------------------------------------------------

namespace {

struct RunJob {
    size_t task_index;
    size_t method_index;
    int game_index;
    TaskInstance instance;
};

std::string run_key(const std::string& hash, const std::string& method,
                    const std::string& task, const std::string& instance_id, int run_index) {
    return hash + '/' + method + '/' + task + '/' + instance_id + '/' + std::to_string(run_index);
}

std::string trace_file_name(const TaskSpec& task, const TaskInstance& instance) {
    return task.name + "__" + instance.instance_id + ".jsonl";
}

} // namespace

RunBatchResult cmd_run(const BenchmarkConfig& config) {
    if (config.tasks.empty() || config.methods.empty()) {
        throw DataError("run: config needs at least one task and one method");
    }
    for (const TaskSpec& task : config.tasks) {
        if (task.token_budget <= 0) {
            throw DataError("run: task " + task.name + " has no token budget");
        }
    }
    const std::string hash = config_hash(config);
    fs::create_directories(config.output_dir);

    // Summary lines from previous invocations drive resumability.
    std::set<std::string> completed;
    fs::path summary_path = fs::path(config.output_dir) / "summary.jsonl";
    if (fs::exists(summary_path)) {
        std::ifstream in(summary_path);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            json j = json::parse(line, nullptr, false);
            if (j.is_discarded() || !j.contains("run")) continue;
            const json& r = j["run"];
            if (r.value("config_hash", std::string()) != hash) continue;
            completed.insert(run_key(hash, r.value("method", std::string()),
                                     r.value("task", std::string()),
                                     r.value("instance_id", std::string()),
                                     r.value("run_index", -1)));
        }
    }

    // Build the job list: one job per (method, game) pair runs all n repeats
    // so each trace file is written by a single worker.
    std::vector<RunJob> jobs;
    for (size_t ti = 0; ti < config.tasks.size(); ++ti) {
        auto instances = load_instances(dataset_path(config, config.tasks[ti]));
        if (instances.size() > static_cast<size_t>(config.games_per_task)) {
            instances.resize(static_cast<size_t>(config.games_per_task));
        }
        for (size_t mi = 0; mi < config.methods.size(); ++mi) {
            fs::create_directories(fs::path(config.output_dir) / config.methods[mi].name);
            if (!config.record_dir.empty()) {
                fs::create_directories(fs::path(config.record_dir) / config.methods[mi].name);
            }
            for (size_t g = 0; g < instances.size(); ++g) {
                jobs.push_back(RunJob{ti, mi, static_cast<int>(g), instances[g]});
            }
        }
    }

    std::shared_ptr<Backend> shared_backend;
    if (config.backend.backend == BackendKind::LiveAPI) {
        shared_backend = make_live_backend(config.backend);
    }

    std::mutex summary_mutex;
    std::ofstream summary_out(summary_path, std::ios::app);
    if (!summary_out) throw DataError("cannot open summary file: " + summary_path.string());

    RunBatchResult totals;
    std::mutex totals_mutex;
    std::atomic<size_t> next_job{0};
    std::atomic<long long> done_runs{0};
    const long long total_runs =
        static_cast<long long>(jobs.size()) * config.runs_per_game;

    auto worker = [&]() {
        while (true) {
            size_t ji = next_job.fetch_add(1);
            if (ji >= jobs.size()) return;
            const RunJob& job = jobs[ji];
            const TaskSpec& task = config.tasks[job.task_index];
            const MethodSpec& method = config.methods[job.method_index];

            fs::path trace_path = fs::path(config.output_dir) / method.name /
                                  trace_file_name(task, job.instance);
            std::ofstream trace_out;

            for (int r = 0; r < config.runs_per_game; ++r) {
                std::string key =
                    run_key(hash, method.name, task.name, job.instance.instance_id, r);
                if (completed.count(key)) {
                    std::lock_guard lock(totals_mutex);
                    ++totals.skipped;
                    continue;
                }
                {
                    std::lock_guard lock(totals_mutex);
                    ++totals.attempted;
                }

                std::string call_log_name = task.name + "__" + job.instance.instance_id +
                                            "_run" + std::to_string(r) + ".jsonl";
                auto started = std::chrono::steady_clock::now();
                RunResult result;
                bool infra = false;
                try {
                    std::shared_ptr<Backend> backend;
                    if (config.backend.backend == BackendKind::LiveAPI) {
                        backend = shared_backend;
                    } else if (config.backend.backend == BackendKind::Replay) {
                        backend = make_replay_backend(
                            (fs::path(config.replay_dir) / method.name / call_log_name)
                                .string());
                    } else {
                        backend = make_oracle_backend();
                    }
                    Evaluator evaluator(backend, config.backend);
                    if (!config.record_dir.empty()) {
                        evaluator.record_calls_to(
                            (fs::path(config.record_dir) / method.name / call_log_name)
                                .string());
                    }
                    SearchConfig search = method.search;
                    search.token_budget = task.token_budget;
                    result = run_search(job.instance, evaluator, search);
                } catch (const std::exception& e) {
                    infra = true;
                    result.outcome = RunOutcome::InfrastructureFailure;
                    result.trace.push_back(
                        {{"event", "run_abort"}, {"error", std::string(e.what())}});
                }
                if (result.outcome == RunOutcome::InfrastructureFailure) {
                    std::lock_guard lock(totals_mutex);
                    ++totals.infrastructure_failures;
                    infra = true;
                }
                auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                                   std::chrono::steady_clock::now() - started)
                                   .count();

                if (!trace_out.is_open()) trace_out.open(trace_path, std::ios::app);
                for (const json& ev : result.trace) trace_out << ev.dump() << '\n';
                trace_out.flush();

                json run_record = {{"config_hash", hash},
                                   {"method", method.name},
                                   {"task", task.name},
                                   {"instance_id", job.instance.instance_id},
                                   {"game_index", job.game_index},
                                   {"run_index", r},
                                   {"seed", run_seed(config, job.task_index, job.game_index, r)},
                                   {"budget", task.token_budget},
                                   {"outcome", run_outcome_name(result.outcome)},
                                   {"win", result.outcome == RunOutcome::Solved ? 1 : 0},
                                   {"tokens", result.tokens_used},
                                   {"nodes_expanded", result.nodes_expanded},
                                   {"tree_size", result.tree_size}};
                {
                    std::lock_guard lock(summary_mutex);
                    summary_out << json{{"run", run_record}, {"timing", {{"elapsed_ms", elapsed}}}}
                                       .dump()
                                << '\n';
                    summary_out.flush();
                }
                {
                    std::lock_guard lock(totals_mutex);
                    if (!infra) ++totals.completed;
                }
                long long done = ++done_runs;
                std::lock_guard lock(summary_mutex);
                std::cerr << "[" << done << "/" << total_runs << "] " << method.name << " "
                          << job.instance.instance_id << " run " << r << ": "
                          << run_outcome_name(result.outcome) << " (" << result.tokens_used
                          << " tokens)\n";
            }
        }
    };

    int workers = std::max(1, std::min<int>(config.parallelism, static_cast<int>(jobs.size())));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return totals;
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

namespace {

struct SummaryRow {
    std::string method;
    std::string task;
    std::string instance_id;
    int run_index = 0;
    int win = 0;
    long long tokens = 0;
    int nodes_expanded = 0;
    int tree_size = 0;
};

std::vector<SummaryRow> load_summary(const std::string& run_dir) {
    fs::path summary_path = fs::path(run_dir) / "summary.jsonl";
    if (!fs::exists(summary_path)) {
        throw DataError("no summary.jsonl under " + run_dir);
    }
    std::vector<SummaryRow> rows;
    std::ifstream in(summary_path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.contains("run")) continue;
        const json& r = j["run"];
        SummaryRow row;
        row.method = r.value("method", std::string());
        row.task = r.value("task", std::string());
        row.instance_id = r.value("instance_id", std::string());
        row.run_index = r.value("run_index", 0);
        row.win = r.value("win", 0);
        row.tokens = r.value("tokens", 0LL);
        row.nodes_expanded = r.value("nodes_expanded", 0);
        row.tree_size = r.value("tree_size", 0);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw DataError("summary.jsonl has no records: " + run_dir);
    return rows;
}

void write_profiles(const std::map<std::string, ProfileCurve>& profiles,
                    const std::string& out_dir, const ProfileOptions& options) {
    std::ofstream profile_out(fs::path(out_dir) / "profiles.csv");
    profile_out << "method,tau,rho\n";
    for (const auto& [method, curve] : profiles) {
        for (const auto& [tau, rho] : curve.breakpoints) {
            profile_out << method << ',' << csv_num(tau) << ',' << csv_num(rho) << '\n';
        }
    }
    std::ofstream aup_out(fs::path(out_dir) / "aup.csv");
    aup_out << "method,aup,aup_from_zero,tau_max\n";
    for (const auto& [method, curve] : profiles) {
        aup_out << method << ',' << csv_num(aup(curve, 1.0)) << ','
                << csv_num(aup(curve, 0.0)) << ',' << csv_num(curve.tau_max) << '\n';
    }
    // Conventions that shape the numbers, spelled out next to them.
    std::ofstream meta_out(fs::path(out_dir) / "profile_meta.json");
    meta_out << json{{"zero_score_epsilon", options.zero_score_epsilon},
                     {"score_scale", "percent"},
                     {"ratio_scale", "log10"},
                     {"aup_lower_bounds", {1.0, 0.0}}}
                    .dump(2)
             << '\n';
}

} // namespace

void cmd_analyze(const std::string& run_dir, const std::string& out_dir) {
    auto rows = load_summary(run_dir);
    fs::create_directories(out_dir);

    std::set<std::string> methods;
    std::set<std::string> tasks;
    std::map<std::pair<std::string, std::string>, std::vector<GameRecord>> grouped;
    std::map<std::pair<std::string, std::string>, std::pair<double, int>> tree_stats;
    std::map<std::pair<std::string, std::string>, double> expand_sums;
    for (const SummaryRow& row : rows) {
        methods.insert(row.method);
        tasks.insert(row.task);
        GameRecord rec;
        rec.game_id = row.instance_id;
        rec.method_id = row.method;
        rec.run_index = row.run_index;
        rec.win = row.win;
        rec.tokens = row.tokens;
        auto key = std::make_pair(row.method, row.task);
        grouped[key].push_back(std::move(rec));
        tree_stats[key].first += row.tree_size;
        tree_stats[key].second += 1;
        expand_sums[key] += row.nodes_expanded;
    }

    // Incomplete (game, method) groups are reported, not fatal.
    for (const auto& [key, records] : grouped) {
        std::map<std::string, int> counts;
        for (const GameRecord& r : records) counts[r.game_id]++;
        int expected = 0;
        for (const auto& [game, count] : counts) expected = std::max(expected, count);
        for (const auto& [game, count] : counts) {
            if (count != expected) {
                std::cerr << "warning: partial data for " << key.first << "/" << key.second
                          << " game " << game << " (" << count << "/" << expected << " runs)\n";
            }
        }
    }

    std::ofstream agg_out(fs::path(out_dir) / "aggregates.csv");
    agg_out << "method,task,games,runs,win_rate_star,tokens_star,efficiency_score,"
               "wilson_low,wilson_high,solved_games\n";
    std::map<std::string, std::map<std::string, double>> win_rate_scores;
    for (const std::string& method : methods) {
        for (const std::string& task : tasks) {
            auto it = grouped.find({method, task});
            if (it == grouped.end()) continue;
            AggregateReport report = aggregate(it->second, method);
            std::map<std::string, std::vector<int>> by_game;
            for (const GameRecord& r : it->second) by_game[r.game_id].push_back(r.win);
            int solved_games = 0;
            for (const auto& [game, wins] : by_game) {
                if (win_rate(wins).solved) ++solved_games;
            }
            agg_out << method << ',' << task << ',' << report.games << ',' << report.runs
                    << ',' << csv_num(report.win_rate_star) << ','
                    << csv_num(report.tokens_star) << ','
                    << (report.efficiency_defined ? csv_num(report.efficiency_score)
                                                  : std::string())
                    << ',' << csv_num(report.wilson_low) << ',' << csv_num(report.wilson_high)
                    << ',' << solved_games << '\n';
            // Percentage scale, matching the published tables.
            win_rate_scores[method][task] = 100.0 * report.win_rate_star;
        }
    }

    if (methods.size() >= 2) {
        write_profiles(performance_profile(win_rate_scores), out_dir, ProfileOptions{});
    }

    // Cumulative wins over the grid of observed per-run token totals.
    std::vector<long long> grid;
    for (const SummaryRow& row : rows) grid.push_back(row.tokens);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    std::ofstream cum_out(fs::path(out_dir) / "cumulative_wins.csv");
    cum_out << "method,token_budget,wins\n";
    for (const std::string& method : methods) {
        std::vector<GameRecord> records;
        for (const auto& [key, recs] : grouped) {
            if (key.first == method) records.insert(records.end(), recs.begin(), recs.end());
        }
        for (const auto& [budget, wins] : cumulative_wins(records, grid)) {
            cum_out << method << ',' << budget << ',' << wins << '\n';
        }
    }

    std::ofstream tree_out(fs::path(out_dir) / "tree_size.csv");
    tree_out << "method,task,mean_tree_size,mean_nodes_expanded\n";
    for (const auto& [key, stats] : tree_stats) {
        tree_out << key.first << ',' << key.second << ','
                 << csv_num(stats.first / stats.second) << ','
                 << csv_num(expand_sums[key] / stats.second) << '\n';
    }
}

void cmd_analyze_scores(const std::string& csv_path, const std::string& out_dir,
                        double zero_score_epsilon) {
    std::ifstream in(csv_path);
    if (!in) throw DataError("cannot open scores CSV: " + csv_path);
    std::map<std::string, std::map<std::string, double>> scores;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string method, task, value;
        if (!std::getline(ls, method, ',') || !std::getline(ls, task, ',') ||
            !std::getline(ls, value)) {
            throw DataError("scores CSV: malformed line: " + line);
        }
        if (first && (value == "score" || method == "method")) {
            first = false;
            continue; // header
        }
        first = false;
        scores[method][task] = std::stod(value);
    }
    if (scores.empty()) throw DataError("scores CSV is empty: " + csv_path);
    fs::create_directories(out_dir);
    ProfileOptions options;
    options.zero_score_epsilon = zero_score_epsilon;
    write_profiles(performance_profile(scores, options), out_dir, options);
}

} // namespace lfs
