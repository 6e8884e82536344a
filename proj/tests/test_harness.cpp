#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "lfs/errors.hpp"
#include "lfs/harness.hpp"

using namespace lfs;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) {
        path = fs::temp_directory_path() / ("lfs_harness_" + name);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string sub(const std::string& name) const { return (path / name).string(); }
};

BenchmarkConfig small_config(const TempDir& dir) {
    BenchmarkConfig config;
    config.seed = 7;
    config.runs_per_game = 2;
    config.games_per_task = 3;
    config.parallelism = 2;
    config.dataset_dir = dir.sub("data");
    config.output_dir = dir.sub("runs");
    config.backend.backend = BackendKind::Oracle;
    TaskSpec task;
    task.name = "countdown_d3";
    task.kind = TaskKind::Countdown;
    task.length = 3;
    task.token_budget = 100000;
    config.tasks.push_back(task);
    MethodSpec lfs_method;
    lfs_method.name = "lfs";
    lfs_method.search.method = SearchMethod::LFS;
    config.methods.push_back(lfs_method);
    MethodSpec bestfs_method;
    bestfs_method.name = "bestfs";
    bestfs_method.search.method = SearchMethod::BestFS;
    config.methods.push_back(bestfs_method);
    return config;
}

std::vector<nlohmann::json> read_jsonl(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::vector<nlohmann::json> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) out.push_back(nlohmann::json::parse(line));
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::string content((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
    return content;
}

} // namespace

TEST_CASE("generate writes stable datasets") {
    TempDir dir("generate");
    auto config = small_config(dir);
    cmd_generate(config);
    std::string path = dataset_path(config, config.tasks[0]);
    auto first = read_file(path);
    auto instances = load_instances(path);
    CHECK(instances.size() == 3);
    std::set<std::string> ids;
    for (const auto& inst : instances) {
        ids.insert(inst.instance_id);
        const auto& game = std::get<countdown::GeneratedGame>(inst.payload);
        CHECK(countdown::solve(game.target, game.numbers).witness.has_value());
    }
    CHECK(ids.size() == 3); // unique within the file
    cmd_generate(config);
    CHECK(read_file(path) == first); // idempotent per seed
}

TEST_CASE("generate with zero games writes an empty file") {
    TempDir dir("empty");
    auto config = small_config(dir);
    config.games_per_task = 0;
    cmd_generate(config);
    CHECK(load_instances(dataset_path(config, config.tasks[0])).empty());
}

TEST_CASE("run executes methods x games x runs and analyze reports them") {
    TempDir dir("run");
    auto config = small_config(dir);
    cmd_generate(config);
    auto totals = cmd_run(config);
    CHECK(totals.attempted == 12); // 2 methods x 3 games x 2 runs
    CHECK(totals.completed == 12);
    CHECK(totals.skipped == 0);
    CHECK(totals.infrastructure_failures == 0);

    auto summary = read_jsonl(dir.sub("runs") + "/summary.jsonl");
    CHECK(summary.size() == 12);
    for (const auto& rec : summary) {
        CHECK(rec.at("run").at("outcome") == "solved");
        CHECK(rec.at("run").at("win") == 1);
        CHECK(rec.contains("timing"));
    }

    // One trace file per (method, game).
    int trace_files = 0;
    for (const auto& entry : fs::recursive_directory_iterator(dir.sub("runs"))) {
        if (entry.is_regular_file() && entry.path().filename() != "summary.jsonl") {
            ++trace_files;
        }
    }
    CHECK(trace_files == 6);

    cmd_analyze(dir.sub("runs"), dir.sub("reports"));
    auto aggregates = read_file(dir.sub("reports") + "/aggregates.csv");
    CHECK(aggregates.find("lfs,countdown_d3") != std::string::npos);
    CHECK(aggregates.find("bestfs,countdown_d3") != std::string::npos);
    CHECK(fs::exists(dir.sub("reports") + "/cumulative_wins.csv"));
    CHECK(fs::exists(dir.sub("reports") + "/tree_size.csv"));
    CHECK(fs::exists(dir.sub("reports") + "/profile_meta.json"));
}

TEST_CASE("rerunning skips completed work and fills gaps") {
    TempDir dir("resume");
    auto config = small_config(dir);
    cmd_generate(config);
    cmd_run(config);

    auto totals = cmd_run(config);
    CHECK(totals.attempted == 0);
    CHECK(totals.skipped == 12);

    // Drop three summary lines; only those runs are redone.
    auto summary_path = dir.sub("runs") + "/summary.jsonl";
    auto records = read_jsonl(summary_path);
    {
        std::ofstream out(summary_path, std::ios::trunc);
        for (size_t i = 0; i + 3 < records.size(); ++i) out << records[i].dump() << '\n';
    }
    totals = cmd_run(config);
    CHECK(totals.attempted == 3);
    CHECK(totals.skipped == 9);
    CHECK(read_jsonl(summary_path).size() == 12);
}

TEST_CASE("summary records are deterministic for the oracle backend") {
    TempDir dir_a("det_a");
    TempDir dir_b("det_b");
    auto config_a = small_config(dir_a);
    auto config_b = small_config(dir_b);
    cmd_generate(config_a);
    cmd_generate(config_b);
    cmd_run(config_a);
    cmd_run(config_b);

    auto key = [](const nlohmann::json& rec) {
        const auto& r = rec.at("run");
        return r.at("method").get<std::string>() + "/" +
               r.at("instance_id").get<std::string>() + "/" +
               std::to_string(r.at("run_index").get<int>());
    };
    std::map<std::string, std::string> a_records, b_records;
    for (const auto& rec : read_jsonl(dir_a.sub("runs") + "/summary.jsonl")) {
        a_records[key(rec)] = rec.at("run").dump();
    }
    for (const auto& rec : read_jsonl(dir_b.sub("runs") + "/summary.jsonl")) {
        b_records[key(rec)] = rec.at("run").dump();
    }
    CHECK(a_records == b_records); // byte-identical deterministic parts
}

TEST_CASE("config hash tracks every run-affecting field") {
    TempDir dir("hash");
    auto config = small_config(dir);
    auto base = config_hash(config);

    auto changed = config;
    changed.seed = 8;
    CHECK(config_hash(changed) != base);

    changed = config;
    changed.tasks[0].token_budget = 42;
    CHECK(config_hash(changed) != base);

    changed = config;
    changed.methods.push_back(MethodSpec{"mcts", SearchConfig{SearchMethod::MCTS}});
    CHECK(config_hash(changed) != base);

    changed = config;
    changed.backend.model = "other";
    CHECK(config_hash(changed) != base);

    changed = config;
    changed.methods[0].search.c_puct = 2.5;
    CHECK(config_hash(changed) != base);

    // Output locations and parallelism do not affect results.
    changed = config;
    changed.parallelism = 1;
    changed.output_dir = "elsewhere";
    CHECK(config_hash(changed) == base);
}

TEST_CASE("config json round trip") {
    TempDir dir("json");
    auto config = small_config(dir);
    config.methods[0].search.max_depth = 9;
    auto restored = config_from_json(config_to_json(config));
    CHECK(config_hash(restored) == config_hash(config));
    CHECK(restored.methods[0].search.max_depth == 9);
    CHECK(restored.tasks[0].token_budget == 100000);
}

TEST_CASE("run requires budgets and datasets") {
    TempDir dir("missing");
    auto config = small_config(dir);
    config.tasks[0].token_budget = 0;
    CHECK_THROWS_AS(cmd_run(config), DataError);
    config.tasks[0].token_budget = 1000;
    CHECK_THROWS_AS(cmd_run(config), DataError); // dataset missing
}

TEST_CASE("analyze rejects empty directories") {
    TempDir dir("no_data");
    CHECK_THROWS_AS(cmd_analyze(dir.sub("nothing"), dir.sub("reports")), DataError);
}

TEST_CASE("published-score reanalysis emits profile and AUP tables") {
    TempDir dir("scores");
    std::string csv_path = dir.sub("scores.csv");
    {
        std::ofstream out(csv_path);
        out << "method,task,score\n";
        out << "tot_bfs,countdown_d3,82.11\ntot_bfs,countdown_d5,9.47\n"
               "tot_bfs,countdown_d7,0.0\ntot_bfs,sudoku_4x4,53.68\ntot_bfs,sudoku_6x6,0.0\n";
        out << "bestfs,countdown_d3,100\nbestfs,countdown_d5,49.47\n"
               "bestfs,countdown_d7,11.11\nbestfs,sudoku_4x4,41.05\nbestfs,sudoku_6x6,0.0\n";
        out << "mcts,countdown_d3,100\nmcts,countdown_d5,60.0\n"
               "mcts,countdown_d7,32.63\nmcts,sudoku_4x4,100\nmcts,sudoku_6x6,0.0\n";
        out << "lfs,countdown_d3,100\nlfs,countdown_d5,63.16\n"
               "lfs,countdown_d7,47.37\nlfs,sudoku_4x4,96.84\nlfs,sudoku_6x6,2.22\n";
    }
    cmd_analyze_scores(csv_path, dir.sub("reports"));
    auto aup_csv = read_file(dir.sub("reports") + "/aup.csv");
    CHECK(aup_csv.find("lfs,") != std::string::npos);
    CHECK(aup_csv.find("tot_bfs,") != std::string::npos);
    CHECK(fs::exists(dir.sub("reports") + "/profiles.csv"));

    // The from-zero AUP column must order lfs > mcts > bestfs > tot_bfs.
    std::map<std::string, double> from_zero;
    std::istringstream lines(aup_csv);
    std::string line;
    std::getline(lines, line); // header
    while (std::getline(lines, line)) {
        std::istringstream ls(line);
        std::string method, aup1, aup0;
        std::getline(ls, method, ',');
        std::getline(ls, aup1, ',');
        std::getline(ls, aup0, ',');
        from_zero[method] = std::stod(aup0);
    }
    CHECK(from_zero.at("lfs") > from_zero.at("mcts"));
    CHECK(from_zero.at("mcts") > from_zero.at("bestfs"));
    CHECK(from_zero.at("bestfs") > from_zero.at("tot_bfs"));
}

TEST_CASE("record and replay through the harness") {
    TempDir dir("record");
    auto config = small_config(dir);
    config.games_per_task = 2;
    config.runs_per_game = 1;
    config.record_dir = dir.sub("calls");
    cmd_generate(config);
    cmd_run(config);
    auto recorded = read_jsonl(dir.sub("runs") + "/summary.jsonl");

    // Replay the recorded calls into a fresh output directory.
    auto replay_config = config;
    replay_config.backend.backend = BackendKind::Replay;
    replay_config.replay_dir = dir.sub("calls");
    replay_config.record_dir.clear();
    replay_config.output_dir = dir.sub("runs_replayed");
    cmd_run(replay_config);
    auto replayed = read_jsonl(dir.sub("runs_replayed") + "/summary.jsonl");
    REQUIRE(replayed.size() == recorded.size());

    auto strip = [](nlohmann::json rec) {
        rec.at("run").erase("config_hash"); // backend kind differs by design
        return rec.at("run").dump();
    };
    std::set<std::string> a, b;
    for (const auto& rec : recorded) a.insert(strip(rec));
    for (const auto& rec : replayed) b.insert(strip(rec));
    CHECK(a == b);
}
