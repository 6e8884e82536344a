#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lfs/env.hpp"
#include "lfs/evaluator.hpp"

namespace lfs {

enum class SearchMethod { LFS, ToTBFS, BestFS, MCTS };

std::string search_method_name(SearchMethod method);
SearchMethod search_method_from_name(const std::string& name);

// Per-edge MCTS statistics: N(s,a), W(s,a), P(a|s). Q(s,a) = W/N when N > 0.
struct EdgeStats {
    int visits = 0;
    double total_value = 0.0;
    double prior = 0.0;

    double q() const { return visits > 0 ? total_value / visits : 0.0; }
};

struct SearchNode {
    int id = 0;
    int parent = -1;                 // -1 for the root
    int action_index_in_parent = -1; // index of action_label in the parent's list
    std::string action_label;
    SearchState state;
    std::vector<ActionDescriptor> actions;
    bool terminal = false;
    int reward = 0;
    int depth = 0;
    std::optional<double> value_estimate; // V from the evaluator

    // MCTS statistics. expanded means priors and value have been initialized.
    bool expanded = false;
    int visits = 0;           // N(s)
    double total_value = 0.0; // W(s)
    std::vector<EdgeStats> edges;
    std::map<int, int> children; // action index -> node id
    bool exhausted = false;      // subtree fully enumerated, no win below
};

struct SearchConfig {
    SearchMethod method = SearchMethod::LFS;
    long long token_budget = 0;
    int beam_width = 5;   // ToT-BFS top-k
    double c_puct = 0.5;  // MCTS exploration constant
    std::optional<int> max_depth = {};
    // Stops MCTS after this many completed simulations (counted as a budget
    // stop). Mainly for instrumented runs.
    std::optional<long long> max_simulations = {};
};

enum class RunOutcome { Solved, BudgetExhausted, DeadEnd, InfrastructureFailure };

std::string run_outcome_name(RunOutcome outcome);

struct RunResult {
    RunOutcome outcome = RunOutcome::DeadEnd;
    long long tokens_used = 0;
    int nodes_expanded = 0; // env_step materializations
    int tree_size = 0;      // all created nodes
    std::vector<std::string> winning_path; // action labels, root to win
    int winning_node = -1;
    std::vector<nlohmann::json> trace; // ordered event log
    std::vector<SearchNode> tree;
};

// PUCT selection: argmax over action indices of
//   Q(s,a) + c_puct * P(a|s) * sqrt(N(s)) / (1 + N(s,a)),
// unvisited edges use Q = 0, ties break to the lowest index. The node must
// have initialized priors and at least one visit.
int puct_select(const SearchNode& node, double c_puct);

using MctsObserver = std::function<void(const std::vector<SearchNode>&, long long sim_index)>;

RunResult lfs_search(const TaskInstance& instance, Evaluator& evaluator,
                     const SearchConfig& config);
RunResult tot_bfs_search(const TaskInstance& instance, Evaluator& evaluator,
                         const SearchConfig& config);
RunResult bestfs_search(const TaskInstance& instance, Evaluator& evaluator,
                        const SearchConfig& config);
RunResult mcts_search(const TaskInstance& instance, Evaluator& evaluator,
                      const SearchConfig& config, const MctsObserver& observer = nullptr);

RunResult run_search(const TaskInstance& instance, Evaluator& evaluator,
                     const SearchConfig& config);

enum class TreeExportFormat { Dot, Json };

// DOT (nodes labeled with depth / value / visit count, winning path
// highlighted) or a JSON dump of the recorded tree.
std::string export_tree(const RunResult& result, TreeExportFormat format);

// Rebuilds an exportable result from a run's trace events (node_created /
// run_end), for offline export from trace files.
RunResult result_from_trace(const std::vector<nlohmann::json>& events);

} // namespace lfs
