#include "lfs/search.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

#include "lfs/errors.hpp"

namespace lfs {

using nlohmann::json;

std::string search_method_name(SearchMethod method) {
    switch (method) {
    case SearchMethod::LFS: return "lfs";
    case SearchMethod::ToTBFS: return "tot_bfs";
    case SearchMethod::BestFS: return "bestfs";
    case SearchMethod::MCTS: return "mcts";
    }
    return "unknown";
}

SearchMethod search_method_from_name(const std::string& name) {
    if (name == "lfs") return SearchMethod::LFS;
    if (name == "tot_bfs") return SearchMethod::ToTBFS;
    if (name == "bestfs") return SearchMethod::BestFS;
    if (name == "mcts") return SearchMethod::MCTS;
    throw DataError("unknown search method: " + name);
}

std::string run_outcome_name(RunOutcome outcome) {
    switch (outcome) {
    case RunOutcome::Solved: return "solved";
    case RunOutcome::BudgetExhausted: return "budget_exhausted";
    case RunOutcome::DeadEnd: return "dead_end";
    case RunOutcome::InfrastructureFailure: return "infrastructure_failure";
    }
    return "unknown";
}

int puct_select(const SearchNode& node, double c_puct) {
    if (node.edges.empty()) throw NoActionsError("puct_select: node has no edges");
    double sqrt_n = std::sqrt(static_cast<double>(node.visits));
    int best = -1;
    double best_score = 0.0;
    for (size_t a = 0; a < node.edges.size(); ++a) {
        const EdgeStats& e = node.edges[a];
        double score = e.q() + c_puct * e.prior * sqrt_n / (1.0 + e.visits);
        if (best < 0 || score > best_score) {
            best = static_cast<int>(a);
            best_score = score;
        }
    }
    return best;
}

namespace {

// Max-priority frontier. Ties break FIFO (oldest entry first) or LIFO
// (newest first). BestFS needs LIFO: with a 0/1-valued evaluator, FIFO would
// sweep an equal-valued plateau breadth-first instead of descending it.
enum class TiePolicy { Fifo, Lifo };

template <typename T>
class PriorityFrontier {
public:
    explicit PriorityFrontier(TiePolicy ties = TiePolicy::Fifo)
        : heap_(Lower{ties}) {}

    struct Entry {
        double priority;
        uint64_t tie;
        T payload;
    };

    void push(double priority, T payload) {
        heap_.push(Entry{priority, counter_++, std::move(payload)});
    }

    Entry pop() {
        Entry top = heap_.top();
        heap_.pop();
        return top;
    }

    bool empty() const { return heap_.empty(); }

private:
    struct Lower {
        TiePolicy ties;
        bool operator()(const Entry& a, const Entry& b) const {
            if (a.priority != b.priority) return a.priority < b.priority;
            return ties == TiePolicy::Fifo ? a.tie > b.tie : a.tie < b.tie;
        }
    };
    std::priority_queue<Entry, std::vector<Entry>, Lower> heap_;
    uint64_t counter_ = 0;
};

int argmax_weights(const std::map<int, double>& weights) {
    int best = -1;
    double best_value = 0.0;
    for (const auto& [index, value] : weights) {
        if (best < 0 || value > best_value) {
            best = index;
            best_value = value;
        }
    }
    if (best < 0) throw NoActionsError("argmax over empty weight map");
    return best;
}

// Shared per-run state: the tree, the trace, budget enforcement, and the
// solved-path verification done on every finalize.
struct RunContext {
    const TaskInstance& instance;
    Evaluator& evaluator;
    const SearchConfig& config;
    TokenBudget budget;
    std::vector<SearchNode> nodes;
    std::vector<json> trace;
    int env_steps = 0;

    RunContext(const TaskInstance& inst, Evaluator& ev, const SearchConfig& cfg)
        : instance(inst), evaluator(ev), config(cfg) {
        budget.limit = cfg.token_budget;
        trace.push_back({{"event", "run_start"},
                         {"method", search_method_name(cfg.method)},
                         {"instance_id", inst.instance_id},
                         {"budget", cfg.token_budget}});
        SearchNode root;
        root.id = 0;
        root.state = initial_state(inst);
        root.actions = valid_actions(root.state);
        root.terminal = root.actions.empty();
        root.reward = (root.terminal && is_win(root.state)) ? 1 : 0;
        nodes.push_back(std::move(root));
    }

    SearchNode& node(int id) { return nodes[static_cast<size_t>(id)]; }

    int add_child(int parent_id, const ActionDescriptor& action) {
        StepOutcome outcome = env_step(node(parent_id).state, action);
        ++env_steps;
        SearchNode child;
        child.id = static_cast<int>(nodes.size());
        child.parent = parent_id;
        child.action_index_in_parent = action.index;
        child.action_label = action.label;
        child.state = std::move(outcome.next_state);
        child.actions = std::move(outcome.next_actions);
        child.terminal = outcome.terminal;
        child.reward = outcome.reward;
        child.depth = node(parent_id).depth + 1;
        int id = child.id;
        node(parent_id).children[action.index] = id;
        nodes.push_back(std::move(child));
        trace.push_back({{"event", "node_created"},
                         {"node", id},
                         {"parent", parent_id},
                         {"action", action.label},
                         {"depth", nodes.back().depth}});
        return id;
    }

    EvaluatorResponse eval(PromptKind kind, int node_id) {
        SearchNode& n = node(node_id);
        EvaluatorResponse resp = evaluator.evaluate(kind, n.state, n.actions, budget);
        trace.push_back({{"event", "eval_call"},
                         {"kind", prompt_kind_name(kind)},
                         {"node", node_id},
                         {"prompt_tokens", resp.prompt_tokens},
                         {"completion_tokens", resp.completion_tokens},
                         {"fallback", resp.fallback}});
        return resp;
    }

    // Depth cap, when configured: nodes at the cap are not expanded further.
    bool depth_capped(int node_id) {
        return config.max_depth && node(node_id).depth >= *config.max_depth;
    }

    RunResult finalize(RunOutcome outcome, int winning_node = -1) {
        RunResult result;
        result.outcome = outcome;
        result.tokens_used = budget.used;
        result.nodes_expanded = env_steps;
        result.tree_size = static_cast<int>(nodes.size());
        result.winning_node = winning_node;
        if (outcome == RunOutcome::Solved) {
            result.winning_path = path_labels(winning_node);
            verify_winning_path(result.winning_path);
        }
        json tree_dump = json::array();
        for (const SearchNode& n : nodes) {
            json jn = {{"id", n.id},
                       {"parent", n.parent},
                       {"action", n.action_label},
                       {"depth", n.depth},
                       {"visits", n.visits}};
            if (n.value_estimate) jn["value"] = *n.value_estimate;
            tree_dump.push_back(std::move(jn));
        }
        trace.push_back({{"event", "tree_dump"}, {"nodes", std::move(tree_dump)}});
        trace.push_back({{"event", "run_end"},
                         {"outcome", run_outcome_name(outcome)},
                         {"tokens_used", result.tokens_used},
                         {"nodes_expanded", result.nodes_expanded},
                         {"tree_size", result.tree_size},
                         {"winning_path", result.winning_path}});
        result.trace = std::move(trace);
        result.tree = std::move(nodes);
        return result;
    }

    std::vector<std::string> path_labels(int node_id) {
        std::vector<std::string> labels;
        for (int id = node_id; id > 0; id = node(id).parent) {
            labels.push_back(node(id).action_label);
        }
        std::reverse(labels.begin(), labels.end());
        return labels;
    }

    // Solved soundness: replaying the winning path from the initial state
    // must end in reward 1. A mismatch is an implementation bug.
    void verify_winning_path(const std::vector<std::string>& labels) {
        SearchState state = initial_state(instance);
        int reward = labels.empty() ? (is_win(state) ? 1 : 0) : 0;
        for (const std::string& label : labels) {
            auto actions = valid_actions(state);
            auto it = std::find_if(actions.begin(), actions.end(),
                                   [&](const ActionDescriptor& a) { return a.label == label; });
            if (it == actions.end()) {
                throw std::logic_error("winning path replay: action not available: " + label);
            }
            StepOutcome outcome = env_step(state, *it);
            state = std::move(outcome.next_state);
            reward = outcome.reward;
        }
        if (reward != 1) throw std::logic_error("winning path replay did not end in reward 1");
    }
};

// ---------------------------------------------------------------------------
// LLM-First Search
// ---------------------------------------------------------------------------

struct QueuedAction {
    int parent;
    ActionDescriptor action;
};

RunResult lfs_impl(RunContext& ctx) {
    if (ctx.node(0).terminal) {
        return ctx.finalize(ctx.node(0).reward == 1 ? RunOutcome::Solved : RunOutcome::DeadEnd,
                            ctx.node(0).reward == 1 ? 0 : -1);
    }
    PriorityFrontier<QueuedAction> queue;

    auto evaluate_and_step = [&](int node_id) {
        EvaluatorResponse resp = ctx.eval(PromptKind::ActionValues, node_id);
        int best = argmax_weights(resp.payload.weights);
        SearchNode& n = ctx.node(node_id);
        for (const auto& [index, value] : resp.payload.weights) {
            if (index != best) {
                queue.push(value, QueuedAction{node_id, n.actions[static_cast<size_t>(index)]});
            }
        }
        int child = ctx.add_child(node_id, ctx.node(node_id).actions[static_cast<size_t>(best)]);
        ctx.trace.push_back(
            {{"event", "step"}, {"from", node_id}, {"action", ctx.node(child).action_label}, {"to", child}});
        return child;
    };

    auto pop_and_materialize = [&]() {
        auto entry = queue.pop();
        ctx.trace.push_back({{"event", "node_popped"},
                             {"parent", entry.payload.parent},
                             {"action", entry.payload.action.label},
                             {"value", entry.priority}});
        return ctx.add_child(entry.payload.parent, entry.payload.action);
    };

    int current = evaluate_and_step(0);
    while (true) {
        SearchNode& n = ctx.node(current);
        if (n.terminal && n.reward == 1) return ctx.finalize(RunOutcome::Solved, current);
        if (n.terminal || ctx.depth_capped(current)) {
            // Dead path: forced explore without spending an explore call.
            if (queue.empty()) return ctx.finalize(RunOutcome::DeadEnd);
            current = pop_and_materialize();
            continue;
        }
        EvaluatorResponse explore_resp = ctx.eval(PromptKind::ExploreDecision, current);
        bool explore = explore_resp.payload.explore;
        ctx.trace.push_back(
            {{"event", "explore_decision"}, {"node", current}, {"explore", explore}});
        if (explore && !queue.empty()) {
            current = pop_and_materialize();
        } else {
            current = evaluate_and_step(current);
        }
    }
}

// ---------------------------------------------------------------------------
// Tree-of-Thoughts BFS
// ---------------------------------------------------------------------------

RunResult tot_bfs_impl(RunContext& ctx) {
    std::vector<int> frontier = {0};
    while (true) {
        // Score the whole frontier, then keep the top-k by value with ties by
        // insertion order.
        std::vector<std::pair<double, int>> scored;
        scored.reserve(frontier.size());
        for (int id : frontier) {
            EvaluatorResponse resp = ctx.eval(PromptKind::StateValue, id);
            ctx.node(id).value_estimate = resp.payload.scalar;
            scored.emplace_back(resp.payload.scalar, id);
        }
        std::stable_sort(scored.begin(), scored.end(),
                         [](const auto& a, const auto& b) { return a.first > b.first; });
        if (scored.size() > static_cast<size_t>(ctx.config.beam_width)) {
            scored.resize(static_cast<size_t>(ctx.config.beam_width));
        }
        int best = scored.front().second;
        if (ctx.node(best).terminal) {
            return ctx.finalize(ctx.node(best).reward == 1 ? RunOutcome::Solved
                                                           : RunOutcome::DeadEnd,
                                ctx.node(best).reward == 1 ? best : -1);
        }
        std::vector<int> next;
        for (const auto& [value, id] : scored) {
            if (ctx.node(id).terminal || ctx.depth_capped(id)) continue;
            size_t action_count = ctx.node(id).actions.size();
            for (size_t a = 0; a < action_count; ++a) {
                next.push_back(ctx.add_child(id, ctx.node(id).actions[a]));
            }
        }
        if (next.empty()) return ctx.finalize(RunOutcome::DeadEnd);
        frontier = std::move(next);
    }
}

// ---------------------------------------------------------------------------
// Best-First Search
// ---------------------------------------------------------------------------

RunResult bestfs_impl(RunContext& ctx) {
    PriorityFrontier<int> queue(TiePolicy::Lifo);
    EvaluatorResponse root_resp = ctx.eval(PromptKind::StateValue, 0);
    ctx.node(0).value_estimate = root_resp.payload.scalar;
    queue.push(root_resp.payload.scalar, 0);
    while (true) {
        if (queue.empty()) return ctx.finalize(RunOutcome::DeadEnd);
        auto entry = queue.pop();
        int id = entry.payload;
        ctx.trace.push_back(
            {{"event", "node_popped"}, {"node", id}, {"value", entry.priority}});
        SearchNode& n = ctx.node(id);
        if (n.terminal) {
            if (n.reward == 1) return ctx.finalize(RunOutcome::Solved, id);
            continue;
        }
        if (ctx.depth_capped(id)) continue;
        size_t action_count = n.actions.size();
        for (size_t a = 0; a < action_count; ++a) {
            int child = ctx.add_child(id, ctx.node(id).actions[a]);
            EvaluatorResponse resp = ctx.eval(PromptKind::StateValue, child);
            ctx.node(child).value_estimate = resp.payload.scalar;
            queue.push(resp.payload.scalar, child);
        }
    }
}

// ---------------------------------------------------------------------------
// PUCT-guided MCTS
// ---------------------------------------------------------------------------

// PUCT restricted to edges whose subtree is not exhausted. Keeps simulations
// productive on finite trees; identical to puct_select while nothing is
// exhausted. Returns -1 when no edge remains.
int puct_select_open(const SearchNode& node, const std::vector<SearchNode>& nodes,
                     double c_puct) {
    double sqrt_n = std::sqrt(static_cast<double>(node.visits));
    int best = -1;
    double best_score = 0.0;
    for (size_t a = 0; a < node.edges.size(); ++a) {
        auto child = node.children.find(static_cast<int>(a));
        if (child != node.children.end() &&
            nodes[static_cast<size_t>(child->second)].exhausted) {
            continue;
        }
        const EdgeStats& e = node.edges[a];
        double score = e.q() + c_puct * e.prior * sqrt_n / (1.0 + e.visits);
        if (best < 0 || score > best_score) {
            best = static_cast<int>(a);
            best_score = score;
        }
    }
    return best;
}

RunResult mcts_impl(RunContext& ctx, const MctsObserver& observer) {
    SearchNode& root = ctx.node(0);
    if (root.terminal) {
        return ctx.finalize(root.reward == 1 ? RunOutcome::Solved : RunOutcome::DeadEnd,
                            root.reward == 1 ? 0 : -1);
    }
    long long simulations = 0;
    while (true) {
        if (ctx.config.max_simulations && simulations >= *ctx.config.max_simulations) {
            return ctx.finalize(RunOutcome::BudgetExhausted);
        }
        if (ctx.node(0).exhausted) return ctx.finalize(RunOutcome::DeadEnd);

        // Selection: descend by PUCT until a leaf (unexpanded node) or a
        // terminal state, materializing the child on first traversal.
        int current = 0;
        std::vector<std::pair<int, int>> path; // (node, action index)
        while (ctx.node(current).expanded && !ctx.node(current).terminal) {
            int action = puct_select_open(ctx.node(current), ctx.nodes, ctx.config.c_puct);
            if (action < 0) {
                // Every child subtree is exhausted; mark and restart.
                ctx.node(current).exhausted = true;
                break;
            }
            path.emplace_back(current, action);
            auto it = ctx.node(current).children.find(action);
            if (it != ctx.node(current).children.end()) {
                current = it->second;
            } else {
                current = ctx.add_child(current,
                                        ctx.node(current).actions[static_cast<size_t>(action)]);
                break;
            }
        }
        if (ctx.node(current).exhausted) continue;

        SearchNode& leaf = ctx.node(current);
        bool capped = ctx.depth_capped(current) && !leaf.terminal;
        double value = 0.0;
        if (leaf.terminal || capped) {
            // Ground truth at terminals; no evaluator call.
            value = leaf.terminal ? leaf.reward : 0.0;
            if (leaf.terminal && leaf.reward == 1) {
                return ctx.finalize(RunOutcome::Solved, current);
            }
            leaf.visits += 1;
            leaf.total_value += value;
            leaf.exhausted = true;
        } else if (!leaf.expanded) {
            EvaluatorResponse prior_resp = ctx.eval(PromptKind::ActionPrior, current);
            EvaluatorResponse value_resp = ctx.eval(PromptKind::StateValue, current);
            SearchNode& n = ctx.node(current); // re-resolve: eval may not touch nodes, but be safe
            n.edges.assign(n.actions.size(), EdgeStats{});
            for (const auto& [index, weight] : prior_resp.payload.weights) {
                n.edges[static_cast<size_t>(index)].prior = weight;
            }
            n.value_estimate = value_resp.payload.scalar;
            n.expanded = true;
            n.visits = 1;
            n.total_value = value_resp.payload.scalar;
            value = value_resp.payload.scalar;
        }

        // Backpropagate along the traversed path, then refresh exhaustion
        // flags from the leaf upward.
        for (auto it = path.rbegin(); it != path.rend(); ++it) {
            SearchNode& n = ctx.node(it->first);
            n.visits += 1;
            n.total_value += value;
            EdgeStats& e = n.edges[static_cast<size_t>(it->second)];
            e.visits += 1;
            e.total_value += value;
        }
        for (auto it = path.rbegin(); it != path.rend(); ++it) {
            SearchNode& n = ctx.node(it->first);
            bool all = n.children.size() == n.actions.size();
            if (all) {
                for (const auto& [action, child] : n.children) {
                    if (!ctx.node(child).exhausted) {
                        all = false;
                        break;
                    }
                }
            }
            if (!all) break;
            n.exhausted = true;
        }
        ++simulations;
        if (observer) observer(ctx.nodes, simulations);
    }
}

} // namespace

RunResult lfs_search(const TaskInstance& instance, Evaluator& evaluator,
                     const SearchConfig& config) {
    RunContext ctx(instance, evaluator, config);
    try {
        return lfs_impl(ctx);
    } catch (const BudgetExhaustedError&) {
        return ctx.finalize(RunOutcome::BudgetExhausted);
    } catch (const TransportError&) {
        return ctx.finalize(RunOutcome::InfrastructureFailure);
    }
}

RunResult tot_bfs_search(const TaskInstance& instance, Evaluator& evaluator,
                         const SearchConfig& config) {
    RunContext ctx(instance, evaluator, config);
    try {
        return tot_bfs_impl(ctx);
    } catch (const BudgetExhaustedError&) {
        return ctx.finalize(RunOutcome::BudgetExhausted);
    } catch (const TransportError&) {
        return ctx.finalize(RunOutcome::InfrastructureFailure);
    }
}

RunResult bestfs_search(const TaskInstance& instance, Evaluator& evaluator,
                        const SearchConfig& config) {
    RunContext ctx(instance, evaluator, config);
    try {
        return bestfs_impl(ctx);
    } catch (const BudgetExhaustedError&) {
        return ctx.finalize(RunOutcome::BudgetExhausted);
    } catch (const TransportError&) {
        return ctx.finalize(RunOutcome::InfrastructureFailure);
    }
}

RunResult mcts_search(const TaskInstance& instance, Evaluator& evaluator,
                      const SearchConfig& config, const MctsObserver& observer) {
    RunContext ctx(instance, evaluator, config);
    try {
        return mcts_impl(ctx, observer);
    } catch (const BudgetExhaustedError&) {
        return ctx.finalize(RunOutcome::BudgetExhausted);
    } catch (const TransportError&) {
        return ctx.finalize(RunOutcome::InfrastructureFailure);
    }
}

RunResult run_search(const TaskInstance& instance, Evaluator& evaluator,
                     const SearchConfig& config) {
    if (config.beam_width < 1) throw DomainError("search config: beam_width must be >= 1");
    if (config.c_puct <= 0.0) throw DomainError("search config: c_puct must be > 0");
    switch (config.method) {
    case SearchMethod::LFS: return lfs_search(instance, evaluator, config);
    case SearchMethod::ToTBFS: return tot_bfs_search(instance, evaluator, config);
    case SearchMethod::BestFS: return bestfs_search(instance, evaluator, config);
    case SearchMethod::MCTS: return mcts_search(instance, evaluator, config);
    }
    throw DataError("unknown search method");
}

// ---------------------------------------------------------------------------
// Tree export
// ---------------------------------------------------------------------------

namespace {

std::string escape_dot(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

std::string format_value(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

} // namespace

std::string export_tree(const RunResult& result, TreeExportFormat format) {
    // Mark the winning path for highlighting.
    std::vector<bool> on_path(result.tree.size(), false);
    if (result.winning_node >= 0) {
        for (int id = result.winning_node; id >= 0;
             id = result.tree[static_cast<size_t>(id)].parent) {
            on_path[static_cast<size_t>(id)] = true;
        }
    }
    if (format == TreeExportFormat::Json) {
        json out;
        json nodes = json::array();
        for (const SearchNode& n : result.tree) {
            json jn = {{"id", n.id},
                       {"parent", n.parent},
                       {"action", n.action_label},
                       {"depth", n.depth},
                       {"visits", n.visits},
                       {"on_winning_path", bool(on_path[static_cast<size_t>(n.id)])}};
            if (n.value_estimate) jn["value"] = *n.value_estimate;
            nodes.push_back(std::move(jn));
        }
        out["nodes"] = std::move(nodes);
        out["outcome"] = run_outcome_name(result.outcome);
        out["winning_path"] = result.winning_path;
        return out.dump(2);
    }

    std::ostringstream os;
    os << "digraph search_tree {\n";
    os << "  node [shape=box, fontsize=10];\n";
    for (const SearchNode& n : result.tree) {
        os << "  n" << n.id << " [label=\"" << n.id << "\\nd=" << n.depth;
        if (n.value_estimate) os << " v=" << format_value(*n.value_estimate);
        os << " N=" << n.visits << "\"";
        if (on_path[static_cast<size_t>(n.id)]) os << ", color=red, penwidth=2";
        os << "];\n";
    }
    for (const SearchNode& n : result.tree) {
        if (n.parent < 0) continue;
        bool highlighted = on_path[static_cast<size_t>(n.id)] &&
                           on_path[static_cast<size_t>(n.parent)];
        os << "  n" << n.parent << " -> n" << n.id << " [label=\""
           << escape_dot(n.action_label) << "\"";
        if (highlighted) os << ", color=red, penwidth=2";
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

RunResult result_from_trace(const std::vector<json>& events) {
    RunResult result;
    for (const json& ev : events) {
        std::string type = ev.at("event").get<std::string>();
        if (type == "run_start") {
            SearchNode root;
            root.id = 0;
            result.tree.push_back(std::move(root));
        } else if (type == "tree_dump") {
            result.tree.clear();
            for (const json& jn : ev.at("nodes")) {
                SearchNode n;
                n.id = jn.at("id").get<int>();
                n.parent = jn.at("parent").get<int>();
                n.action_label = jn.at("action").get<std::string>();
                n.depth = jn.at("depth").get<int>();
                n.visits = jn.at("visits").get<int>();
                if (jn.contains("value")) n.value_estimate = jn["value"].get<double>();
                result.tree.push_back(std::move(n));
            }
        } else if (type == "run_end") {
            result.outcome = ev.at("outcome") == "solved" ? RunOutcome::Solved
                              : ev.at("outcome") == "budget_exhausted"
                                  ? RunOutcome::BudgetExhausted
                              : ev.at("outcome") == "dead_end" ? RunOutcome::DeadEnd
                                                               : RunOutcome::InfrastructureFailure;
            result.tokens_used = ev.at("tokens_used").get<long long>();
            result.nodes_expanded = ev.at("nodes_expanded").get<int>();
            result.tree_size = ev.at("tree_size").get<int>();
            result.winning_path = ev.at("winning_path").get<std::vector<std::string>>();
        }
    }
    // Recover the winning node from the path labels.
    if (!result.winning_path.empty() || result.outcome == RunOutcome::Solved) {
        int current = 0;
        for (const std::string& label : result.winning_path) {
            int next = -1;
            for (const SearchNode& n : result.tree) {
                if (n.parent == current && n.action_label == label) {
                    next = n.id;
                    break;
                }
            }
            if (next < 0) break;
            current = next;
        }
        result.winning_node = current;
    }
    return result;
}

} // namespace lfs
