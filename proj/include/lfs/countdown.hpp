#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

namespace lfs::countdown {

enum class Op { Add, Sub, Mul, Div };

char op_symbol(Op op);

// One arithmetic combination of two available numbers. For Sub and Div the
// operands are ordered larger-first so results stay whole and non-negative.
struct Action {
    int left = 0;
    int right = 0;
    Op op = Op::Add;
    int result = 0;

    bool operator==(const Action&) const = default;
};

std::string action_label(const Action& a);

// Game state: fixed target, the numbers still available, and the operation
// history. initial_numbers is kept so the full state/action sequence shown to
// the model can be re-rendered from the state alone.
struct State {
    int target = 0;
    std::vector<int> initial_numbers;
    std::vector<int> numbers;
    std::vector<std::string> history;

    bool operator==(const State&) const = default;
};

State make_state(int target, std::vector<int> numbers);

// All legal operations on the current numbers, in canonical order: number
// pairs by position (first index, then second), ops in order +, -, *, /.
// Subtraction is emitted larger-minus-smaller; division only when the smaller
// number divides the larger exactly. Duplicate labels (possible when the
// multiset has repeated values) are emitted once.
std::vector<Action> valid_actions(int target, const std::vector<int>& numbers);

bool is_win(const State& s);

// Applies an action: removes one occurrence of each operand, appends the
// result, records the history entry.
State apply(const State& s, const Action& a);

// Shared memo of multisets proven unsolvable, keyed by (target, numbers).
// One cache may serve many solve() calls against the same game.
struct SolveCache {
    std::unordered_set<std::string> unsolvable;
};

struct SolveResult {
    std::optional<std::vector<Action>> witness;
    bool complete = true; // false when the node budget stopped the search
};

// Exhaustive solver over the action DAG. Returns a winning action sequence
// iff one exists (empty when the state is already won). node_limit = 0 means
// unlimited; when the limit trips, witness is empty and complete is false.
SolveResult solve(int target, const std::vector<int>& numbers,
                  SolveCache* cache = nullptr, uint64_t node_limit = 0);

inline bool is_solvable(int target, const std::vector<int>& numbers,
                        SolveCache* cache = nullptr) {
    return solve(target, numbers, cache).witness.has_value();
}

struct GeneratedGame {
    int target = 0;
    std::vector<int> numbers;
};

// Rejection-samples a solvable game: target uniform on [10, 100], sources
// uniform on [1, 99]. Deterministic per seed.
GeneratedGame generate(int length, uint64_t seed);

// Branching factor upper bound at depth d for an n-number game: 2(n-d)(n-d-1).
long long branching(int n, int d);

// Number of action sequences reaching depth d exactly: prod of branching
// factors above d. Upper bound on distinct number multisets.
long long states_at_depth(int n, int d);

// Renders the "State 0 ... Action k ... State k+1" sequence exactly as it is
// inserted into prompts. Pure function of the state.
std::string render_sequence(const State& s);

std::string render_number_list(const std::vector<int>& numbers);
std::string render_history_list(const std::vector<std::string>& history);

} // namespace lfs::countdown
