#include "lfs/countdown.hpp"

#include <algorithm>
#include <sstream>

#include "lfs/errors.hpp"
#include "lfs/rng.hpp"

namespace lfs::countdown {

char op_symbol(Op op) {
    switch (op) {
    case Op::Add: return '+';
    case Op::Sub: return '-';
    case Op::Mul: return '*';
    case Op::Div: return '/';
    }
    return '?';
}

std::string action_label(const Action& a) {
    std::ostringstream os;
    os << a.left << ' ' << op_symbol(a.op) << ' ' << a.right << " = " << a.result;
    return os.str();
}

State make_state(int target, std::vector<int> numbers) {
    State s;
    s.target = target;
    s.initial_numbers = numbers;
    s.numbers = std::move(numbers);
    return s;
}

std::vector<Action> valid_actions(int /*target*/, const std::vector<int>& numbers) {
    std::vector<Action> out;
    std::unordered_set<std::string> seen;
    auto emit = [&](Action a) {
        std::string label = action_label(a);
        if (seen.insert(std::move(label)).second) out.push_back(a);
    };
    const size_t n = numbers.size();
    for (size_t i = 0; i + 1 < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            int a = numbers[i];
            int b = numbers[j];
            int hi = std::max(a, b);
            int lo = std::min(a, b);
            emit({a, b, Op::Add, a + b});
            emit({hi, lo, Op::Sub, hi - lo});
            emit({a, b, Op::Mul, a * b});
            if (lo > 0 && hi % lo == 0) emit({hi, lo, Op::Div, hi / lo});
        }
    }
    return out;
}

bool is_win(const State& s) {
    return s.numbers.size() == 1 && s.numbers[0] == s.target;
}

namespace {

// Removes the first occurrence of each operand (two distinct positions) and
// appends the result.
std::vector<int> apply_numbers(const std::vector<int>& numbers, int left, int right,
                               int result) {
    std::vector<int> next = numbers;
    auto it = std::find(next.begin(), next.end(), left);
    if (it == next.end()) throw InvalidActionError("operand not available: " + std::to_string(left));
    next.erase(it);
    it = std::find(next.begin(), next.end(), right);
    if (it == next.end()) throw InvalidActionError("operand not available: " + std::to_string(right));
    next.erase(it);
    next.push_back(result);
    return next;
}

std::string multiset_key(int target, std::vector<int> numbers) {
    std::sort(numbers.begin(), numbers.end());
    std::string key = std::to_string(target);
    for (int v : numbers) {
        key.push_back('|');
        key += std::to_string(v);
    }
    return key;
}

struct Solver {
    int target;
    SolveCache* cache;
    uint64_t node_limit;
    uint64_t nodes = 0;
    bool truncated = false;
    std::vector<Action> path = {};

    bool dfs(const std::vector<int>& numbers) {
        if (numbers.size() == 1) return numbers[0] == target;
        if (node_limit != 0 && ++nodes > node_limit) {
            truncated = true;
            return false;
        }
        std::string key;
        if (cache) {
            key = multiset_key(target, numbers);
            if (cache->unsolvable.count(key)) return false;
        }
        for (const Action& a : valid_actions(target, numbers)) {
            path.push_back(a);
            if (dfs(apply_numbers(numbers, a.left, a.right, a.result))) return true;
            path.pop_back();
            if (truncated) return false;
        }
        if (cache && !truncated) cache->unsolvable.insert(std::move(key));
        return false;
    }
};

} // namespace

State apply(const State& s, const Action& a) {
    State next = s;
    next.numbers = apply_numbers(s.numbers, a.left, a.right, a.result);
    next.history.push_back(action_label(a));
    return next;
}

SolveResult solve(int target, const std::vector<int>& numbers, SolveCache* cache,
                  uint64_t node_limit) {
    if (numbers.empty()) throw DomainError("solve: empty number set");
    SolveCache local;
    Solver solver{target, cache ? cache : &local, node_limit};
    SolveResult result;
    if (solver.dfs(numbers)) {
        result.witness = solver.path;
    }
    result.complete = !solver.truncated;
    return result;
}

GeneratedGame generate(int length, uint64_t seed) {
    if (length < 2) throw DomainError("generate: length must be >= 2");
    std::mt19937_64 rng(splitmix64(seed));
    // The node limit only bounds how long a rejection round may take; any
    // accepted instance carries a concrete witness.
    constexpr int kMaxRounds = 1000;
    constexpr uint64_t kSolveNodeLimit = 4'000'000;
    for (int round = 0; round < kMaxRounds; ++round) {
        GeneratedGame game;
        game.target = rng_range(rng, 10, 100);
        game.numbers.reserve(length);
        for (int i = 0; i < length; ++i) game.numbers.push_back(rng_range(rng, 1, 99));
        SolveCache cache;
        SolveResult r = solve(game.target, game.numbers, &cache, kSolveNodeLimit);
        if (r.witness.has_value()) return game;
    }
    throw GenerationFailure("countdown generation: no solvable instance after bounded rejection rounds");
}

long long branching(int n, int d) {
    if (d < 0 || d >= n) throw DomainError("branching: depth out of range");
    long long remaining = n - d;
    return 2LL * remaining * (remaining - 1);
}

long long states_at_depth(int n, int d) {
    if (d < 0 || d >= n) throw DomainError("states_at_depth: depth out of range");
    long long total = 1;
    for (int i = 0; i < d; ++i) total *= branching(n, i);
    return total;
}

std::string render_number_list(const std::vector<int>& numbers) {
    std::ostringstream os;
    os << '[';
    for (size_t i = 0; i < numbers.size(); ++i) {
        if (i) os << ", ";
        os << numbers[i];
    }
    os << ']';
    return os.str();
}

std::string render_history_list(const std::vector<std::string>& history) {
    std::ostringstream os;
    os << '[';
    for (size_t i = 0; i < history.size(); ++i) {
        if (i) os << ", ";
        os << '\'' << history[i] << '\'';
    }
    os << ']';
    return os.str();
}

namespace {

struct ParsedEntry {
    int left;
    char op;
    int right;
    int result;
};

ParsedEntry parse_history_entry(const std::string& entry) {
    std::istringstream is(entry);
    ParsedEntry p{};
    char eq = 0;
    if (!(is >> p.left >> p.op >> p.right >> eq >> p.result) || eq != '=') {
        throw DomainError("malformed history entry: " + entry);
    }
    return p;
}

} // namespace

std::string render_sequence(const State& s) {
    std::ostringstream os;
    std::vector<int> nums = s.initial_numbers;
    std::vector<std::string> ops;
    os << "State 0\n"
       << "Target: " << s.target << '\n'
       << "Operations: " << render_history_list(ops) << '\n'
       << "Available Numbers: " << render_number_list(nums);
    for (size_t k = 0; k < s.history.size(); ++k) {
        const std::string& entry = s.history[k];
        ParsedEntry p = parse_history_entry(entry);
        nums = apply_numbers(nums, p.left, p.right, p.result);
        ops.push_back(entry);
        os << "\n\n"
           << "Action " << k << '\n'
           << "Operation: '" << entry << "'\n"
           << "State " << (k + 1) << " (After performing " << entry << ")\n"
           << "Target: " << s.target << '\n'
           << "Operations: " << render_history_list(ops) << '\n'
           << "Available Numbers: " << render_number_list(nums);
    }
    return os.str();
}

} // namespace lfs::countdown
