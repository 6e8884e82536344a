#include "lfs/sudoku.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "lfs/errors.hpp"
#include "lfs/rng.hpp"

namespace lfs::sudoku {

int Board::empty_count() const {
    return static_cast<int>(std::count(cells.begin(), cells.end(), 0));
}

Board make_board(int box_width, int box_height, std::vector<int> cells) {
    if (box_width < 1 || box_height < 1) throw DomainError("sudoku: box dims must be >= 1");
    Board b;
    b.box_width = box_width;
    b.box_height = box_height;
    b.side = box_width * box_height;
    if (cells.empty()) {
        b.cells.assign(static_cast<size_t>(b.side) * b.side, 0);
    } else {
        if (cells.size() != static_cast<size_t>(b.side) * b.side) {
            throw DomainError("sudoku: cell count does not match side*side");
        }
        b.cells = std::move(cells);
    }
    for (int v : b.cells) {
        if (v < 0 || v > b.side) throw DomainError("sudoku: cell value out of range");
    }
    return b;
}

std::string action_label(const Action& a) {
    std::ostringstream os;
    os << '(' << a.row << ", " << a.col << ", " << a.value << ')';
    return os.str();
}

bool placement_ok(const Board& b, int row, int col, int value) {
    if (b.at(row, col) != 0) return false;
    for (int c = 0; c < b.side; ++c) {
        if (b.at(row, c) == value) return false;
    }
    for (int r = 0; r < b.side; ++r) {
        if (b.at(r, col) == value) return false;
    }
    int box_r = (row / b.box_height) * b.box_height;
    int box_c = (col / b.box_width) * b.box_width;
    for (int r = box_r; r < box_r + b.box_height; ++r) {
        for (int c = box_c; c < box_c + b.box_width; ++c) {
            if (b.at(r, c) == value) return false;
        }
    }
    return true;
}

std::vector<Action> valid_actions(const Board& b) {
    std::vector<Action> out;
    for (int r = 0; r < b.side; ++r) {
        for (int c = 0; c < b.side; ++c) {
            if (b.at(r, c) != 0) continue;
            for (int v = 1; v <= b.side; ++v) {
                if (placement_ok(b, r, c, v)) out.push_back({r, c, v});
            }
        }
    }
    return out;
}

bool is_consistent(const Board& b) {
    std::vector<int> seen;
    auto check_group = [&](auto cell_of) {
        seen.assign(b.side + 1, 0);
        for (int i = 0; i < b.side; ++i) {
            int v = cell_of(i);
            if (v == 0) continue;
            if (seen[v]++) return false;
        }
        return true;
    };
    for (int r = 0; r < b.side; ++r) {
        if (!check_group([&](int i) { return b.at(r, i); })) return false;
    }
    for (int c = 0; c < b.side; ++c) {
        if (!check_group([&](int i) { return b.at(i, c); })) return false;
    }
    int boxes_per_row = b.side / b.box_width;
    for (int box = 0; box < b.side; ++box) {
        int box_r = (box / boxes_per_row) * b.box_height;
        int box_c = (box % boxes_per_row) * b.box_width;
        if (!check_group([&](int i) {
                return b.at(box_r + i / b.box_width, box_c + i % b.box_width);
            })) {
            return false;
        }
    }
    return true;
}

bool is_win(const Board& b) {
    if (b.empty_count() != 0) return false;
    return is_consistent(b);
}

Board apply(const Board& b, const Action& a) {
    if (a.row < 0 || a.row >= b.side || a.col < 0 || a.col >= b.side ||
        a.value < 1 || a.value > b.side || !placement_ok(b, a.row, a.col, a.value)) {
        throw InvalidActionError("sudoku: illegal placement " + action_label(a));
    }
    Board next = b;
    next.at(a.row, a.col) = a.value;
    return next;
}

namespace {

struct CountSolver {
    Board board;
    int limit; // 0 = uncapped
    int found = 0;

    // Most-constrained empty cell; returns false when the board is full.
    bool pick_cell(int& out_r, int& out_c, std::vector<int>& candidates) {
        int best = -1, best_r = -1, best_c = -1;
        for (int r = 0; r < board.side; ++r) {
            for (int c = 0; c < board.side; ++c) {
                if (board.at(r, c) != 0) continue;
                int n = 0;
                for (int v = 1; v <= board.side; ++v) {
                    if (placement_ok(board, r, c, v)) ++n;
                }
                if (best == -1 || n < best) {
                    best = n;
                    best_r = r;
                    best_c = c;
                    if (n == 0) break;
                }
            }
            if (best == 0) break;
        }
        if (best == -1) return false;
        out_r = best_r;
        out_c = best_c;
        candidates.clear();
        for (int v = 1; v <= board.side; ++v) {
            if (placement_ok(board, out_r, out_c, v)) candidates.push_back(v);
        }
        return true;
    }

    void run() {
        int r, c;
        std::vector<int> candidates;
        if (!pick_cell(r, c, candidates)) {
            ++found;
            return;
        }
        for (int v : candidates) {
            board.at(r, c) = v;
            run();
            board.at(r, c) = 0;
            if (limit != 0 && found >= limit) return;
        }
    }
};

bool fill_solution(Board& b, int cell, std::mt19937_64& rng) {
    int total = b.side * b.side;
    while (cell < total && b.cells[cell] != 0) ++cell;
    if (cell >= total) return true;
    int r = cell / b.side;
    int c = cell % b.side;
    std::vector<int> values(b.side);
    std::iota(values.begin(), values.end(), 1);
    shuffle_vec(values, rng);
    for (int v : values) {
        if (!placement_ok(b, r, c, v)) continue;
        b.cells[cell] = v;
        if (fill_solution(b, cell + 1, rng)) return true;
        b.cells[cell] = 0;
    }
    return false;
}

} // namespace

int solve_count(const Board& b, int limit) {
    if (!is_consistent(b)) throw DomainError("solve_count: inconsistent board");
    CountSolver solver{b, limit};
    solver.run();
    return solver.found;
}

Board generate(int box_width, int box_height, double clue_fraction, uint64_t seed) {
    if (clue_fraction < 0.0 || clue_fraction > 1.0) {
        throw DomainError("generate: clue_fraction must be in [0, 1]");
    }
    constexpr int kMaxAttempts = 32;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        std::mt19937_64 rng(mix_seed(seed, 0x5d0cULL, static_cast<uint64_t>(attempt)));
        Board full = make_board(box_width, box_height);
        if (!fill_solution(full, 0, rng)) continue;
        int total = full.side * full.side;
        int target_clues = static_cast<int>(std::lround(clue_fraction * total));
        std::vector<int> order(total);
        std::iota(order.begin(), order.end(), 0);
        shuffle_vec(order, rng);
        Board puzzle = full;
        int clues = total;
        for (int cell : order) {
            if (clues <= target_clues) break;
            int saved = puzzle.cells[cell];
            puzzle.cells[cell] = 0;
            if (solve_count(puzzle, 2) == 1) {
                --clues;
            } else {
                puzzle.cells[cell] = saved;
            }
        }
        return puzzle;
    }
    throw GenerationFailure("sudoku generation: could not build a complete grid");
}

long long branching(long long n_empty, long long d, long long side) {
    if (d < 0 || d > n_empty) throw DomainError("branching: depth out of range");
    return (n_empty - d) * side;
}

std::string render_board(const Board& b) {
    std::ostringstream os;
    os << '[';
    for (int r = 0; r < b.side; ++r) {
        if (r) os << ", ";
        os << '[';
        for (int c = 0; c < b.side; ++c) {
            if (c) os << ", ";
            int v = b.at(r, c);
            if (v == 0) {
                os << "'.'";
            } else {
                os << v;
            }
        }
        os << ']';
    }
    os << ']';
    return os.str();
}

} // namespace lfs::sudoku
