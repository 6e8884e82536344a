#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lfs::sudoku {

// Generalized board: side = box_width * box_height, boxes tile the grid in
// (side / box_width) columns by (side / box_height) rows of boxes.
// cells holds values 1..side, 0 for empty, row-major.
struct Board {
    int box_width = 0;
    int box_height = 0;
    int side = 0;
    std::vector<int> cells;

    int at(int row, int col) const { return cells[row * side + col]; }
    int& at(int row, int col) { return cells[row * side + col]; }
    int box_index(int row, int col) const {
        return (row / box_height) * box_height + (col / box_width);
    }
    int empty_count() const;

    bool operator==(const Board&) const = default;
};

Board make_board(int box_width, int box_height, std::vector<int> cells = {});

struct Action {
    int row = 0;
    int col = 0;
    int value = 0;

    bool operator==(const Action&) const = default;
};

std::string action_label(const Action& a);

// True when placing value at (row, col) breaks no row/column/box constraint.
// The cell itself must be empty.
bool placement_ok(const Board& b, int row, int col, int value);

// All legal placements in canonical order: row-major cells, ascending value.
std::vector<Action> valid_actions(const Board& b);

// No duplicate non-empty value in any row, column, or box.
bool is_consistent(const Board& b);

// Full board satisfying every constraint.
bool is_win(const Board& b);

Board apply(const Board& b, const Action& a);

// Exact number of completions of the board, capped at limit (limit = 0 means
// uncapped). Exhaustive backtracking on the most-constrained empty cell.
int solve_count(const Board& b, int limit);

// Generates a puzzle with exactly one solution: builds a random complete grid,
// then removes cells in seeded random order while uniqueness holds, aiming
// for a filled-cell fraction of clue_fraction (best effort from above).
Board generate(int box_width, int box_height, double clue_fraction, uint64_t seed);

// Branching factor upper bound with n_empty empty cells at depth d on a
// side-length grid: (n_empty - d) * side.
long long branching(long long n_empty, long long d, long long side);

// Nested-list board text with periods for empty cells, as inserted into
// prompts: [[1, '.', 3, '.'], ...].
std::string render_board(const Board& b);

} // namespace lfs::sudoku
