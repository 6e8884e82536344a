#include <doctest.h>

#include <random>

#include "lfs/errors.hpp"
#include "lfs/rng.hpp"
#include "lfs/sudoku.hpp"

using namespace lfs;
namespace sd = lfs::sudoku;

namespace {

// Canonical solved 4x4 grid used by several cases.
sd::Board solved_4x4() {
    return sd::make_board(2, 2,
                          {1, 2, 3, 4,
                           3, 4, 1, 2,
                           2, 3, 4, 1,
                           4, 1, 2, 3});
}

// Naive triple-loop constraint checker, the oracle for valid_actions.
bool naive_placement_ok(const sd::Board& b, int row, int col, int value) {
    if (b.at(row, col) != 0) return false;
    for (int i = 0; i < b.side; ++i) {
        if (b.at(row, i) == value) return false;
        if (b.at(i, col) == value) return false;
    }
    int br = (row / b.box_height) * b.box_height;
    int bc = (col / b.box_width) * b.box_width;
    for (int r = br; r < br + b.box_height; ++r) {
        for (int c = bc; c < bc + b.box_width; ++c) {
            if (b.at(r, c) == value) return false;
        }
    }
    return true;
}

std::vector<sd::Action> naive_actions(const sd::Board& b) {
    std::vector<sd::Action> out;
    for (int r = 0; r < b.side; ++r) {
        for (int c = 0; c < b.side; ++c) {
            for (int v = 1; v <= b.side; ++v) {
                if (naive_placement_ok(b, r, c, v)) out.push_back({r, c, v});
            }
        }
    }
    return out;
}

// Random consistent board: legal random placements from empty, stopping at a
// random fill level.
sd::Board random_board(std::mt19937_64& rng, int box_w, int box_h) {
    sd::Board b = sd::make_board(box_w, box_h);
    int placements = static_cast<int>(rng_below(rng, static_cast<uint64_t>(b.side * b.side)));
    for (int i = 0; i < placements; ++i) {
        auto actions = sd::valid_actions(b);
        if (actions.empty()) break;
        b = sd::apply(b, actions[rng_below(rng, actions.size())]);
    }
    return b;
}

// Independent completion counter: fills cells in fixed row-major order, no
// cell-selection heuristic.
int naive_count(sd::Board& b, int cell, int limit, int found) {
    int total = b.side * b.side;
    while (cell < total && b.cells[static_cast<size_t>(cell)] != 0) ++cell;
    if (cell >= total) return found + 1;
    int r = cell / b.side, c = cell % b.side;
    for (int v = 1; v <= b.side && (limit == 0 || found < limit); ++v) {
        if (!naive_placement_ok(b, r, c, v)) continue;
        b.at(r, c) = v;
        found = naive_count(b, cell + 1, limit, found);
        b.at(r, c) = 0;
    }
    return found;
}

} // namespace

TEST_CASE("solved board has no actions and wins") {
    auto b = solved_4x4();
    CHECK(sd::valid_actions(b).empty());
    CHECK(sd::is_win(b));
    CHECK(sd::is_consistent(b));
}

TEST_CASE("single empty cell yields exactly its unique value") {
    auto b = solved_4x4();
    b.at(0, 2) = 0; // removed value was 3
    auto actions = sd::valid_actions(b);
    REQUIRE(actions.size() == 1);
    CHECK(actions[0] == sd::Action{0, 2, 3});
    // Brute-force check of all candidate values.
    for (int v = 1; v <= 4; ++v) {
        CHECK(sd::placement_ok(b, 0, 2, v) == (v == 3));
    }
    CHECK_FALSE(sd::is_win(b));
}

TEST_CASE("empty 4x4 board offers every cell-value pair") {
    auto b = sd::make_board(2, 2);
    CHECK(sd::valid_actions(b).size() == 64);
}

TEST_CASE("valid actions are row-major then ascending value") {
    auto b = sd::make_board(2, 2);
    auto actions = sd::valid_actions(b);
    CHECK(actions[0] == sd::Action{0, 0, 1});
    CHECK(actions[1] == sd::Action{0, 0, 2});
    CHECK(actions[4] == sd::Action{0, 1, 1});
}

TEST_CASE("valid actions match the naive checker on random boards") {
    std::mt19937_64 rng(2024);
    for (int iter = 0; iter < 120; ++iter) {
        auto b = random_board(rng, 2, 2);
        CHECK(sd::valid_actions(b) == naive_actions(b));
    }
    for (int iter = 0; iter < 20; ++iter) {
        auto b = random_board(rng, 2, 3);
        CHECK(sd::valid_actions(b) == naive_actions(b));
    }
}

TEST_CASE("full board with a duplicated value is not a win") {
    auto b = solved_4x4();
    // Swapping two cells of one row breaks their columns.
    std::swap(b.at(0, 0), b.at(0, 1));
    CHECK(b.empty_count() == 0);
    CHECK_FALSE(sd::is_consistent(b));
    CHECK_FALSE(sd::is_win(b));
}

TEST_CASE("apply fills exactly one cell and keeps consistency") {
    std::mt19937_64 rng(5);
    auto b = random_board(rng, 2, 2);
    auto actions = sd::valid_actions(b);
    if (!actions.empty()) {
        auto next = sd::apply(b, actions[0]);
        CHECK(next.empty_count() == b.empty_count() - 1);
        CHECK(sd::is_consistent(next));
    }
    CHECK_THROWS_AS(sd::apply(solved_4x4(), sd::Action{0, 0, 1}), InvalidActionError);
}

TEST_CASE("solve_count on a solved board is 1") {
    CHECK(sd::solve_count(solved_4x4(), 0) == 1);
}

TEST_CASE("solve_count is 0 when a cell has no legal value") {
    auto b = sd::make_board(2, 2,
                            {0, 2, 3, 4,
                             0, 0, 0, 0,
                             1, 0, 0, 0,
                             0, 0, 0, 0});
    CHECK(sd::is_consistent(b));
    CHECK(sd::solve_count(b, 0) == 0);
}

TEST_CASE("empty 4x4 board has 288 completions") {
    auto b = sd::make_board(2, 2);
    CHECK(sd::solve_count(b, 0) == 288);
    auto copy = b;
    CHECK(naive_count(copy, 0, 0, 0) == 288);
}

TEST_CASE("solve_count respects the cap") {
    auto b = sd::make_board(2, 2);
    CHECK(sd::solve_count(b, 2) == 2);
    CHECK(sd::solve_count(b, 1) == 1);
}

TEST_CASE("generation is deterministic and unique per seed") {
    auto a = sd::generate(2, 2, 0.5, 11);
    auto b = sd::generate(2, 2, 0.5, 11);
    CHECK(a == b);
    for (uint64_t seed = 0; seed < 10; ++seed) {
        auto puzzle = sd::generate(2, 2, 0.5, seed);
        CHECK(sd::is_consistent(puzzle));
        CHECK(sd::solve_count(puzzle, 2) == 1);
        CHECK(puzzle.empty_count() > 0);
    }
}

TEST_CASE("generated 6x6 boards tile into 2-wide 3-tall boxes") {
    auto puzzle = sd::generate(2, 3, 0.4, 21);
    CHECK(puzzle.side == 6);
    CHECK(puzzle.box_width == 2);
    CHECK(puzzle.box_height == 3);
    CHECK(puzzle.cells.size() == 36);
    CHECK(sd::solve_count(puzzle, 2) == 1);
    // Every box index maps to a 2x3 region and the regions cover the grid.
    int covered = 0;
    for (int box = 0; box < 6; ++box) {
        int br = (box / 3) * 3;
        int bc = (box % 3) * 2;
        CHECK(br + 3 <= 6);
        CHECK(bc + 2 <= 6);
        covered += 6;
    }
    CHECK(covered == 36);
}

TEST_CASE("clue fraction is honored approximately from above") {
    auto puzzle = sd::generate(2, 2, 0.5, 3);
    int filled = 16 - puzzle.empty_count();
    CHECK(filled >= 4);       // uniqueness floor for 4x4
    CHECK(filled <= 12);      // removal keeps going until the target or a wall
}

TEST_CASE("branching formula and bound") {
    CHECK(sd::branching(8, 0, 4) == 32);
    CHECK(sd::branching(8, 8, 4) == 0);
    CHECK_THROWS_AS(sd::branching(8, 9, 4), DomainError);
    std::mt19937_64 rng(404);
    for (int iter = 0; iter < 50; ++iter) {
        auto b = random_board(rng, 2, 2);
        long long bound = sd::branching(b.empty_count(), 0, b.side);
        CHECK(static_cast<long long>(sd::valid_actions(b).size()) <= bound);
    }
}

TEST_CASE("board rendering uses nested lists with periods") {
    auto b = solved_4x4();
    b.at(0, 1) = 0;
    std::string text = sd::render_board(b);
    CHECK(text == "[[1, '.', 3, 4], [3, 4, 1, 2], [2, 3, 4, 1], [4, 1, 2, 3]]");
}
