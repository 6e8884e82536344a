#include <doctest.h>

#include <cstdio>
#include <random>

#include "lfs/env.hpp"
#include "lfs/errors.hpp"
#include "lfs/rng.hpp"

using namespace lfs;

namespace {

SearchState countdown_state(int target, std::vector<int> numbers) {
    SearchState s;
    s.kind = TaskKind::Countdown;
    s.body = countdown::make_state(target, std::move(numbers));
    return s;
}

SearchState sudoku_state(sudoku::Board board) {
    SearchState s;
    s.kind = TaskKind::Sudoku;
    s.body = std::move(board);
    return s;
}

bool same_outcome(const StepOutcome& a, const StepOutcome& b) {
    if (a.terminal != b.terminal || a.reward != b.reward) return false;
    if (a.next_actions.size() != b.next_actions.size()) return false;
    for (size_t i = 0; i < a.next_actions.size(); ++i) {
        if (a.next_actions[i].label != b.next_actions[i].label) return false;
        if (a.next_actions[i].index != b.next_actions[i].index) return false;
    }
    return a.next_state.text() == b.next_state.text();
}

} // namespace

TEST_CASE("countdown step to the winning state") {
    auto state = countdown_state(50, {52, 2});
    auto actions = valid_actions(state);
    REQUIRE(actions.size() == 4);
    auto outcome = env_step(state, actions[1]); // "52 - 2 = 50"
    CHECK(outcome.terminal);
    CHECK(outcome.reward == 1);
    CHECK(outcome.next_actions.empty());
    CHECK(outcome.next_state.as_countdown().numbers == std::vector<int>{50});
}

TEST_CASE("terminal state rejects every step") {
    auto state = countdown_state(50, {50});
    CHECK(valid_actions(state).empty());
    ActionDescriptor bogus{0, "50 + 0 = 50", countdown::Action{50, 0, countdown::Op::Add, 50}};
    CHECK_THROWS_AS(env_step(state, bogus), InvalidActionError);
}

TEST_CASE("mismatched action label is rejected") {
    auto state = countdown_state(50, {52, 2});
    auto actions = valid_actions(state);
    ActionDescriptor forged = actions[0];
    forged.label = "52 - 2 = 50"; // label does not match index 0
    CHECK_THROWS_AS(env_step(state, forged), InvalidActionError);
}

TEST_CASE("sudoku step fills the last cell and wins") {
    auto board = sudoku::make_board(2, 2,
                                    {0, 2, 3, 4,
                                     3, 4, 1, 2,
                                     2, 3, 4, 1,
                                     4, 1, 2, 3});
    auto state = sudoku_state(board);
    auto actions = valid_actions(state);
    REQUIRE(actions.size() == 1);
    CHECK(actions[0].label == "(0, 0, 1)");
    auto outcome = env_step(state, actions[0]);
    CHECK(outcome.terminal);
    CHECK(outcome.reward == 1);
}

TEST_CASE("step is deterministic") {
    auto state = countdown_state(24, {8, 3, 6});
    auto actions = valid_actions(state);
    for (const auto& action : actions) {
        CHECK(same_outcome(env_step(state, action), env_step(state, action)));
    }
}

TEST_CASE("random playouts keep reward soundness and action-list closure") {
    std::mt19937_64 rng(4242);
    for (int episode = 0; episode < 30; ++episode) {
        auto game = countdown::generate(3, rng());
        SearchState state = countdown_state(game.target, game.numbers);
        auto actions = valid_actions(state);
        while (!actions.empty()) {
            const auto& action = actions[rng_below(rng, actions.size())];
            auto outcome = env_step(state, action);
            if (outcome.reward == 1) CHECK(is_win(outcome.next_state));
            if (!outcome.terminal) {
                // Closure: every advertised action must be steppable.
                for (const auto& a : outcome.next_actions) {
                    CHECK_NOTHROW(env_step(outcome.next_state, a));
                }
            }
            state = outcome.next_state;
            actions = outcome.next_actions;
        }
        CHECK(valid_actions(state).empty());
    }
}

TEST_CASE("action indices equal their list position") {
    auto state = countdown_state(10, {3, 5, 7});
    auto actions = valid_actions(state);
    for (size_t i = 0; i < actions.size(); ++i) {
        CHECK(actions[i].index == static_cast<int>(i));
    }
}

TEST_CASE("instance JSONL round trip") {
    std::vector<TaskInstance> instances;
    instances.push_back(make_countdown_instance(3, 5));
    instances.push_back(make_sudoku_instance(2, 2, 0.5, 5));
    std::string path = "/tmp/lfs_env_test_instances.jsonl";
    save_instances(path, instances);
    auto loaded = load_instances(path);
    REQUIRE(loaded.size() == 2);
    CHECK(loaded[0].instance_id == instances[0].instance_id);
    CHECK(loaded[0].task_kind == TaskKind::Countdown);
    CHECK(std::get<countdown::GeneratedGame>(loaded[0].payload).numbers ==
          std::get<countdown::GeneratedGame>(instances[0].payload).numbers);
    CHECK(std::get<sudoku::Board>(loaded[1].payload) ==
          std::get<sudoku::Board>(instances[1].payload));
    std::remove(path.c_str());
}

TEST_CASE("instance validation rejects bad payloads") {
    nlohmann::json bad_target = {{"task_kind", "countdown"},
                                 {"instance_id", "x"},
                                 {"seed", 0},
                                 {"payload", {{"target", 7}, {"numbers", {1, 2, 3}}}}};
    CHECK_THROWS_AS(instance_from_json(bad_target), DataError);

    nlohmann::json bad_board = {
        {"task_kind", "sudoku"},
        {"instance_id", "y"},
        {"seed", 0},
        {"payload",
         {{"box_width", 2},
          {"box_height", 2},
          {"cells", {{1, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}}}}};
    CHECK_THROWS_AS(instance_from_json(bad_board), DataError);
}

TEST_CASE("initial state matches the instance payload") {
    auto inst = make_countdown_instance(3, 123);
    auto state = initial_state(inst);
    const auto& game = std::get<countdown::GeneratedGame>(inst.payload);
    CHECK(state.as_countdown().target == game.target);
    CHECK(state.as_countdown().numbers == game.numbers);
    CHECK(state.as_countdown().history.empty());
}
