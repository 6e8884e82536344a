#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "lfs/countdown.hpp"
#include "lfs/sudoku.hpp"

namespace lfs {

enum class TaskKind { Countdown, Sudoku };

std::string task_kind_name(TaskKind kind);
TaskKind task_kind_from_name(const std::string& name);

// A concrete puzzle plus the seed that produced it.
struct TaskInstance {
    TaskKind task_kind = TaskKind::Countdown;
    std::string instance_id;
    uint64_t seed = 0;
    std::variant<countdown::GeneratedGame, sudoku::Board> payload;
};

// Immutable state value shared by every search method. text() is the exact
// text inserted into prompts and is a pure function of the state body.
struct SearchState {
    TaskKind kind = TaskKind::Countdown;
    std::variant<countdown::State, sudoku::Board> body;

    const countdown::State& as_countdown() const { return std::get<countdown::State>(body); }
    const sudoku::Board& as_sudoku() const { return std::get<sudoku::Board>(body); }
    std::string text() const;
};

// An action at a specific position of its state's enumerated action list.
struct ActionDescriptor {
    int index = 0;
    std::string label;
    std::variant<countdown::Action, sudoku::Action> body;
};

struct StepOutcome {
    SearchState next_state;
    std::vector<ActionDescriptor> next_actions;
    bool terminal = false;
    int reward = 0;
};

SearchState initial_state(const TaskInstance& instance);

// Enumerates the state's legal actions in canonical order (see the task
// modules for the per-task ordering rules).
std::vector<ActionDescriptor> valid_actions(const SearchState& state);

bool is_win(const SearchState& state);

// Deterministic transition. Throws InvalidActionError when the action is not
// a member of the state's current valid-action list (a harness bug, never a
// search failure). Terminal means the next state has no actions; reward is 1
// only on a winning terminal.
StepOutcome env_step(const SearchState& state, const ActionDescriptor& action);

// Instance generation entry points (seeded, verifiably solvable).
TaskInstance make_countdown_instance(int length, uint64_t seed);
TaskInstance make_sudoku_instance(int box_width, int box_height, double clue_fraction,
                                  uint64_t seed);

// Dataset file format: JSON-lines, one instance per line.
nlohmann::json instance_to_json(const TaskInstance& instance);
TaskInstance instance_from_json(const nlohmann::json& j);
std::vector<TaskInstance> load_instances(const std::string& path);
void save_instances(const std::string& path, const std::vector<TaskInstance>& instances);

} // namespace lfs
