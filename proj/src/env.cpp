#include "lfs/env.hpp"

#include <fstream>
#include <sstream>

#include "lfs/errors.hpp"

namespace lfs {

std::string task_kind_name(TaskKind kind) {
    return kind == TaskKind::Countdown ? "countdown" : "sudoku";
}

TaskKind task_kind_from_name(const std::string& name) {
    if (name == "countdown") return TaskKind::Countdown;
    if (name == "sudoku") return TaskKind::Sudoku;
    throw DataError("unknown task kind: " + name);
}

std::string SearchState::text() const {
    if (kind == TaskKind::Countdown) return countdown::render_sequence(as_countdown());
    return sudoku::render_board(as_sudoku());
}

SearchState initial_state(const TaskInstance& instance) {
    SearchState s;
    s.kind = instance.task_kind;
    if (instance.task_kind == TaskKind::Countdown) {
        const auto& game = std::get<countdown::GeneratedGame>(instance.payload);
        s.body = countdown::make_state(game.target, game.numbers);
    } else {
        s.body = std::get<sudoku::Board>(instance.payload);
    }
    return s;
}

std::vector<ActionDescriptor> valid_actions(const SearchState& state) {
    std::vector<ActionDescriptor> out;
    if (state.kind == TaskKind::Countdown) {
        const auto& s = state.as_countdown();
        auto actions = countdown::valid_actions(s.target, s.numbers);
        out.reserve(actions.size());
        for (size_t i = 0; i < actions.size(); ++i) {
            out.push_back({static_cast<int>(i), countdown::action_label(actions[i]), actions[i]});
        }
    } else {
        auto actions = sudoku::valid_actions(state.as_sudoku());
        out.reserve(actions.size());
        for (size_t i = 0; i < actions.size(); ++i) {
            out.push_back({static_cast<int>(i), sudoku::action_label(actions[i]), actions[i]});
        }
    }
    return out;
}

bool is_win(const SearchState& state) {
    if (state.kind == TaskKind::Countdown) return countdown::is_win(state.as_countdown());
    return sudoku::is_win(state.as_sudoku());
}

StepOutcome env_step(const SearchState& state, const ActionDescriptor& action) {
    auto current = valid_actions(state);
    if (action.index < 0 || action.index >= static_cast<int>(current.size()) ||
        current[static_cast<size_t>(action.index)].label != action.label) {
        throw InvalidActionError("action not in state's action list: " + action.label);
    }
    StepOutcome out;
    out.next_state.kind = state.kind;
    if (state.kind == TaskKind::Countdown) {
        out.next_state.body =
            countdown::apply(state.as_countdown(), std::get<countdown::Action>(action.body));
    } else {
        out.next_state.body =
            sudoku::apply(state.as_sudoku(), std::get<sudoku::Action>(action.body));
    }
    out.next_actions = valid_actions(out.next_state);
    out.terminal = out.next_actions.empty();
    out.reward = (out.terminal && is_win(out.next_state)) ? 1 : 0;
    return out;
}

TaskInstance make_countdown_instance(int length, uint64_t seed) {
    TaskInstance inst;
    inst.task_kind = TaskKind::Countdown;
    inst.seed = seed;
    inst.payload = countdown::generate(length, seed);
    std::ostringstream id;
    id << "countdown_d" << length << "_s" << seed;
    inst.instance_id = id.str();
    return inst;
}

TaskInstance make_sudoku_instance(int box_width, int box_height, double clue_fraction,
                                  uint64_t seed) {
    TaskInstance inst;
    inst.task_kind = TaskKind::Sudoku;
    inst.seed = seed;
    inst.payload = sudoku::generate(box_width, box_height, clue_fraction, seed);
    std::ostringstream id;
    id << "sudoku_" << box_width << "x" << box_height << "_s" << seed;
    inst.instance_id = id.str();
    return inst;
}

nlohmann::json instance_to_json(const TaskInstance& instance) {
    nlohmann::json j;
    j["task_kind"] = task_kind_name(instance.task_kind);
    j["instance_id"] = instance.instance_id;
    j["seed"] = instance.seed;
    if (instance.task_kind == TaskKind::Countdown) {
        const auto& game = std::get<countdown::GeneratedGame>(instance.payload);
        j["payload"] = {{"target", game.target}, {"numbers", game.numbers}};
    } else {
        const auto& board = std::get<sudoku::Board>(instance.payload);
        std::vector<std::vector<int>> rows;
        rows.reserve(static_cast<size_t>(board.side));
        for (int r = 0; r < board.side; ++r) {
            std::vector<int> row(board.cells.begin() + static_cast<size_t>(r) * board.side,
                                 board.cells.begin() + static_cast<size_t>(r + 1) * board.side);
            rows.push_back(std::move(row));
        }
        j["payload"] = {{"box_width", board.box_width},
                        {"box_height", board.box_height},
                        {"cells", rows}};
    }
    return j;
}

TaskInstance instance_from_json(const nlohmann::json& j) {
    TaskInstance inst;
    inst.task_kind = task_kind_from_name(j.at("task_kind").get<std::string>());
    inst.instance_id = j.at("instance_id").get<std::string>();
    inst.seed = j.at("seed").get<uint64_t>();
    const auto& payload = j.at("payload");
    if (inst.task_kind == TaskKind::Countdown) {
        countdown::GeneratedGame game;
        game.target = payload.at("target").get<int>();
        game.numbers = payload.at("numbers").get<std::vector<int>>();
        if (game.target < 10 || game.target > 100) {
            throw DataError("countdown payload: target out of [10, 100]: " + inst.instance_id);
        }
        inst.payload = std::move(game);
    } else {
        auto rows = payload.at("cells").get<std::vector<std::vector<int>>>();
        std::vector<int> cells;
        for (const auto& row : rows) cells.insert(cells.end(), row.begin(), row.end());
        auto board = sudoku::make_board(payload.at("box_width").get<int>(),
                                        payload.at("box_height").get<int>(), std::move(cells));
        if (!sudoku::is_consistent(board)) {
            throw DataError("sudoku payload: inconsistent board: " + inst.instance_id);
        }
        inst.payload = std::move(board);
    }
    return inst;
}

std::vector<TaskInstance> load_instances(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open dataset file: " + path);
    std::vector<TaskInstance> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        out.push_back(instance_from_json(nlohmann::json::parse(line)));
    }
    return out;
}

void save_instances(const std::string& path, const std::vector<TaskInstance>& instances) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write dataset file: " + path);
    for (const auto& inst : instances) {
        out << instance_to_json(inst).dump() << '\n';
    }
}

} // namespace lfs
