#include "lfs/prompts.hpp"

#include <cctype>
#include <map>
#include <sstream>

#include "lfs/errors.hpp"

namespace lfs {

namespace {

// ---------------------------------------------------------------------------
// Countdown templates
// ---------------------------------------------------------------------------

const char* kCountdownRules =
    R"(You're playing the Countdown Numbers Game. Let me explain the rules and how to solve it:

Game Rules:
1. You are given a set of numbers and a target number to reach.
2. You can only use each number once.
3. You must combine numbers using only four operations: addition (+), subtraction (-), multiplication (*), and division (/).
4. Division is only allowed when it results in a whole number (no fractions or decimals).
5. You can only combine two numbers at a time to create a new number.
6. After each operation, the original numbers are removed, and the result is added to your available numbers.
7. You win when you have exactly one number left that matches the target.

For example, with target 50 and numbers [39, 66, 33, 13]:

State 0
Target: 50
Operations: []
Available Numbers: [39, 66, 33, 13]

Action 0
Operation: '39 + 13 = 52'
State 1 (After performing 39 + 13 = 52)
Target: 50
Operations: ['39 + 13 = 52']
Available Numbers: [66, 33, 52]

Action 1
Operation: '66 / 33 = 2'
State 2 (After performing 66 / 33 = 2)
Target: 50
Operations: ['39 + 13 = 52', '66 / 33 = 2']
Available Numbers: [52, 2]

Action 2
Operation: '52 - 2 = 50'
State 3 (After performing 52 - 2 = 50)
Target: 50
Operations: ['39 + 13 = 52', '66 / 33 = 2', '52 - 2 = 50']
Available Numbers: [50]
Game won!)";

const char* kCountdownPriorSystem =
    R"(Important considerations when assigning probabilities to operations:

1. Target Progress: How much closer the operation gets to the target
   - Operations resulting in numbers exactly at or very close to target should receive higher scores
   - Operations creating useful intermediate numbers should be favored
2. Number Creation: The utility of the resulting number
   - Creating small, flexible numbers (1-10) can be valuable
   - Creating numbers that are factors of the target
   - Creating numbers that offer efficient pathways to the target
3. Available Number Management: How the operation affects the number pool
   - Operations that use less useful numbers while preserving useful ones
   - Operations that create a more workable set of available numbers
   - Avoiding operations that result in unusable large numbers
4. Mathematical Strategy: Using operations optimally
   - Using division to create useful small numbers
   - Using multiplication for larger adjustments toward the target
   - Using addition/subtraction for precise movements toward the target

Your task is to evaluate the possible actions in the current state, scoring them based on how likely they are to help you achieve the target value. The scores should form a probability distribution over the actions.

Example State Sequence

State 0
Target: 50
Operations: []
Available Numbers: [39, 66, 33, 13]

Action 0
Operation: '39 + 13 = 52'
State 1 (After performing 39 + 13 = 52)
Target: 50
Operations: ['39 + 13 = 52']
Available Numbers: [66, 33, 52]

Action 1
Operation: '66 / 33 = 2'
State 2 (After performing 66 / 33 = 2)
Target: 50
Operations: ['39 + 13 = 52', '66 / 33 = 2']
Available Numbers: [52, 2]

Example Possible Operations: {0: '52 + 2 = 54', 1: '52 - 2 = 50', 2: '52 * 2 = 104', 3: '52 / 2 = 26'}

Example Final Answer

\boxed{{"operation_scores": {"0": 0.15, "1": 0.35, "2": 0.35, "3": 0.15}}})";

const char* kCountdownPriorUser =
    R"(Current State and Action sequence
{current_sequence}

Possible Operations: {action_list}

What are the scores for each action/operation? Assign a probability to each possible operation based on how likely it is to lead to the target number.

Your response must include a valid JSON object, enclosed in a \boxed{}, with an operation_scores field containing a dictionary mapping operation keys to scores, formatted as follows:

\boxed{{"operation_scores": <dictionary_of_scores>}}

Replace <dictionary_of_scores> with a dictionary mapping operation keys to scores that must sum to 1.0.)";

const char* kCountdownValueSystem =
    R"(Important factors to consider when estimating state value:

1. Proximity to Target: How close the current numbers are to the target
   - States with numbers exactly equal to or close to the target are more valuable
   - States with numbers that can be easily combined to reach the target have higher value
2. Available Number Quality: How useful the remaining numbers are
   - Having small numbers (1-10) increases flexibility
   - Having numbers that are factors or multiples of target numbers is valuable
   - Having complementary numbers that work well together
3. State Progress: How much progress has been made
   - Number of operations performed so far
   - Reduction in the total number of available numbers
   - Quality of the operations performed so far
4. Potential for Success: Overall likelihood of reaching the target
   - Presence of clear pathways to the target
   - Absence of unusable or problematic numbers
   - Balance between large and small numbers

Your task is to estimate the value of the current state and possible operations by determining the likelihood of reaching the target number from it. The score should range from 0 to 1.

For example:

Example State Sequence

State 0
Target: 50
Operations: []
Available Numbers: [39, 66, 33, 13]

Action 0
Operation: '39 + 13 = 52'
State 1 (After performing 39 + 13 = 52)
Target: 50
Operations: ['39 + 13 = 52']
Available Numbers: [66, 33, 52]

Action 1
Operation: '66 / 33 = 2'
State 2 (After performing 66 / 33 = 2)
Target: 50
Operations: ['39 + 13 = 52', '66 / 33 = 2']
Available Numbers: [52, 2]

Example Possible Operations: ['52 + 2 = 54', '52 - 2 = 50', '52 * 2 = 104', '52 / 2 = 26']

Example Final Answer

\boxed{{"state_value_estimation": 1.0}})";

const char* kCountdownValueUser =
    R"(Current State and Action sequence
{current_sequence}

Possible Operations: {action_list}

Given the current state and the possible operations, estimate the value of the current state, ranging from 0-1, where 1 means it's certain to reach the target number and 0 means it's impossible.

Your response must include a valid JSON object, enclosed in a \boxed{}, with a state_value_estimation field, formatted as follows:

\boxed{{"state_value_estimation": <value>}}

Replace <value> with your estimated probability (between 0 and 1) of reaching the target from this state.)";

const char* kCountdownMoveValuesSystem =
    R"(Important considerations when evaluating possible operations:

1. Target Progress: How much each operation moves toward the target
   - Operations that result in numbers close to the target
   - Operations that create useful intermediate numbers for future steps
2. Number Creation: The strategic value of the resulting number
   - Creating small, useful numbers (1-10) for fine adjustments
   - Creating numbers that are easily combinable with others
   - Creating numbers that are factors or related to the target
3. Operation Strategy: How the operation affects solution paths
   - Using division to create useful small numbers
   - Using multiplication to make larger jumps toward the target
   - Using addition/subtraction for precise adjustments
4. Future Potential: How an operation affects future possibilities
   - Operations that open up multiple future paths
   - Operations that eliminate problematic numbers
   - Operations that maintain flexibility in the number set

Your task is to evaluate each possible operation and assign a value between 0 and 1 to each, where 1 means the operation is extremely likely to lead to solving the puzzle and 0 means it's very unlikely to be helpful.

For example:

Example State Sequence

State 0
Target: 50
Operations: []
Available Numbers: [39, 66, 33, 13]

Action 0
Operation: '39 + 13 = 52'
State 1 (After performing 39 + 13 = 52)
Target: 50
Operations: ['39 + 13 = 52']
Available Numbers: [66, 33, 52]

Example Possible Operations: {0: '52 + 66 = 118', 1: '52 - 33 = 19', 2: '66 - 33 = 33', 3: '66 / 33 = 2'}

Example Final Answer

\boxed{{"operation_values": {"0": 0.3, "1": 0.6, "2": 0.5, "3": 0.9}}})";

const char* kCountdownMoveValuesUser =
    R"(Current State and Action sequence
{current_sequence}

Possible Operations: {action_list}

Evaluate each possible operation and assign a value between 0 and 1 to each, where 1 means the operation is extremely likely to lead to solving the puzzle and 0 means it's very unlikely to be helpful.

Your response must include a valid JSON object, enclosed in a \boxed{}, with an operation_values field containing a dictionary mapping operation keys to values between 0 and 1, formatted as follows:

\boxed{{"operation_values": <dictionary_of_values>}}

Replace <dictionary_of_values> with a dictionary mapping operation keys to values between 0 and 1.)";

const char* kCountdownExploreSystem =
    R"(Important considerations when deciding whether to explore or continue:

1. Current Path Quality: How promising the current path appears
   - Presence of numbers close to the target
   - Quality and usefulness of available numbers
   - Clear pathways to reach the target from current numbers
2. Current Path Issues: Signs the current path may be problematic
   - Numbers far from the target with no clear way to combine them
   - Repeated patterns or circular operations
   - No beneficial operations remaining
3. Exploration Value: Potential benefit of trying other paths
   - Number of operations already performed on current path
   - Quality of alternative unexplored paths
   - Diminishing returns on current path
4. Decision Confidence: Certainty about current path viability
   - Clear evidence current path cannot reach target
   - Presence of obviously better unexplored paths
   - Risk assessment of continuing vs exploring

Your task is to decide whether to continue with the current state or to visit an unexplored state. Before deciding, carefully consider the current sequence of states and actions, as well as the available operations. Only choose to explore if you are certain that the current path cannot reach the target number and that switching to a new path is the best use of time.

For example:

Example State and Action sequence

State 0
Target: 50
Operations: []
Available Numbers: [39, 66, 33, 13]

Action 0
Operation: '39 + 13 = 52'
State 1 (After performing 39 + 13 = 52)
Target: 50
Operations: ['39 + 13 = 52']
Available Numbers: [66, 33, 52]

Action 1
Operation: '66 / 33 = 2'
State 2 (After performing 66 / 33 = 2)
Target: 50
Operations: ['39 + 13 = 52', '66 / 33 = 2']
Available Numbers: [52, 2]

Example Possible Operations: {0: '52 + 2 = 54', 1: '52 - 2 = 50', 2: '52 * 2 = 104', 3: '52 / 2 = 26'}

Example Final Answer

\boxed{{"explore": false}})";

const char* kCountdownExploreUser =
    R"(Current State and Action sequence
{current_sequence}

Possible Operations: {action_list}

Consider the current sequence of states and actions and the available operations. Reason through your options step by step and determine whether continuing with the current state or exploring a new state is the most optimal decision.

Your response must include a valid JSON object, enclosed in a \boxed{}, with an explore field, where the value must be either true (to explore a new state) or false (to continue with the current state), formatted as follows:

\boxed{{"explore": <boolean>}}

Replace <boolean> with either true or false.)";

// ---------------------------------------------------------------------------
// Sudoku templates
// ---------------------------------------------------------------------------

const char* kSudokuRules =
    R"(You are helping solve Sudoku puzzles using a tree-based search approach. Sudoku is a puzzle where you fill a grid with numbers 1 through {grid_size} so that each row, column, and box has no repeated numbers.

For this {grid_size} x {grid_size} Sudoku grid, the boxes are {box_width} x {box_height} in size. Each row, column, and box must contain all numbers from 1 to {grid_size} without repetition. This means:
1. Each row must contain each number from 1 to {grid_size} exactly once
2. Each column must contain each number from 1 to {grid_size} exactly once
3. Each {box_width} x {box_height} box must contain each number from 1 to {grid_size} exactly once

These constraints create a logical puzzle where placing a number in a cell immediately restricts what numbers can be placed in other cells in the same row, column, and box.

Board Structure:
- The Sudoku board is a {grid_size} x {grid_size} grid divided into {box_width} x {box_height} boxes
- Rows are numbered 0 to {grid_size_minus_one} from top to bottom
- Columns are numbered 0 to {grid_size_minus_one} from left to right
- Each cell is identified by its (row, column) coordinates
- Empty cells appear as periods (.) in the board representation
- Board state is represented as a nested list where board[row][column] gives the value at that position

When solving a Sudoku puzzle, we explore different possible number placements. Each step involves selecting an empty cell and placing a valid number in it. As we make selections, the set of valid moves for remaining cells may change.)";

const char* kSudokuPriorSystem =
    R"(Important considerations when evaluating possible actions:
1. How actions might create naked singles or hidden singles in other cells
2. Actions targeting cells with few remaining alternatives
3. How actions may constrain multiple other cells simultaneously
4. How actions contribute to a balanced distribution of numbers across the board
5. Whether actions might lead to contradictions or cells with no legal moves

Your task is to evaluate the possible actions in the current state, scoring them based on how likely they are to help solve the Sudoku puzzle. The scores should form a probability distribution over the actions (sum to 1.0) and be returned as a dictionary mapping action indices to scores.

Example {grid_size} x {grid_size} Sudoku Board

{example_board}

Example Possible Actions

{example_prior_actions}

Example Final Answer

\boxed{{"operation_scores": {example_operation_scores}}})";

const char* kSudokuPriorUser =
    R"(Current {grid_size} x {grid_size} Sudoku Board

{current_board}

Possible Actions

{action_list}

Evaluate each action based on how it creates constraints, identifies singles, minimizes branching, and maintains a balanced distribution of numbers as described in your instructions.

Assign a probability to each possible action based on how likely it is to lead to a solution of the Sudoku puzzle. The scores should sum to 1.0, representing a probability distribution over the actions.

Your response must include a valid JSON object, enclosed in a \boxed{}, with an operation_scores field containing a dictionary mapping action indices to scores, formatted as follows:

\boxed{{"operation_scores": <dictionary_of_scores>}}

Replace <dictionary_of_scores> with a dictionary mapping action indices to scores that MUST sum to 1.0.)";

const char* kSudokuValueSystem =
    R"(Important considerations when estimating the value of a board state:

1. Factors that may indicate higher likelihood of success:
   - The number of cells with few possible remaining values
   - Whether all cells have at least one possible legal value
   - How close rows, columns, and boxes are to completion
   - The presence of obvious next moves such as naked or hidden singles

2. Factors that may indicate lower likelihood of success:
   - The presence of cells with zero possible legal values (contradictions)
   - Many cells having numerous possible values (high uncertainty)
   - Limited constraints between remaining empty cells
   - Patterns that typically lead to unsolvable states

Your task is to estimate the value of the current board state by determining the likelihood of solving the puzzle from this position. The score should range from 0 to 1.

Example {grid_size} x {grid_size} Sudoku Board

{example_board}

Example Possible Actions

{example_value_actions}

Example Final Answer

\boxed{{"state_value_estimation": 0.75}})";

const char* kSudokuValueUser =
    R"(Current {grid_size} x {grid_size} Sudoku Board

{current_board}

Possible Actions

{action_list}

Given the current board state and the possible actions, estimate the value of the current state. Consider factors like the number of cells with few possible values, whether there are contradictions, and whether there are obvious next moves as described in your instructions.

Provide a value ranging from 0-1, where 1 means it's certain to reach a solution and 0 means it's impossible.

Your response must include a valid JSON object, enclosed in a \boxed{}, with a state_value_estimation field, formatted as follows:

\boxed{{"state_value_estimation": <value>}}

Replace <value> with your estimated probability (between 0 and 1) of solving the puzzle from this state.)";

const char* kSudokuMoveValuesSystem =
    R"(Important considerations when evaluating possible moves:
1. Constraint Propagation: How each move affects future possibilities
   - Whether the move creates naked singles or hidden singles
   - How the move constrains other cells in the same row, column, and box
2. Strategic Value: The quality of the move in solving the puzzle
   - Whether the move targets cells with few remaining possibilities
   - Whether the move maintains flexibility in other cells
   - Whether the move creates a balanced distribution of numbers
3. Future Impact: How the move affects future solving paths
   - Whether the move opens up multiple solving techniques
   - Whether the move might lead to contradictions
   - Whether the move maintains good solving options

Your task is to evaluate each possible move and assign a value between 0 and 1 to each, where 1 means the move is extremely likely to lead to solving the puzzle and 0 means it's very unlikely to be helpful.

Example {grid_size} x {grid_size} Sudoku Board
{example_board}

Example Possible Moves
{example_moves}

Example Final Answer

\boxed{{"move_values": {example_move_values}}})";

const char* kSudokuMoveValuesUser =
    R"(Current {grid_size} x {grid_size} Sudoku Board
{current_board}

Possible Moves
{moves_list}

Evaluate each possible move and assign a value between 0 and 1 to each, where 1 means the move is extremely likely to lead to solving the puzzle and 0 means it's very unlikely to be helpful.

Your response must include a valid JSON object, enclosed in a \boxed{}, with a move_values field containing a dictionary mapping move indices to values between 0 and 1, formatted as follows:

\boxed{{"move_values": <dictionary_of_values>}}

Replace <dictionary_of_values> with a dictionary mapping move indices to values between 0 and 1.)";

const char* kSudokuExploreSystem =
    R"(Important considerations when determining whether to continue with the current board state or explore a new state:
1. The presence of naked singles or hidden singles in the current board state
2. Whether the current board state contains contradictions or cells with no valid moves
3. The level of certainty in the remaining cells (many vs. few possible values)
4. Whether the board shows signs of making progress or appears to be in a deadlock

Your task is to decide whether to continue with the current board state or to visit an unexplored board state. Before deciding, carefully consider the current board and the available actions. Only choose to explore if you are certain that the current board state cannot lead to a solution and that switching to a new board state is the best use of time.

Example {grid_size} x {grid_size} Sudoku Board
{example_board}

Example Possible Moves
{example_explore_actions}

Example Final Answer

\boxed{{"explore": false}})";

const char* kSudokuExploreUser =
    R"(Current {grid_size} x {grid_size} Sudoku Board
{current_board}

Possible Moves
{empty_cells}

Consider the current board state and the available actions. Evaluate whether the current state has promising moves like naked singles or hidden singles, or if it shows signs of contradictions or deadlocks as described in your instructions.

Reason through your options step by step and determine whether continuing with the current state or exploring a new state is the most optimal decision.

Respond with true if you should explore a new board state, or false if you should continue with the current one.

Your response must include a valid JSON object, enclosed in a \boxed{}, with an explore field, where the value must be either true (to explore a new board state) or false (to continue with the current board state), formatted as follows:

\boxed{{"explore": <boolean>}}

Replace <boolean> with either true or false.)";

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

using VarMap = std::map<std::string, std::string>;

bool placeholder_char(char c) {
    return std::islower(static_cast<unsigned char>(c)) ||
           std::isdigit(static_cast<unsigned char>(c)) || c == '_';
}

// Expands {name} placeholders. A brace group counts as a placeholder only
// when its content is a lowercase identifier, so the literal JSON braces in
// the templates pass through untouched.
std::string substitute(const std::string& tmpl, const VarMap& vars) {
    std::string out;
    out.reserve(tmpl.size());
    size_t i = 0;
    while (i < tmpl.size()) {
        char c = tmpl[i];
        if (c == '{') {
            size_t j = i + 1;
            while (j < tmpl.size() && placeholder_char(tmpl[j])) ++j;
            if (j < tmpl.size() && tmpl[j] == '}' && j > i + 1) {
                std::string name = tmpl.substr(i + 1, j - i - 1);
                auto it = vars.find(name);
                if (it == vars.end()) {
                    throw TemplateError("missing placeholder data: " + name);
                }
                out += it->second;
                i = j + 1;
                continue;
            }
        }
        out.push_back(c);
        ++i;
    }
    return out;
}

std::string join_system(const std::string& rules, const char* body) {
    return rules + "\n\n" + body;
}

// Fixed example board for the sudoku system instructions: the canonical
// shifted-rows solution with the main diagonal blanked. Depends only on the
// box dimensions, so rendering stays byte-deterministic.
sudoku::Board example_board(int box_width, int box_height) {
    sudoku::Board b = sudoku::make_board(box_width, box_height);
    for (int r = 0; r < b.side; ++r) {
        for (int c = 0; c < b.side; ++c) {
            b.at(r, c) = ((r % box_height) * box_width + r / box_height + c) % b.side + 1;
        }
    }
    for (int i = 0; i < b.side; ++i) b.at(i, i) = 0;
    return b;
}

std::string format_weight(double v) {
    std::ostringstream os;
    os << v;
    std::string s = os.str();
    if (s.find('.') == std::string::npos) s += ".0";
    return s;
}

std::string example_scores(size_t count) {
    // Decreasing two-decimal weights, last one adjusted so the sum is exactly 1.
    double total_rank = count * (count + 1) / 2.0;
    std::ostringstream os;
    os << '{';
    double running = 0.0;
    for (size_t i = 0; i < count; ++i) {
        double w;
        if (i + 1 == count) {
            w = 1.0 - running;
        } else {
            w = static_cast<int>(100.0 * (count - i) / total_rank) / 100.0;
            running += w;
        }
        if (i) os << ", ";
        os << '"' << i << "\": " << format_weight(w);
    }
    os << '}';
    return os.str();
}

std::string example_move_values(size_t count) {
    static const double pattern[] = {0.8, 0.5, 0.3, 0.6, 0.4};
    std::ostringstream os;
    os << '{';
    for (size_t i = 0; i < count; ++i) {
        if (i) os << ", ";
        os << '"' << i << "\": " << format_weight(pattern[i % 5]);
    }
    os << '}';
    return os.str();
}

VarMap sudoku_vars(const sudoku::Board& board,
                   const std::vector<ActionDescriptor>& actions) {
    VarMap vars;
    vars["grid_size"] = std::to_string(board.side);
    vars["grid_size_minus_one"] = std::to_string(board.side - 1);
    vars["box_width"] = std::to_string(board.box_width);
    vars["box_height"] = std::to_string(board.box_height);
    vars["current_board"] = sudoku::render_board(board);

    sudoku::Board example = example_board(board.box_width, board.box_height);
    auto example_actions_raw = sudoku::valid_actions(example);
    std::vector<ActionDescriptor> example_actions;
    for (size_t i = 0; i < example_actions_raw.size(); ++i) {
        example_actions.push_back({static_cast<int>(i),
                                   sudoku::action_label(example_actions_raw[i]),
                                   example_actions_raw[i]});
    }
    std::string example_map = render_action_map(example_actions);
    vars["example_board"] = sudoku::render_board(example);
    vars["example_prior_actions"] = example_map;
    vars["example_value_actions"] = example_map;
    vars["example_explore_actions"] = example_map;
    vars["example_moves"] = example_map;
    vars["example_operation_scores"] = example_scores(example_actions.size());
    vars["example_move_values"] = example_move_values(example_actions.size());

    std::string action_map = render_action_map(actions);
    vars["action_list"] = action_map;
    vars["moves_list"] = action_map;
    vars["empty_cells"] = action_map;
    return vars;
}

} // namespace

std::string prompt_kind_name(PromptKind kind) {
    switch (kind) {
    case PromptKind::ActionPrior: return "action_prior";
    case PromptKind::StateValue: return "state_value";
    case PromptKind::ActionValues: return "action_values";
    case PromptKind::ExploreDecision: return "explore_decision";
    }
    return "unknown";
}

PromptKind prompt_kind_from_name(const std::string& name) {
    if (name == "action_prior") return PromptKind::ActionPrior;
    if (name == "state_value") return PromptKind::StateValue;
    if (name == "action_values") return PromptKind::ActionValues;
    if (name == "explore_decision") return PromptKind::ExploreDecision;
    throw DataError("unknown prompt kind: " + name);
}

std::string render_action_map(const std::vector<ActionDescriptor>& actions) {
    std::ostringstream os;
    os << '{';
    for (size_t i = 0; i < actions.size(); ++i) {
        if (i) os << ", ";
        os << actions[i].index << ": '" << actions[i].label << '\'';
    }
    os << '}';
    return os.str();
}

std::string render_action_list(const std::vector<ActionDescriptor>& actions) {
    std::ostringstream os;
    os << '[';
    for (size_t i = 0; i < actions.size(); ++i) {
        if (i) os << ", ";
        os << '\'' << actions[i].label << '\'';
    }
    os << ']';
    return os.str();
}

std::string response_field_name(PromptKind kind, TaskKind task) {
    switch (kind) {
    case PromptKind::ActionPrior: return "operation_scores";
    case PromptKind::StateValue: return "state_value_estimation";
    case PromptKind::ActionValues:
        return task == TaskKind::Countdown ? "operation_values" : "move_values";
    case PromptKind::ExploreDecision: return "explore";
    }
    return "";
}

RenderedPrompt render_prompt(PromptKind kind, const SearchState& state,
                             const std::vector<ActionDescriptor>& actions) {
    if (actions.empty() &&
        (kind == PromptKind::ActionPrior || kind == PromptKind::ActionValues)) {
        throw TemplateError("action-scoring prompt requires a nonempty action list");
    }
    RenderedPrompt out;
    if (state.kind == TaskKind::Countdown) {
        VarMap vars;
        vars["current_sequence"] = state.text();
        vars["action_list"] = render_action_map(actions);
        std::string rules = kCountdownRules;
        switch (kind) {
        case PromptKind::ActionPrior:
            out.system_text = join_system(rules, kCountdownPriorSystem);
            out.user_text = substitute(kCountdownPriorUser, vars);
            break;
        case PromptKind::StateValue:
            out.system_text = join_system(rules, kCountdownValueSystem);
            out.user_text = substitute(kCountdownValueUser, vars);
            break;
        case PromptKind::ActionValues:
            out.system_text = join_system(rules, kCountdownMoveValuesSystem);
            out.user_text = substitute(kCountdownMoveValuesUser, vars);
            break;
        case PromptKind::ExploreDecision:
            out.system_text = join_system(rules, kCountdownExploreSystem);
            out.user_text = substitute(kCountdownExploreUser, vars);
            break;
        }
    } else {
        VarMap vars = sudoku_vars(state.as_sudoku(), actions);
        switch (kind) {
        case PromptKind::ActionPrior:
            out.system_text = substitute(join_system(kSudokuRules, kSudokuPriorSystem), vars);
            out.user_text = substitute(kSudokuPriorUser, vars);
            break;
        case PromptKind::StateValue:
            out.system_text = substitute(join_system(kSudokuRules, kSudokuValueSystem), vars);
            out.user_text = substitute(kSudokuValueUser, vars);
            break;
        case PromptKind::ActionValues:
            out.system_text = substitute(join_system(kSudokuRules, kSudokuMoveValuesSystem), vars);
            out.user_text = substitute(kSudokuMoveValuesUser, vars);
            break;
        case PromptKind::ExploreDecision:
            out.system_text = substitute(join_system(kSudokuRules, kSudokuExploreSystem), vars);
            out.user_text = substitute(kSudokuExploreUser, vars);
            break;
        }
    }
    return out;
}

} // namespace lfs
