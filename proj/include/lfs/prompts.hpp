#pragma once

#include <string>
#include <vector>

#include "lfs/env.hpp"

namespace lfs {

// The four prompt kinds every backend must answer. Each maps to one template
// pair (system instruction + user request) per task.
enum class PromptKind { ActionPrior, StateValue, ActionValues, ExploreDecision };

std::string prompt_kind_name(PromptKind kind);
PromptKind prompt_kind_from_name(const std::string& name);

struct RenderedPrompt {
    std::string system_text;
    std::string user_text;
};

// Indexed map rendering used for action lists: {0: '52 + 2 = 54', 1: ...}.
std::string render_action_map(const std::vector<ActionDescriptor>& actions);

// Plain list rendering: ['52 + 2 = 54', '52 - 2 = 50'].
std::string render_action_list(const std::vector<ActionDescriptor>& actions);

// Byte-deterministic template expansion. The system instruction embeds the
// task rules block; the user request carries the current state text and the
// indexed action map. Throws TemplateError when required data is missing
// (e.g. no actions for ActionPrior / ActionValues).
RenderedPrompt render_prompt(PromptKind kind, const SearchState& state,
                             const std::vector<ActionDescriptor>& actions);

// Response schema field name for a prompt kind ("move_values" vs
// "operation_values" differs by task).
std::string response_field_name(PromptKind kind, TaskKind task);

} // namespace lfs
