#pragma once

#include <stdexcept>
#include <string>

namespace lfs {

// Error taxonomy. Everything derives from std::runtime_error so callers can
// catch broadly at run boundaries and narrowly where the distinction matters.

struct InvalidActionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GenerationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TemplateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BudgetExhaustedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Network failures, replay log mismatches: anything that makes the run an
// infrastructure failure rather than a search loss.
struct TransportError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoActionsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateInputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace lfs
