#pragma once

#include <stdexcept>
#include <string>

namespace dmpkit {

// Structurally invalid input data: bad file contents, shape mismatches,
// non-uniform timestamps and the like.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The original formulation cannot learn a channel whose start and goal
// coincide (the forcing target divides by goal - start).
class DegenerateGoalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Rollout state diverged (left the sane range or became non-finite).
class IntegrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace dmpkit
