#pragma once

#include <stdexcept>
#include <string>

namespace zom {

// Rejected input: bad file, bad edge list, unusable parameters.
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// A broken internal invariant (negative slack, infeasible state, ...).
// Reaching this is a bug in the engine or a corrupted state, never a
// user-input problem.
class invariant_error : public std::logic_error {
public:
    explicit invariant_error(const std::string& what) : std::logic_error(what) {}
};

inline void require(bool cond, const char* msg) {
    if (!cond) throw invariant_error(msg);
}

} // namespace zom
