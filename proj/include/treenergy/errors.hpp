#pragma once

#include <stdexcept>
#include <string>

namespace treenergy {

// Invalid user-supplied parameter (CLI exit code 1).
class ParamError : public std::runtime_error {
public:
    explicit ParamError(const std::string& what) : std::runtime_error(what) {}
};

// A size/cost cap was exceeded (CLI exit code 2).
class CapError : public std::runtime_error {
public:
    explicit CapError(const std::string& what) : std::runtime_error(what) {}
};

// An internal consistency check failed. Never caught and patched over:
// it means a construction or a numerical routine is wrong (CLI exit code 3).
class InvariantError : public std::runtime_error {
public:
    explicit InvariantError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace treenergy
