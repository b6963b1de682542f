#pragma once

#include <stdexcept>
#include <string>

namespace ballotbox {

// Bad arguments: unknown rule names, out-of-range parameters, kind mismatches.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input data (profile files, configs). Carries a 1-based line
// number when the failure is tied to a specific line, 0 otherwise.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_ = 0;
};

// A search exceeded its configured node budget. Never a wrong answer.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace ballotbox
