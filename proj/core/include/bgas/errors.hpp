#pragma once

#include <stdexcept>
#include <string>

namespace bgas {

// Exit codes reported by the CLI; each error class maps to one code so batch
// drivers can distinguish failure modes without parsing messages.
enum class ErrorKind {
    config = 2,      // schema violation, bad flag, malformed input file
    solver = 3,      // eigensolver / linear solver did not converge
    dimension = 4,   // basis size guard tripped
    internal = 5,    // invariant violation (bug)
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message, std::string field = {})
        : std::runtime_error(message), kind_(kind), field_(std::move(field)) {}

    ErrorKind kind() const { return kind_; }
    int exit_code() const { return static_cast<int>(kind_); }
    // Offending config field, when known ("potential.entries[3].n", ...).
    const std::string& field() const { return field_; }

private:
    ErrorKind kind_;
    std::string field_;
};

[[noreturn]] inline void throw_config(std::string msg, std::string field = {}) {
    throw Error(ErrorKind::config, std::move(msg), std::move(field));
}

}  // namespace bgas
