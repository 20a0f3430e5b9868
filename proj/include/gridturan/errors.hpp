#pragma once

#include <stdexcept>
#include <string>

namespace gridturan {

/// Input text could not be parsed; carries the 1-based line number.
class parse_error : public std::runtime_error {
public:
    parse_error(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what),
          line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

/// A configured budget (vertex cap, node-visit cap) was exceeded.
/// Distinct from "not found": the search did not finish.
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what)
        : std::runtime_error(what) {}
};

} // namespace gridturan
