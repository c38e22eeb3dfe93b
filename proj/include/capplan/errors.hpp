#ifndef CAPPLAN_ERRORS_HPP
#define CAPPLAN_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace capplan {

// Input-domain violation. `code` is a stable machine-parsable identifier
// (the CLI prints "error: <code>: <detail>" on stderr and exits 2).
class DomainError : public std::invalid_argument {
public:
    DomainError(std::string code, const std::string& detail)
        : std::invalid_argument(code + ": " + detail), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

} // namespace capplan

#endif
