#pragma once

#include <stdexcept>
#include <string>

namespace anncat {

// Raised when a table-backed structure fails its defining axioms or when an
// operation is fed carriers of the wrong shape.  `code` is a stable identifier
// (e.g. "NotAssociative", "BadUnit"); `what()` prepends it to a human-readable
// description that names a violating tuple when one exists.
class ValidationError : public std::runtime_error {
public:
    ValidationError(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

} // namespace anncat
