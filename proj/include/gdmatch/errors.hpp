#ifndef GDMATCH_ERRORS_HPP
#define GDMATCH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gdm {

/// Malformed or inconsistent user input. Maps to exit code 1.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidPoint : public InputError {
public:
    using InputError::InputError;
};

/// The instance is too large for the requested oracle.
class SizeError : public InputError {
public:
    using InputError::InputError;
};

/// An engine invariant was breached. Always a bug, never an input condition.
class EnginePanic : public std::logic_error {
public:
    EnginePanic(const std::string& invariant, const std::string& detail)
        : std::logic_error(invariant + ": " + detail), invariant_(invariant) {}

    const std::string& invariant() const noexcept { return invariant_; }

private:
    std::string invariant_;
};

} // namespace gdm

#endif // GDMATCH_ERRORS_HPP
