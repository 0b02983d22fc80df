#pragma once

#include <stdexcept>
#include <string>

namespace minimax {

/// Bad user input: dimension mismatch, invalid parameter range, malformed config.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Iterates left the finite/bounded regime during a solver run.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& msg, long global_iter)
        : std::runtime_error(msg), global_iter_(global_iter) {}
    long global_iter() const { return global_iter_; }

private:
    long global_iter_;
};

/// An operation requires a capability the problem does not provide
/// (e.g. a known saddle point).
class CapabilityError : public std::runtime_error {
public:
    explicit CapabilityError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Declared regularity constants are inconsistent with the problem instance.
class CertificationError : public std::runtime_error {
public:
    explicit CertificationError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace minimax
