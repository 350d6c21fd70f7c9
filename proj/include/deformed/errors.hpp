#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace deformed {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Result not representable in double precision. `index()` carries the
/// offending term index (or -1 if not tied to an index).
class RangeError : public std::range_error {
public:
    RangeError(const std::string& what, long index = -1)
        : std::range_error(what), index_(index) {}
    long index() const noexcept { return index_; }

private:
    long index_;
};

/// A series was asked to converge outside its disk, or failed to converge
/// within the term budget.
class DivergenceError : public DomainError {
public:
    DivergenceError(const std::string& what, double radius)
        : DomainError(what), radius_(radius) {}
    double radius() const noexcept { return radius_; }

private:
    double radius_;
};

/// Iterative refinement did not settle; carries the last two estimates.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double previous, double last)
        : std::runtime_error(what), previous_(previous), last_(last) {}
    double previous() const noexcept { return previous_; }
    double last() const noexcept { return last_; }

private:
    double previous_;
    double last_;
};

class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class UnsupportedError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace deformed
