#ifndef HYPTEST_ERRORS_HPP
#define HYPTEST_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hyptest {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A distribution has mass on a symbol where the reference has none.
class SupportMismatch : public Error {
public:
    using Error::Error;
};

/// Argument outside its mathematical domain (gamma <= 0, u outside (0,1), ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// delta outside (0, D(Q||P)).
class DeltaOutOfRange : public Error {
public:
    using Error::Error;
};

/// P = Q on the support: the exponent regime is empty.
class DegenerateFamily : public Error {
public:
    using Error::Error;
};

/// Requested computation exceeds the configured size limits.
class TooLarge : public Error {
public:
    TooLarge(const std::string& what, std::uint64_t count)
        : Error(what), count_(count) {}
    std::uint64_t count() const noexcept { return count_; }

private:
    std::uint64_t count_;
};

}  // namespace hyptest

#endif
