#ifndef HALFSIGN_ERRORS_HPP
#define HALFSIGN_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace halfsign {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A size limit of some module was exceeded.
struct CapacityError : Error {
    using Error::Error;
};

// Two tables (or a table and a request) disagree on their range.
struct ShapeError : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

// An identity that must hold exactly was found violated. Carries the
// offending index: either n, or the prime power (p, nu).
struct IntegrityError : Error {
    IntegrityError(const std::string& what, u64 n_, u64 p_ = 0, unsigned nu_ = 0)
        : Error(what), n(n_), p(p_), nu(nu_) {}
    u64 n;
    u64 p;
    unsigned nu;
};

struct NumericalError : Error {
    using Error::Error;
};

struct InvalidSetError : Error {
    InvalidSetError(const std::string& what, u64 first_, u64 second_)
        : Error(what), first(first_), second(second_) {}
    u64 first;
    u64 second;
};

struct CoverageError : Error {
    using Error::Error;
};

struct PreconditionError : Error {
    using Error::Error;
};

struct FormatError : Error {
    using Error::Error;
};

struct UsageError : Error {
    UsageError(const std::string& what, std::string field_ = {})
        : Error(what), field(std::move(field_)) {}
    std::string field;
};

}  // namespace halfsign

#endif
