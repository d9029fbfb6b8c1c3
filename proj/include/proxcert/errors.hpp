#ifndef PROXCERT_ERRORS_HPP
#define PROXCERT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace proxcert {

// Base class for all toolkit errors. Derived classes map onto the CLI
// exit-code contract: validation/precondition -> 2, resource -> 3,
// certification -> 4.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& what) : Error(what) {}
};

class SingularMatrixError : public Error {
public:
    explicit SingularMatrixError(const std::string& what) : Error(what) {}
};

class RankError : public Error {
public:
    explicit RankError(const std::string& what) : Error(what) {}
};

// Violated operation precondition or instance invariant.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(what) {}
};

// Enumeration/node cap exceeded. Never a silent truncation.
class ResourceError : public Error {
public:
    explicit ResourceError(const std::string& what) : Error(what) {}
};

// A certified quantity failed verification. Always indicates an
// implementation bug and must never be downgraded.
class CertificationError : public Error {
public:
    explicit CertificationError(const std::string& what) : Error(what) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

} // namespace proxcert

#endif
