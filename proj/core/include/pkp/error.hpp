#pragma once

#include <stdexcept>
#include <string>

namespace pkp {

/// Broad failure categories. The CLI maps each one onto an exit code.
enum class ErrorKind {
    InvalidParameters,  ///< constraint violation on user-supplied data
    ResourceCap,        ///< a list would exceed the configured memory cap
    NotFound,           ///< randomized search exhausted its budget
    Format,             ///< malformed instance file
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class InvalidParameters : public Error {
public:
    explicit InvalidParameters(const std::string& what)
        : Error(ErrorKind::InvalidParameters, what) {}
};

class ResourceCapExceeded : public Error {
public:
    explicit ResourceCapExceeded(const std::string& what)
        : Error(ErrorKind::ResourceCap, what) {}
};

class SearchExhausted : public Error {
public:
    explicit SearchExhausted(const std::string& what)
        : Error(ErrorKind::NotFound, what) {}
};

class FormatError : public Error {
public:
    explicit FormatError(const std::string& what)
        : Error(ErrorKind::Format, what) {}
};

}  // namespace pkp
