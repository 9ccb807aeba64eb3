#pragma once

#include <stdexcept>
#include <string>

namespace pacf {

/// Category carried by every exception thrown from the library. The CLI maps
/// these onto exit codes.
enum class ErrorKind {
    invalid_argument,   ///< malformed input or violated precondition
    unsupported,        ///< instance outside the supported class
    resource_exhausted, ///< a hard size cap was hit
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(const std::string& what) {
    throw Error(ErrorKind::invalid_argument, what);
}

[[noreturn]] inline void unsupported(const std::string& what) {
    throw Error(ErrorKind::unsupported, what);
}

[[noreturn]] inline void exhausted(const std::string& what) {
    throw Error(ErrorKind::resource_exhausted, what);
}

inline void require(bool cond, const std::string& what) {
    if (!cond) fail(what);
}

}  // namespace pacf
