#pragma once

#include <stdexcept>
#include <string>

namespace cuspcensus {

/// Base class for every error raised by the library. The kind drives the
/// CLI exit code, so callers rarely need to catch the subclasses.
class Error : public std::runtime_error {
public:
    enum class Kind {
        Input,          // malformed or out-of-contract input
        Resource,       // precision cap, census budget, size guard
        Cocompact,      // anisotropic form: no cusps
        SearchExhausted // isotropic but nothing found within the height bound
    };

    Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error(Kind::Input, what) {}
};

class ResourceError : public Error {
public:
    explicit ResourceError(const std::string& what) : Error(Kind::Resource, what) {}
};

} // namespace cuspcensus
