#pragma once

#include <stdexcept>
#include <string>

namespace lawson {

/// Raised when an operation is called outside its documented domain.
class precondition_error : public std::invalid_argument {
public:
    explicit precondition_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a numerical procedure cannot make progress.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when mesh topology violates a manifold/orientability requirement.
class topology_error : public std::runtime_error {
public:
    explicit topology_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised on unreadable, unwritable or malformed files.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace lawson
