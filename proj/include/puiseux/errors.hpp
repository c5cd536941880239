#pragma once

#include <stdexcept>
#include <string>

namespace puiseux {

/// Base class for all errors raised by this library.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// A caller violated a documented precondition (zero denominator, k < 2, ...).
class precondition_error : public error {
public:
    explicit precondition_error(const std::string& what) : error(what) {}
};

/// A configured resource budget was exhausted (search nodes, factorization
/// count, scaled target size, prime cap). Partial results are never returned.
class resource_limit_error : public error {
public:
    explicit resource_limit_error(const std::string& what) : error(what) {}
};

/// Certified metadata disagreed with a direct observation, or a construction
/// step failed a check that is guaranteed to hold. Signals a bug, never
/// expected in normal operation.
class consistency_error : public error {
public:
    explicit consistency_error(const std::string& what) : error(what) {}
};

/// Malformed textual input (rationals, presentation JSON).
class parse_error : public error {
public:
    parse_error(const std::string& what, std::size_t position)
        : error(what + " (at offset " + std::to_string(position) + ")"),
          position_(position) {}
    explicit parse_error(const std::string& what) : error(what), position_(0) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

} // namespace puiseux
