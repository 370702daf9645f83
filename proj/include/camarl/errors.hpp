#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace camarl {

// Shape or domain violation in caller-supplied data.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Operation attempted on an object in the wrong state (terminal episode, stale cache).
class InvalidState : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, std::size_t layer)
        : std::runtime_error(what), layer_(layer) {}

    std::size_t layer() const noexcept { return layer_; }

private:
    std::size_t layer_;
};

// A search or buffer limit would be exceeded.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Experiment configuration rejected before any training starts.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace camarl
