#pragma once

#include <stdexcept>
#include <string>

namespace aifscc {

/// Raised when a covariance (or any matrix required to be SPD) fails to factor.
class NotSpdError : public std::runtime_error {
public:
    explicit NotSpdError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised by constructors whose numeric arguments must be strictly positive.
class NonPositiveError : public std::invalid_argument {
public:
    explicit NonPositiveError(const std::string& what) : std::invalid_argument(what) {}
};

class EmptySequenceError : public std::invalid_argument {
public:
    explicit EmptySequenceError(const std::string& what) : std::invalid_argument(what) {}
};

/// Configuration or argument validation failure (bad k, bad horizon, malformed config).
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical failure inside an episode, tagged with the step at which it happened.
class EpisodeAbort : public std::runtime_error {
public:
    EpisodeAbort(std::size_t step, const std::string& cause)
        : std::runtime_error("episode aborted at step " + std::to_string(step) + ": " + cause),
          step_(step) {}

    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

}  // namespace aifscc
