#pragma once

#include <stdexcept>
#include <string>

namespace wpdo {

/// Failure categories, aligned with the CLI exit codes:
/// Config -> 1, Hypothesis -> 2, Numerical -> 3.
enum class ErrorKind { Config = 1, Hypothesis = 2, Numerical = 3 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void throw_config(const std::string& msg) {
    throw Error(ErrorKind::Config, msg);
}
[[noreturn]] inline void throw_hypothesis(const std::string& msg) {
    throw Error(ErrorKind::Hypothesis, msg);
}
[[noreturn]] inline void throw_numerical(const std::string& msg) {
    throw Error(ErrorKind::Numerical, msg);
}

}  // namespace wpdo
