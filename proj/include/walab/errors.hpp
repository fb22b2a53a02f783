#pragma once

#include <stdexcept>
#include <string>

namespace walab {

// Thrown when an algorithm exceeds its state budget or a value exceeds a
// representability limit. Never stands in for a wrong verdict: callers either
// retry with a bigger budget or fall back to a bounded method.
class resource_error : public std::runtime_error {
public:
    resource_error(std::string msg, long long reached)
        : std::runtime_error(std::move(msg)), reached_(reached) {}

    long long reached() const { return reached_; }

private:
    long long reached_;
};

// Raised by the streaming depump evaluator when no valid cut exists at the
// current window size.
class depump_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace walab
