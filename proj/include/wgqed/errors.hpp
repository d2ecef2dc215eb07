#pragma once

#include <stdexcept>
#include <string>

namespace wgqed {

// Precondition failures on user-supplied values (out-of-range f, bad geometry, ...).
class invalid_input : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A computed object broke a structural invariant (trace, Hermiticity, positivity).
class invariant_violation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Adaptive integration could not continue; carries the last time that was reached.
class integration_failure : public std::runtime_error {
public:
    integration_failure(const std::string& what, double last_good_time)
        : std::runtime_error(what), last_good_time_(last_good_time) {}

    double last_good_time() const noexcept { return last_good_time_; }

private:
    double last_good_time_;
};

} // namespace wgqed
