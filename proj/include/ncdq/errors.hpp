#ifndef NCDQ_ERRORS_HPP
#define NCDQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ncdq {

/// Violated precondition on user-supplied parameters (bad masses, ħ² <= μν, ...).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The requested object does not exist at this input: caustic times, singular
/// maps, k = 0 Hamiltonians.
class SingularityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A float computation produced inf or nan.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operation would leave the representable function class.
class UnsupportedProduct : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Two routes to the same quantity disagreed beyond tolerance.
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ncdq

#endif
