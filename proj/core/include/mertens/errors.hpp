#pragma once

#include <stdexcept>
#include <string>

namespace mertens {

// Invalid parameters or violated call preconditions. The CLI maps this to
// exit code 2 when it originates from user input.
struct parameter_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Malformed or inconsistent data: bad zeros file, corrupt checkpoint,
// failed structural contract. CLI exit code 3.
struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Working precision too low for the requested evaluation.
struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace mertens
