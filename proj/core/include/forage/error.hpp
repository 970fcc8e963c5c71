#pragma once

#include <stdexcept>
#include <string>

namespace forage {

// Base for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Violated precondition or malformed argument (CLI exit code 1).
struct UsageError : Error {
    using Error::Error;
};

// Bad input data: unreadable corpus, corrupt snapshot, too many
// malformed records (CLI exit code 2).
struct DataError : Error {
    using Error::Error;
};

}  // namespace forage
