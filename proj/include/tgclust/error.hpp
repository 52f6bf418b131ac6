#pragma once

#include <stdexcept>
#include <string>

namespace tgclust {

// Malformed or insufficient input data (CLI exit code 2).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad command-line or configuration values (CLI exit code 1).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace tgclust
