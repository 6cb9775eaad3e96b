#pragma once

#include <stdexcept>
#include <string>

namespace ffdist {

// Bad input (non-prime-power q, out-of-domain x, ...). CLI exit code 1.
struct validation_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Exact-mode cap or enumeration budget exceeded. CLI exit code 2.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ffdist
