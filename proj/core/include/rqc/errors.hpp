#pragma once

#include <stdexcept>

namespace rqc {

// n below the degree: the Gram system sigma -> n^{#sigma} is singular.
struct WgSingularError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A sum or matrix size past its configured cap; fail loudly instead of hanging.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace rqc
