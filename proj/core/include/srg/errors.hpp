#pragma once
#include <stdexcept>
#include <string>

namespace srg {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad arguments or an illegal parameter combination (N = 0, p < 0,
// sampler/model mismatch, p = 0 where a formula requires p > 0, ...).
struct invalid_params : error {
    using error::error;
};

// Operation does not apply to the state's model/sampler.
struct not_applicable : error {
    using error::error;
};

// The process is in its absorbing state and cannot advance.
struct jammed_error : error {
    using error::error;
};

struct tracking_disabled : error {
    using error::error;
};

struct not_in_same_tree : error {
    using error::error;
};

// Root finder or quadrature exhausted its budget.
struct numerical_error : error {
    using error::error;
};

// Truncated hierarchy lost more mass past the cutoff than allowed.
struct truncation_error : numerical_error {
    using numerical_error::numerical_error;
};

struct io_error : error {
    using error::error;
};

// CSV column mismatch between files being joined.
struct schema_error : error {
    using error::error;
};

}  // namespace srg
