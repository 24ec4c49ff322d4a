#pragma once

#include <stdexcept>
#include <string>

namespace myo {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A filter/argument specification violates its preconditions
/// (cutoff >= Nyquist, odd Butterworth order, k > F, ...).
class invalid_argument_error : public error {
public:
    using error::error;
};

/// Input data is corrupt or out of contract (non-finite samples,
/// truncated files, indices out of range).
class data_error : public error {
public:
    using error::error;
};

/// Stream ordering violated (non-monotone sample index, empty window).
class sequencing_error : public error {
public:
    using error::error;
};

/// Problem is statistically or algebraically under-determined
/// (too few samples, zero-variance differences where variance is required).
class ill_posed_error : public error {
public:
    using error::error;
};

/// A numerical operation failed (singular innovation covariance, ...).
class numeric_error : public error {
public:
    using error::error;
};

}  // namespace myo
