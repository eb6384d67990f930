#pragma once

#include <stdexcept>
#include <string>

namespace wva {

// Numerical failures are kept distinct from bad arguments so the CLI can map
// them to a different exit code (2 instead of 1).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Post-selection landed on a perfect dark port (probability below 1e-30).
class DegeneratePostSelectionError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Truncated number-basis representation would miss too much probability mass.
class CutoffError : public NumericalError {
public:
    CutoffError(const std::string& msg, int suggested)
        : NumericalError(msg), suggested_cutoff(suggested) {}
    int suggested_cutoff;
};

// A simulated run retained zero samples after thinning.
class EmptyRunError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Both readout detectors see zero mean photon number.
class NoLightError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace wva
