#pragma once

#include <stdexcept>
#include <string>

namespace dpa {

// Dimension or argument outside the documented domain of an operation.
struct invalid_dimension_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An input violates a documented precondition (non-Hermitian matrix,
// non-density trace, witness fed an empty subspace, ...).
struct contract_violation : std::logic_error {
    using std::logic_error::logic_error;
};

// Fock cutoff too small for the requested accuracy.  `suggested_cutoff`
// is the smallest per-mode dimension estimated to satisfy it.
struct truncation_error : std::runtime_error {
    int suggested_cutoff;
    truncation_error(const std::string& msg, int suggested)
        : std::runtime_error(msg), suggested_cutoff(suggested) {}
};

// Phase-space point outside the displaced-parity convergence region.
struct region_error : std::runtime_error {
    int suggested_cutoff;
    region_error(const std::string& msg, int suggested)
        : std::runtime_error(msg), suggested_cutoff(suggested) {}
};

// Quadrature refinement hit its doubling cap without meeting the
// requested tolerance.  Carries the last two estimates.
struct convergence_error : std::runtime_error {
    double last_estimate;
    double previous_estimate;
    convergence_error(const std::string& msg, double last, double previous)
        : std::runtime_error(msg), last_estimate(last), previous_estimate(previous) {}
};

}  // namespace dpa
