#pragma once

#include <stdexcept>
#include <string>

namespace metrics {

// Closed-form value does not apply at the requested point/direction.
struct NotApplicableError : std::runtime_error {
    explicit NotApplicableError(const std::string& what) : std::runtime_error(what) {}
};

// A candidate/witness failed a structural requirement (e.g. Hessian not PSD).
struct InvalidWitnessError : std::runtime_error {
    explicit InvalidWitnessError(const std::string& what) : std::runtime_error(what) {}
};

// A sampling scheme left the domain or could not produce enough points.
struct SamplingError : std::runtime_error {
    explicit SamplingError(const std::string& what) : std::runtime_error(what) {}
};

// A patched/localized candidate is inconsistent across its seam.
struct ConstructionError : std::runtime_error {
    explicit ConstructionError(const std::string& what) : std::runtime_error(what) {}
};

// Derivative-free search could not find any feasible candidate.
struct OptimizationError : std::runtime_error {
    explicit OptimizationError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace metrics
