#pragma once

#include <stdexcept>
#include <string>

namespace mcflow {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Query point outside the closure of the domain.
struct DomainError : Error {
    using Error::Error;
};

// Normal frame requested outside the collar where the distance function is smooth.
struct BandError : Error {
    using Error::Error;
};

// Grid spacing too coarse to resolve the boundary band.
struct ResolutionError : Error {
    using Error::Error;
};

// Bad run configuration (unknown preset, out-of-range parameter, failed precondition).
struct ConfigError : Error {
    using Error::Error;
};

// Operation invoked on inconsistent state (e.g. operator application without ghost values).
struct StateError : Error {
    using Error::Error;
};

// Boundary datum violates its own declared bounds (e.g. |phi| >= 1).
struct DatumError : Error {
    using Error::Error;
};

// Time stepping produced a non-finite value.
struct InstabilityError : Error {
    InstabilityError(const std::string& msg, int node, double time)
        : Error(msg), node_index(node), time(time) {}
    int node_index;
    double time;
};

// Trace/report file does not match the expected schema version or is truncated.
struct SchemaError : Error {
    using Error::Error;
};

}  // namespace mcflow
