#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace paramres {

/// Invalid or inconsistent configuration / input data.  CLI exit code 1.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The model refuses the requested operation on physical grounds.  CLI exit code 2.
class PhysicsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigInvalid : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Time series too short for the requested spectral estimate.
class TooShort : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Requested comparison band not covered by both inputs.
class BandMismatch : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Simulation duration gives insufficient frequency-bin spacing for the tone comb.
class ToneNotResolved : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Pump at or above the parametric instability threshold (xi*Q >= 1) where the
/// stationary spectra do not exist.
class ThresholdViolation : public PhysicsError {
public:
    using PhysicsError::PhysicsError;
};

/// Every grid point of a sweep was excluded (above threshold).
class EmptyGrid : public PhysicsError {
public:
    using PhysicsError::PhysicsError;
};

/// Stochastic integration exceeded the amplitude bound.  Carries the divergence
/// time and an amplitude envelope (time, max |X|) so callers can fit the
/// exponential growth rate.
class DivergenceDetected : public PhysicsError {
public:
    DivergenceDetected(const std::string& msg, double time,
                       std::vector<std::pair<double, double>> envelope)
        : PhysicsError(msg), time_of_divergence(time),
          amplitude_envelope(std::move(envelope)) {}

    double time_of_divergence;
    std::vector<std::pair<double, double>> amplitude_envelope;
};

/// Deterministic integration blew up or produced non-finite state.
class NumericalInstability : public PhysicsError {
public:
    using PhysicsError::PhysicsError;
};

}  // namespace paramres
