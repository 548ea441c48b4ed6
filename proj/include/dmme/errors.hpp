#pragma once

#include <stdexcept>
#include <string>

namespace dmme {

// The zeta equation divides by sin(2 eta); an accepted step inside the
// singular band is a hard error carrying the failure time.
class SingularEtaError : public std::runtime_error {
public:
    SingularEtaError(double t, double sin2eta)
        : std::runtime_error("LRI parameter ODE hit the sin(2*eta) singularity at t = " +
                             std::to_string(t) + " (sin 2eta = " + std::to_string(sin2eta) + ")"),
          time(t) {}
    double time;
};

// Off-diagonal coupling amplitude xi_12 vanished; the channel frequency is
// undefined there and the channel carries no transition amplitude.
class DegenerateChannelError : public std::runtime_error {
public:
    DegenerateChannelError(char channel, double t)
        : std::runtime_error(std::string("coupling channel ") + channel +
                             " is degenerate (xi_12 = 0) at t = " + std::to_string(t)),
          time(t) {}
    double time;
};

class IntegratorError : public std::runtime_error {
public:
    IntegratorError(const std::string& what, double t)
        : std::runtime_error(what + " at t = " + std::to_string(t)), time(t) {}
    double time;
};

class UnsupportedConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegenerateHamiltonianError : public std::runtime_error {
public:
    explicit DegenerateHamiltonianError(double t)
        : std::runtime_error("Hamiltonian is degenerate (Delta = Omega = 0) at t = " +
                             std::to_string(t)),
          time(t) {}
    double time;
};

class ProtocolNotInertialError : public std::runtime_error {
public:
    ProtocolNotInertialError(double drift)
        : std::runtime_error("driving protocol does not hold the inertial parameter constant"
                             " (max |mu(t) - mu| = " + std::to_string(drift) + ")"),
          max_drift(drift) {}
    double max_drift;
};

}  // namespace dmme
