#pragma once

#include <stdexcept>
#include <string>

namespace wkbflow {

/// Base class for all solver / configuration errors. Messages name the
/// violated invariant and, where it applies, the offending grid location.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error("config: " + what) {}
};

class NonPositiveDensity : public Error {
public:
    explicit NonPositiveDensity(const std::string& what)
        : Error("non-positive density: " + what) {}
};

class MeanNotZero : public Error {
public:
    explicit MeanNotZero(const std::string& what)
        : Error("phase-angle mean not zero: " + what) {}
};

class VanishingPhaseGradient : public Error {
public:
    explicit VanishingPhaseGradient(const std::string& what)
        : Error("vanishing phase gradient: " + what) {}
};

class SingularLabelMap : public Error {
public:
    explicit SingularLabelMap(const std::string& what)
        : Error("singular label map: " + what) {}
};

class ResonantDenominator : public Error {
public:
    explicit ResonantDenominator(const std::string& what)
        : Error("resonant denominator: " + what) {}
};

class StepRejected : public Error {
public:
    explicit StepRejected(const std::string& what) : Error("step rejected: " + what) {}
};

} // namespace wkbflow
