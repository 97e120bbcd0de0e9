#pragma once

#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace brouwer {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ZeroVectorError : public Error {
public:
    explicit ZeroVectorError(std::size_t index)
        : Error("zero vector at index " + std::to_string(index)), index(index) {}
    std::size_t index;
};

class AmbiguousStepError : public Error {
public:
    explicit AmbiguousStepError(std::size_t index)
        : Error("direction change >= pi/2 at index " + std::to_string(index)), index(index) {}
    std::size_t index;
};

class SnapFailure : public Error {
public:
    SnapFailure(double value, double nearest, double gap)
        : Error(message(value, nearest, gap)),
          value(value), nearest(nearest), gap(gap) {}
    double value;
    double nearest;
    double gap;

private:
    static std::string message(double value, double nearest, double gap) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "cannot snap %.12g (nearest %.12g, gap %.3g)", value, nearest, gap);
        return buf;
    }
};

class FixedPointOnCurve : public Error {
public:
    FixedPointOnCurve(double param, double magnitude)
        : Error("vector below threshold at curve parameter " + std::to_string(param) +
                " (|v| = " + std::to_string(magnitude) + ")"),
          param(param), magnitude(magnitude) {}
    double param;
    double magnitude;
};

class RefinementExhausted : public Error {
public:
    explicit RefinementExhausted(std::size_t samples)
        : Error("ambiguous direction change persists at " + std::to_string(samples) + " samples"),
          samples(samples) {}
    std::size_t samples;
};

class NonTransverseEndpoint : public Error {
public:
    explicit NonTransverseEndpoint(int which)
        : Error("curve is tangent to the displacement at endpoint " + std::to_string(which)),
          which(which) {}
    int which;
};

class StepLimitExceeded : public Error {
public:
    using Error::Error;
};

class NonFiniteState : public Error {
public:
    using Error::Error;
};

class InconsistentBoundaryDirections : public Error {
public:
    explicit InconsistentBoundaryDirections(std::size_t line)
        : Error("inconsistent flow direction on boundary line " + std::to_string(line)), line(line) {}
    std::size_t line;
};

class NotInverse : public Error {
public:
    using Error::Error;
};

class CoincidentEndDirections : public Error {
public:
    using Error::Error;
};

class CrossingPolylines : public Error {
public:
    CrossingPolylines(std::size_t a, std::size_t b)
        : Error("streamlines " + std::to_string(a) + " and " + std::to_string(b) + " cross"), a(a), b(b) {}
    std::size_t a;
    std::size_t b;
};

class UnsupportedConfiguration : public Error {
public:
    using Error::Error;
};

class SpecParseError : public Error {
public:
    using Error::Error;
};

class ModelNotFound : public Error {
public:
    using Error::Error;
};

}  // namespace brouwer
