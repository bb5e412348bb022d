#pragma once

#include <stdexcept>
#include <string>

namespace relaysim {

// Geometry below the horizon: the chord between platforms dips under the
// Earth's surface.
struct ObstructedPath : std::runtime_error {
    explicit ObstructedPath(const std::string& what) : std::runtime_error(what) {}
};

// Requested beam-waist position is beyond pi*W0^2/(2*lambda) and cannot be
// realized by any focal setting.
struct UnreachableWaist : std::runtime_error {
    explicit UnreachableWaist(const std::string& what) : std::runtime_error(what) {}
};

// Wander variance exceeded the long-term spot size; the short-term spot would
// be imaginary. Signals that the requested configuration left the model's
// validity region.
struct NegativeShortTerm : std::runtime_error {
    explicit NegativeShortTerm(const std::string& what) : std::runtime_error(what) {}
};

struct QuadratureError : std::runtime_error {
    QuadratureError(const std::string& what, double resid)
        : std::runtime_error(what), residual(resid) {}
    double residual;
};

// No relay count in the scanned range produced a feasible chain.
struct EmptyFeasibleSet : std::runtime_error {
    explicit EmptyFeasibleSet(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace relaysim
