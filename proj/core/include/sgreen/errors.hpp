#pragma once

#include <stdexcept>
#include <string>

namespace sgreen {

// All failures surface as typed exceptions so callers (and the CLI exit-code
// mapping) can distinguish config errors from numerical breaches.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct NotSymmetric : Error { using Error::Error; };
struct NonHermitian : Error { using Error::Error; };
struct NotPositiveDefinite : Error { using Error::Error; };
struct Singular : Error { using Error::Error; };
struct OutsideBand : Error { using Error::Error; };
struct InvariantBreach : Error { using Error::Error; };
struct InvalidParameter : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct SizeCap : Error { using Error::Error; };
struct EigenvalueOnContour : Error { using Error::Error; };
struct QuadratureNotConverged : Error { using Error::Error; };
struct NotAGraph : Error { using Error::Error; };
struct GapViolation : Error { using Error::Error; };

}  // namespace sgreen
