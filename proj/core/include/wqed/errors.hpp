#pragma once

#include <stdexcept>
#include <string>

namespace wqed {

/// Base class for all domain errors thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// couplings
struct DetuningInBand : Error { using Error::Error; };
struct DegenerateBath : Error { using Error::Error; };
struct OddSize : Error { using Error::Error; };
struct CutoffTooSmall : Error { using Error::Error; };
struct InvalidParameter : Error { using Error::Error; };

// basis / hamiltonian
struct DimensionOverflow : Error { using Error::Error; };
struct SizeMismatch : Error { using Error::Error; };
struct SectorMismatch : Error { using Error::Error; };

// solvers
struct NoConvergence : Error { using Error::Error; };

// observables
struct WindowOutOfRange : Error { using Error::Error; };

// exact models
struct InvalidQuantumNumbers : Error { using Error::Error; };
struct InvalidM : Error { using Error::Error; };
struct QuadratureFailure : Error { using Error::Error; };
struct BoundaryUnsupported : Error { using Error::Error; };

// berry
struct GapCollapse : Error { using Error::Error; };
struct DegeneracyMismatch : Error { using Error::Error; };
struct ZeroOverlap : Error { using Error::Error; };
struct SingularOverlap : Error { using Error::Error; };

// adiabatic
struct PathOutOfRange : Error { using Error::Error; };
struct GaplessPath : Error { using Error::Error; };
struct IntegratorFailure : Error { using Error::Error; };
struct DegenerateTarget : Error { using Error::Error; };

// io / cli
struct IoFailure : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

} // namespace wqed
