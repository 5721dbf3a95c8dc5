#pragma once

#include <stdexcept>
#include <string>

namespace crosscalc {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// linalg
class ShapeMismatch : public Error { using Error::Error; };
class NoFactorization : public Error { using Error::Error; };
class NotPrime : public Error { using Error::Error; };

// lattice
class NotLattice : public Error { using Error::Error; };
class NotDistributive : public Error { using Error::Error; };
class NoBottom : public Error { using Error::Error; };
class NotPairwiseCover : public Error { using Error::Error; };
class NotComparable : public Error { using Error::Error; };
class UnknownElement : public Error { using Error::Error; };

// pmodule
class NonCommutingSquare : public Error { using Error::Error; };
class NotConvex : public Error { using Error::Error; };
class NotConnected : public Error { using Error::Error; };
class LatticeMismatch : public Error { using Error::Error; };
class NotNatural : public Error { using Error::Error; };

// calculus / resolution
class NotBelow : public Error { using Error::Error; };
class NotAbove : public Error { using Error::Error; };
class NotAComplex : public Error { using Error::Error; };
class EquivalenceViolated : public Error { using Error::Error; };
class InvalidArgument : public Error { using Error::Error; };

// generators
class UnsupportedDimension : public Error { using Error::Error; };

// io / verify
class ParseError : public Error { using Error::Error; };
class UnknownSuite : public Error { using Error::Error; };

/// Raised when an internal consistency check fails; always a library bug.
class InternalError : public Error { using Error::Error; };

}  // namespace crosscalc
