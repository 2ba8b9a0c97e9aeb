#pragma once

#include <stdexcept>
#include <string>

namespace seppoly {

/// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// partitions
struct OverlapError : Error { using Error::Error; };
struct CoverError : Error { using Error::Error; };
struct EmptyBlockError : Error { using Error::Error; };
struct MismatchedPartySet : Error { using Error::Error; };
struct GuardExceeded : Error { using Error::Error; };
struct EmptySetError : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct NotAntichain : Error { using Error::Error; };

// simplicial complexes and maps
struct NotSimplicial : Error { using Error::Error; };
struct UnmappedVertex : Error { using Error::Error; };
struct ChainMismatch : Error { using Error::Error; };

// quantum
struct DimMismatch : Error { using Error::Error; };
struct WeightError : Error { using Error::Error; };
struct EmptyKeepSet : Error { using Error::Error; };
struct BadSubset : Error { using Error::Error; };
struct NotUnitary : Error { using Error::Error; };
struct WitnessMismatch : Error { using Error::Error; };
struct InconsistentCertificates : Error { using Error::Error; };
struct InvariantError : Error { using Error::Error; };

// classify
struct NotThreeParties : Error { using Error::Error; };
struct UnrecognizedAntichain : Error { using Error::Error; };
struct EmptyAntichain : Error { using Error::Error; };

}  // namespace seppoly
