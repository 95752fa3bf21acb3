#pragma once

#include <stdexcept>
#include <string>

namespace dessins {

/// Base of every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// symcore
struct DivisibilityError : Error { using Error::Error; };
struct NotInvertibleError : Error { using Error::Error; };
struct BranchError : Error { using Error::Error; };
struct UnboundSymbolError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

// permoracle
struct LimitExceeded : Error { using Error::Error; };

// genfun / toprec
struct TruncationError : Error { using Error::Error; };
struct IdentityViolation : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct IntegrabilityError : Error { using Error::Error; };
struct StructureError : Error { using Error::Error; };

// census cache
struct CacheIOError : Error { using Error::Error; };

}  // namespace dessins
