#ifndef K3MODULI_ERRORS_HPP
#define K3MODULI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace k3moduli {

enum class ErrorKind {
    NotPositiveDefinite,
    BadDiscriminant,
    DiscriminantMismatch,
    NotPrimitive,
    ClassNotInGroup,
    FieldMismatch,
    BadConductor,
    DegenerateLattice,
    NotEven,
    NotSymmetric,
    PrecisionExhausted,
    PrecisionUnsupported,
    NotNearInteger,
    ResolventDegenerate,
};

inline const char* to_string(ErrorKind k)
{
    switch (k) {
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::BadDiscriminant: return "BadDiscriminant";
    case ErrorKind::DiscriminantMismatch: return "DiscriminantMismatch";
    case ErrorKind::NotPrimitive: return "NotPrimitive";
    case ErrorKind::ClassNotInGroup: return "ClassNotInGroup";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::BadConductor: return "BadConductor";
    case ErrorKind::DegenerateLattice: return "DegenerateLattice";
    case ErrorKind::NotEven: return "NotEven";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::PrecisionUnsupported: return "PrecisionUnsupported";
    case ErrorKind::NotNearInteger: return "NotNearInteger";
    case ErrorKind::ResolventDegenerate: return "ResolventDegenerate";
    }
    return "Unknown";
}

/// Base of every error raised by the library. `kind()` identifies the
/// failure; input errors and precision errors are told apart by the CLI.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

    bool is_precision_failure() const noexcept
    {
        return kind_ == ErrorKind::PrecisionExhausted || kind_ == ErrorKind::PrecisionUnsupported
            || kind_ == ErrorKind::ResolventDegenerate;
    }

private:
    ErrorKind kind_;
};

template <ErrorKind K>
class KindError : public Error {
public:
    explicit KindError(const std::string& what) : Error(K, what) {}
};

using NotPositiveDefinite = KindError<ErrorKind::NotPositiveDefinite>;
using BadDiscriminant = KindError<ErrorKind::BadDiscriminant>;
using DiscriminantMismatch = KindError<ErrorKind::DiscriminantMismatch>;
using NotPrimitive = KindError<ErrorKind::NotPrimitive>;
using ClassNotInGroup = KindError<ErrorKind::ClassNotInGroup>;
using FieldMismatch = KindError<ErrorKind::FieldMismatch>;
using BadConductor = KindError<ErrorKind::BadConductor>;
using DegenerateLattice = KindError<ErrorKind::DegenerateLattice>;
using NotEven = KindError<ErrorKind::NotEven>;
using NotSymmetric = KindError<ErrorKind::NotSymmetric>;
using PrecisionExhausted = KindError<ErrorKind::PrecisionExhausted>;
using PrecisionUnsupported = KindError<ErrorKind::PrecisionUnsupported>;
using NotNearInteger = KindError<ErrorKind::NotNearInteger>;
using ResolventDegenerate = KindError<ErrorKind::ResolventDegenerate>;

} // namespace k3moduli

#endif
