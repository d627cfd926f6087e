#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace grasslab {

enum class ErrorKind {
    UnsupportedField,
    DimensionMismatch,
    AmbientMismatch,
    Singular,
    NotInGrassmannian,
    BadCentreDimension,
    BadCarrierDimension,
    BadFlag,
    ResourceLimit,
    NotAdmissible,
    BadFrame,
    ZeroVector,
    NotMutuallyDistant,
    TooFewMembers,
    NotDistantClique,
    NotADirectrix,
    CorruptCache,
    BadConfig,
    BadArgument,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::UnsupportedField: return "UnsupportedField";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::AmbientMismatch: return "AmbientMismatch";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::NotInGrassmannian: return "NotInGrassmannian";
    case ErrorKind::BadCentreDimension: return "BadCentreDimension";
    case ErrorKind::BadCarrierDimension: return "BadCarrierDimension";
    case ErrorKind::BadFlag: return "BadFlag";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::NotAdmissible: return "NotAdmissible";
    case ErrorKind::BadFrame: return "BadFrame";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::NotMutuallyDistant: return "NotMutuallyDistant";
    case ErrorKind::TooFewMembers: return "TooFewMembers";
    case ErrorKind::NotDistantClique: return "NotDistantClique";
    case ErrorKind::NotADirectrix: return "NotADirectrix";
    case ErrorKind::CorruptCache: return "CorruptCache";
    case ErrorKind::BadConfig: return "BadConfig";
    case ErrorKind::BadArgument: return "BadArgument";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what)
{
    throw Error(kind, what);
}

} // namespace grasslab
