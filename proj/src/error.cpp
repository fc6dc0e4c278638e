#include "hbz/error.hpp"

namespace hbz {

const char* to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::MultipleRoots: return "MultipleRoots";
    case ErrorCode::IllConditionedVandermonde: return "IllConditionedVandermonde";
    case ErrorCode::RetriesExhausted: return "RetriesExhausted";
    case ErrorCode::ResidualImaginary: return "ResidualImaginary";
    case ErrorCode::EvenControlCount: return "EvenControlCount";
    case ErrorCode::FactorizationFailed: return "FactorizationFailed";
    case ErrorCode::ImaginaryRemnant: return "ImaginaryRemnant";
    case ErrorCode::GenerationExhausted: return "GenerationExhausted";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    }
    return "Unknown";
}

} // namespace hbz
