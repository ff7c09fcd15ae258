#include "grassproj/error.hpp"
#include "grassproj/parallel.hpp"

#include <cstdlib>
#include <string>

namespace grassproj {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::RankDeficient: return "RankDeficient";
        case ErrorCode::AmbientMismatch: return "AmbientMismatch";
        case ErrorCode::DimMismatch: return "DimMismatch";
        case ErrorCode::Singular: return "Singular";
        case ErrorCode::ScaleTooFine: return "ScaleTooFine";
        case ErrorCode::EmptySet: return "EmptySet";
        case ErrorCode::PreconditionViolated: return "PreconditionViolated";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::WeightsInvalid: return "WeightsInvalid";
        case ErrorCode::BadIndex: return "BadIndex";
        case ErrorCode::ArithmeticMismatch: return "ArithmeticMismatch";
        case ErrorCode::InvalidCover: return "InvalidCover";
        case ErrorCode::EmptySupport: return "EmptySupport";
        case ErrorCode::DimOverflow: return "DimOverflow";
        case ErrorCode::BadBase: return "BadBase";
        case ErrorCode::Degenerate: return "Degenerate";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::Format: return "Format";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

unsigned default_threads() {
    if (const char* env = std::getenv("GRASSPROJ_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace grassproj
