#include "error.hpp"

namespace eegtda {

const char* error_category(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::kParse: return "parse";
        case ErrorCode::kUnsupportedFormat: return "unsupported-format";
        case ErrorCode::kConfig: return "config";
        case ErrorCode::kRange: return "range";
        case ErrorCode::kInsufficientData: return "insufficient-data";
        case ErrorCode::kNumerical: return "numerical";
        case ErrorCode::kAmbiguousModel: return "ambiguous-model";
        case ErrorCode::kData: return "data";
        case ErrorCode::kNotFound: return "not-found";
        case ErrorCode::kIo: return "io";
        case ErrorCode::kHashMismatch: return "hash-mismatch";
        case ErrorCode::kGeneration: return "generation";
    }
    return "unknown";
}

}  // namespace eegtda
