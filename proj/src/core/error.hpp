#pragma once

#include <stdexcept>
#include <string>

namespace eegtda {

// Error categories. The numeric values are mirrored by eegtda_status in the
// C header and by the CLI exit codes, so they must not be renumbered.
enum class ErrorCode : int {
    kParse = 2,
    kUnsupportedFormat = 3,
    kConfig = 4,
    kRange = 5,
    kInsufficientData = 6,
    kNumerical = 7,
    kAmbiguousModel = 8,
    kData = 9,
    kNotFound = 10,
    kIo = 11,
    kHashMismatch = 12,
    kGeneration = 13,
};

const char* error_category(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace eegtda
