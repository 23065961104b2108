// Error hierarchy shared by the whole library. Every error carries a stable
// machine-readable code so the CLI can emit structured failure records.

#pragma once

#include <stdexcept>
#include <string>

namespace discorr {

class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

struct ZeroNormError : Error {
    explicit ZeroNormError(const std::string& msg) : Error("ZeroNorm", msg) {}
};

struct RankOverflowError : Error {
    explicit RankOverflowError(const std::string& msg) : Error("RankOverflow", msg) {}
};

struct BadModeSetError : Error {
    explicit BadModeSetError(const std::string& msg) : Error("BadModeSet", msg) {}
};

struct TruncationOverflowError : Error {
    explicit TruncationOverflowError(const std::string& msg)
        : Error("TruncationOverflow", msg) {}
};

struct TailTooLargeError : Error {
    explicit TailTooLargeError(const std::string& msg) : Error("TailTooLarge", msg) {}
};

struct OutOfRangeError : Error {
    explicit OutOfRangeError(const std::string& msg) : Error("OutOfRange", msg) {}
};

struct DegenerateBeamSplitterError : Error {
    explicit DegenerateBeamSplitterError(const std::string& msg)
        : Error("DegenerateBeamSplitter", msg) {}
};

struct DegenerateReferenceError : Error {
    explicit DegenerateReferenceError(const std::string& msg)
        : Error("DegenerateReference", msg) {}
};

// Invalid user-facing specification (CLI arguments, scenario parameters).
struct SpecError : Error {
    explicit SpecError(const std::string& msg) : Error("SpecError", msg) {}
};

} // namespace discorr
