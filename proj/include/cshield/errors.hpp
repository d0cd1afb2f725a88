#pragma once

#include <stdexcept>
#include <string>

namespace cshield {

// Base class for all library errors. Callers that only need coarse
// handling can catch this; the derived types mirror the failure modes
// of the individual operations.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct CapExceeded : Error {
    explicit CapExceeded(const std::string& msg) : Error(msg) {}
};

struct LengthMismatch : Error {
    explicit LengthMismatch(const std::string& msg) : Error(msg) {}
};

struct NonRealPhase : Error {
    explicit NonRealPhase(const std::string& msg) : Error(msg) {}
};

struct OddWeightCodeword : Error {
    explicit OddWeightCodeword(const std::string& msg) : Error(msg) {}
};

struct InconsistentSize : Error {
    explicit InconsistentSize(const std::string& msg) : Error(msg) {}
};

struct PoleAtPi2 : Error {
    explicit PoleAtPi2(const std::string& msg) : Error(msg) {}
};

struct NotAStabilizerX : Error {
    explicit NotAStabilizerX(const std::string& msg) : Error(msg) {}
};

struct InvariantViolation : Error {
    explicit InvariantViolation(const std::string& msg) : Error(msg) {}
};

struct InvalidCss : Error {
    explicit InvalidCss(const std::string& msg) : Error(msg) {}
};

struct ContainmentViolated : Error {
    explicit ContainmentViolated(const std::string& msg) : Error(msg) {}
};

struct OddM : Error {
    explicit OddM(const std::string& msg) : Error(msg) {}
};

struct BadYWeight : Error {
    explicit BadYWeight(const std::string& msg) : Error(msg) {}
};

struct NormalFormFailure : Error {
    explicit NormalFormFailure(const std::string& msg) : Error(msg) {}
};

struct SyntaxError : Error {
    SyntaxError(std::size_t line_no, const std::string& msg)
        : Error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
    std::size_t line;
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

}  // namespace cshield
