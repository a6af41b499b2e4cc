#pragma once

#include <stdexcept>
#include <string>

namespace pillai {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A theorem hypothesis failed for the given input (dominant root missing,
// monotonicity threshold not found, multiplicative dependence, ...).
// `stage` names the pipeline step that detected the failure.
class HypothesisFailure : public Error {
public:
    HypothesisFailure(std::string stage_, const std::string& msg)
        : Error(msg), stage(std::move(stage_)) {}
    std::string stage;
};

// A certification could not be completed below the configured precision
// or iteration ceiling.
class PrecisionExhausted : public Error {
public:
    explicit PrecisionExhausted(const std::string& msg) : Error(msg) {}
};

// compute_C0 cannot build a usable place system for this input class.
class UnsupportedPlaceStructure : public Error {
public:
    explicit UnsupportedPlaceStructure(const std::string& msg) : Error(msg) {}
};

// Search box exceeds the configured cell ceiling.
class BoxTooLarge : public Error {
public:
    explicit BoxTooLarge(const std::string& msg) : Error(msg) {}
};

// Malformed input file or JSON. `line`/`column` are 0 when unknown.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg, int line_ = 0, int column_ = 0)
        : Error(msg), line(line_), column(column_) {}
    int line;
    int column;
};

}  // namespace pillai
