#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace revert {

enum class Errc {
    InvalidArgument,
    MissingFile,
    MalformedRow,
    NonPositivePrice,
    EmptySeries,
    EmptyIntersection,
    DimensionMismatch,
    InvalidParams,
    DegenerateSeries,
    NonMeanReverting,
    NoExtremes,
    NoCompletePairs,
    NoFeasibleCandidate,
    GridTooLarge,
    WindowTooShort,
    ZeroReferencePrice,
    IllegalAction,
    NoFeasibleB,
    DegenerateStd,
    OutOfBoundsTrade,
    NonPositiveBasis,
    DegenerateWealth,
    Io,
};

const char* errc_name(Errc code) noexcept;

// Every failure in the library is reported through this type. `line` is set
// for row-level CSV problems (1-based, header is line 1).
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what, std::optional<std::size_t> line = std::nullopt)
        : std::runtime_error(what), code_(code), line_(line) {}

    Errc code() const noexcept { return code_; }
    std::optional<std::size_t> line() const noexcept { return line_; }

private:
    Errc code_;
    std::optional<std::size_t> line_;
};

}  // namespace revert
