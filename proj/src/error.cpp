#include "revert/error.hpp"

namespace revert {

const char* errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::MissingFile: return "MissingFile";
        case Errc::MalformedRow: return "MalformedRow";
        case Errc::NonPositivePrice: return "NonPositivePrice";
        case Errc::EmptySeries: return "EmptySeries";
        case Errc::EmptyIntersection: return "EmptyIntersection";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::InvalidParams: return "InvalidParams";
        case Errc::DegenerateSeries: return "DegenerateSeries";
        case Errc::NonMeanReverting: return "NonMeanReverting";
        case Errc::NoExtremes: return "NoExtremes";
        case Errc::NoCompletePairs: return "NoCompletePairs";
        case Errc::NoFeasibleCandidate: return "NoFeasibleCandidate";
        case Errc::GridTooLarge: return "GridTooLarge";
        case Errc::WindowTooShort: return "WindowTooShort";
        case Errc::ZeroReferencePrice: return "ZeroReferencePrice";
        case Errc::IllegalAction: return "IllegalAction";
        case Errc::NoFeasibleB: return "NoFeasibleB";
        case Errc::DegenerateStd: return "DegenerateStd";
        case Errc::OutOfBoundsTrade: return "OutOfBoundsTrade";
        case Errc::NonPositiveBasis: return "NonPositiveBasis";
        case Errc::DegenerateWealth: return "DegenerateWealth";
        case Errc::Io: return "Io";
    }
    return "Unknown";
}

}  // namespace revert
