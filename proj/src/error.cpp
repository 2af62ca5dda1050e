#include "gabp/error.hpp"

namespace gabp {

const char* errc_name(Errc c) {
    switch (c) {
    case Errc::MalformedRow: return "MalformedRow";
    case Errc::DuplicateDate: return "DuplicateDate";
    case Errc::NonMonotonicDate: return "NonMonotonicDate";
    case Errc::SchemaMismatch: return "SchemaMismatch";
    case Errc::ModelParseError: return "ModelParseError";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::InsufficientRows: return "InsufficientRows";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::BadConfig: return "BadConfig";
    case Errc::EdgeGap: return "EdgeGap";
    case Errc::DegenerateColumn: return "DegenerateColumn";
    case Errc::DegenerateSeries: return "DegenerateSeries";
    case Errc::DegenerateRange: return "DegenerateRange";
    case Errc::SeriesTooShort: return "SeriesTooShort";
    case Errc::SingularRegression: return "SingularRegression";
    case Errc::NonPositivePrice: return "NonPositivePrice";
    case Errc::WindowTooLarge: return "WindowTooLarge";
    case Errc::ConstantFeature: return "ConstantFeature";
    case Errc::NonFiniteLoss: return "NonFiniteLoss";
    case Errc::NonStationary: return "NonStationary";
    case Errc::ZeroFitness: return "ZeroFitness";
    }
    return "Unknown";
}

bool is_input_error(Errc c) {
    switch (c) {
    case Errc::MalformedRow:
    case Errc::DuplicateDate:
    case Errc::NonMonotonicDate:
    case Errc::SchemaMismatch:
    case Errc::ModelParseError:
    case Errc::EmptyInput:
    case Errc::InsufficientRows:
    case Errc::LengthMismatch:
    case Errc::DimensionMismatch:
    case Errc::BadConfig:
        return true;
    default:
        return false;
    }
}

} // namespace gabp
