#pragma once

#include <stdexcept>
#include <string>

namespace gabp {

/// Error codes for every failure mode the library reports. Input errors map
/// to CLI exit code 2, numeric/domain errors to exit code 3.
enum class Errc {
    // input / schema errors
    MalformedRow,
    DuplicateDate,
    NonMonotonicDate,
    SchemaMismatch,
    ModelParseError,
    EmptyInput,
    InsufficientRows,
    LengthMismatch,
    DimensionMismatch,
    BadConfig,
    // numeric / domain errors
    EdgeGap,
    DegenerateColumn,
    DegenerateSeries,
    DegenerateRange,
    SeriesTooShort,
    SingularRegression,
    NonPositivePrice,
    WindowTooLarge,
    ConstantFeature,
    NonFiniteLoss,
    NonStationary,
    ZeroFitness,
};

const char* errc_name(Errc c);

/// True for errors caused by bad user input (files, schemas, flags) rather
/// than by numerically degenerate data.
bool is_input_error(Errc c);

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

} // namespace gabp
