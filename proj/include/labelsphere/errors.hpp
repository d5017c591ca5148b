#pragma once

#include <stdexcept>
#include <string>

namespace labelsphere {

// Caller passed an argument outside the documented domain.
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Input text did not match the expected format.
struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_number(line) {}
    std::size_t line_number;
};

// Counts or frequencies too degenerate to derive statistics from.
struct DegenerateStatisticsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A vector required to be normalizable had zero norm.
struct DegenerateVectorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical routine failed to converge or produced non-finite values.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A label could not be resolved against a vocabulary or embedding.
struct LookupError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Prediction/truth/weight vocabularies do not align.
struct AlignmentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Training produced a non-finite loss.
struct TrainingFailureError : std::runtime_error {
    TrainingFailureError(const std::string& what, long step)
        : std::runtime_error(what + " (step " + std::to_string(step) + ")"), step_index(step) {}
    long step_index;
};

// Probe preconditions not met by the supplied data.
struct InapplicableProbeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace labelsphere
