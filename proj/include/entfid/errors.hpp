#pragma once

#include <stdexcept>
#include <string>

namespace entfid {

// Base class for all library errors. The CLI maps ParseError to exit code 2
// and every other Error to exit code 1.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

struct NotHermitian : Error {
    explicit NotHermitian(const std::string& what) : Error(what) {}
};

struct ConvergenceFailure : Error {
    explicit ConvergenceFailure(const std::string& what) : Error(what) {}
};

struct NotDensityMatrix : Error {
    explicit NotDensityMatrix(const std::string& what) : Error(what) {}
};

struct NotNormalized : Error {
    explicit NotNormalized(const std::string& what) : Error(what) {}
};

struct OutOfRange : Error {
    explicit OutOfRange(const std::string& what) : Error(what) {}
};

struct InvalidChannel : Error {
    explicit InvalidChannel(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace entfid
