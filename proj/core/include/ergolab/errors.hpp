#pragma once

#include <stdexcept>
#include <string>

namespace ergolab {

/// Base class for all library errors; carries a stable short code used by
/// the CLI to map failures to exit codes.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

/// An input failed a structural invariant (hermiticity, trace, positivity,
/// normalization, unitarity, rank-1 requirement, ...). The message names the
/// violated invariant and the measured violation.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Operand dimensions are incompatible.
class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& what)
        : Error("DimensionMismatch", what) {}
};

/// A bipartite operation was requested on a state without a bipartition
/// annotation.
class MissingDims : public Error {
public:
    explicit MissingDims(const std::string& what) : Error("MissingDims", what) {}
};

/// A tensor power would exceed the configured dimension cap.
class DimensionCap : public Error {
public:
    explicit DimensionCap(const std::string& what) : Error("DimensionCap", what) {}
};

/// A target entropy lies outside the attainable thermal-entropy range of the
/// Hamiltonian.
class EntropyOutOfRange : public Error {
public:
    explicit EntropyOutOfRange(const std::string& what)
        : Error("EntropyOutOfRange", what) {}
};

/// The Hamiltonian spectrum is fully degenerate, so no thermal state can
/// reach the requested entropy.
class DegenerateSpectrum : public Error {
public:
    explicit DegenerateSpectrum(const std::string& what)
        : Error("DegenerateSpectrum", what) {}
};

/// A file or generator spec could not be parsed.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error("ParseError", what) {}
};

}  // namespace ergolab
