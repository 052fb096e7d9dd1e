#pragma once

#include <stdexcept>
#include <string>

namespace mulab {

// Raised when an enumeration kernel is asked to handle a graph larger than
// its configured size cap.
struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Raised when rejection sampling gives up (e.g. the pairing model keeps
// producing loops or multi-edges).
struct RetryLimit : std::runtime_error {
    explicit RetryLimit(const std::string& what) : std::runtime_error(what) {}
};

// Raised on arguments outside the mathematical domain of an operation.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a caller-supplied vertex sequence is not an induced path.
struct PathNotInduced : std::runtime_error {
    explicit PathNotInduced(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a comb extraction needs off-path neighbours that do not exist.
struct DegreeTooLow : std::runtime_error {
    explicit DegreeTooLow(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a spectral routine requires a d-regular graph and the input
// is not regular.
struct NotRegular : std::runtime_error {
    explicit NotRegular(const std::string& what) : std::runtime_error(what) {}
};

// Raised on malformed input files (graph encodings, experiment specs, ...).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mulab
