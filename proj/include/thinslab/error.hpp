#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace thinslab {

/// Base class for every error the library raises. `kind()` is a stable
/// machine-readable tag used by the CLI when it reports failures.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

/// A symbol component returned a non-finite value.
class EvaluationError : public Error {
public:
    EvaluationError(std::string component, const std::string& message)
        : Error("evaluation", message), component_(std::move(component)) {}

    const std::string& component() const noexcept { return component_; }

private:
    std::string component_;
};

class InvalidSlabError : public Error {
public:
    explicit InvalidSlabError(const std::string& m) : Error("invalid-slab", m) {}
};

class SlabTooThickError : public Error {
public:
    explicit SlabTooThickError(const std::string& m) : Error("slab-too-thick", m) {}
};

class GridError : public Error {
public:
    explicit GridError(const std::string& m) : Error("grid", m) {}
};

class ArgumentError : public Error {
public:
    explicit ArgumentError(const std::string& m) : Error("argument", m) {}
};

class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& m) : Error("precondition", m) {}
};

class ContractError : public Error {
public:
    explicit ContractError(const std::string& m) : Error("contract", m) {}
};

class SizeError : public Error {
public:
    explicit SizeError(const std::string& m) : Error("size", m) {}
};

class SubdivisionError : public Error {
public:
    explicit SubdivisionError(const std::string& m) : Error("subdivision", m) {}
};

class PositionError : public Error {
public:
    explicit PositionError(const std::string& m) : Error("position", m) {}
};

class FormatError : public Error {
public:
    explicit FormatError(const std::string& m) : Error("format", m) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& m) : Error("config", m) {}
};

/// Power iteration ran out of iterations. Carries the last estimate.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& m, double last_estimate, int iterations)
        : Error("convergence", m), last_estimate_(last_estimate), iterations_(iterations) {}

    double last_estimate() const noexcept { return last_estimate_; }
    int iterations() const noexcept { return iterations_; }

private:
    double last_estimate_;
    int iterations_;
};

}  // namespace thinslab
