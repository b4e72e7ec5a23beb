#pragma once

#include <stdexcept>
#include <string>

namespace esw {

/// Base class of every error raised by the solver library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A cell whose depth dropped to (or below) the dry threshold.
class DryCell : public Error {
public:
    DryCell(std::size_t cell, double depth);
    std::size_t cell() const noexcept { return cell_; }
    double depth() const noexcept { return depth_; }

private:
    std::size_t cell_;
    double depth_;
};

/// Argument outside the mathematical domain of a closed-form formula.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Linearised solution requested at (or too close to) critical flow.
class CriticalFlow : public Error {
public:
    using Error::Error;
};

/// Semi-implicit friction update met a negative discriminant; compute_dt let
/// through a step that violates the reverse-flow restriction.
class NegativeDiscriminant : public Error {
public:
    using Error::Error;
};

class MismatchedGrids : public Error {
public:
    using Error::Error;
};

class DegenerateProfile : public Error {
public:
    using Error::Error;
};

class TridiagonalFailure : public Error {
public:
    using Error::Error;
};

/// Convergence study could not reach a steady state inside its step budget.
class NonSteady : public Error {
public:
    using Error::Error;
};

/// Invalid or inconsistent configuration; carries the offending key.
class ConfigError : public Error {
public:
    ConfigError(std::string key, const std::string& what);
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace esw
