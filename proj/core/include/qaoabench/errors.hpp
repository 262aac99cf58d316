#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qaoabench {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input (dimension mismatch, out-of-range vertex, ...).
class InputError : public Error {
public:
    using Error::Error;
};

// Instance exceeds a hard enumeration or simulation bound.
class CapacityError : public Error {
public:
    using Error::Error;
};

// Objective returned a non-finite value; carries the offending point.
class EvaluationError : public Error {
public:
    EvaluationError(const std::string& msg, std::vector<double> point)
        : Error(msg), point_(std::move(point)) {}

    const std::vector<double>& point() const noexcept { return point_; }

private:
    std::vector<double> point_;
};

// Instance whose max-cut is 0; the approximation ratio is undefined.
class DegenerateInstanceError : public Error {
public:
    using Error::Error;
};

// Filesystem or serialization failure; message names the path.
class IoError : public Error {
public:
    using Error::Error;
};

// Journal corrupted before its final record. Reports how many leading
// records are still parseable.
class JournalError : public IoError {
public:
    JournalError(const std::string& msg, std::size_t salvageable_records)
        : IoError(msg), salvageable_(salvageable_records) {}

    std::size_t salvageable_records() const noexcept { return salvageable_; }

private:
    std::size_t salvageable_ = 0;
};

// Invalid run configuration; message names the offending field.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace qaoabench
