#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cocycle_lab {

// Base of every error raised by the library. Callers that only need a
// message can catch this; the CLI maps subclasses onto exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A point was handed to a system (or partition, metric) of another kind.
class KindMismatch : public Error {
public:
    using Error::Error;
};

// Requested orbit length exceeds the configured map-application budget.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(std::int64_t requested, std::int64_t budget)
        : Error("orbit budget exceeded: requested " + std::to_string(requested) +
                " map applications, budget is " + std::to_string(budget)),
          requested_(requested), budget_(budget) {}

    std::int64_t requested() const noexcept { return requested_; }
    std::int64_t budget() const noexcept { return budget_; }

private:
    std::int64_t requested_;
    std::int64_t budget_;
};

// Precondition violated by an argument (bad parameter, empty input, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Floating point breakdown during a matrix product.
class NumericError : public Error {
public:
    NumericError(const std::string& what, std::int64_t step)
        : Error(what + " at step " + std::to_string(step)), step_(step) {}

    std::int64_t step() const noexcept { return step_; }

private:
    std::int64_t step_;
};

// Histograms over different partitions cannot be compared.
class PartitionMismatch : public Error {
public:
    using Error::Error;
};

// A claimed semiconjugacy or factor map failed numerical validation.
class ValidationError : public Error {
public:
    ValidationError(const std::string& what, double defect)
        : Error(what), defect_(defect) {}

    double defect() const noexcept { return defect_; }

private:
    double defect_;
};

// Malformed configuration text; line and column are 1-based.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace cocycle_lab
