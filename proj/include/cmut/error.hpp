#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cmut {

// Base of every domain error. `name()` is the stable identifier reported by the
// CLI on stderr and by the service in `{"error": name}`.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& detail)
        : std::runtime_error(detail), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

// Vertex indices carried by errors are 0-based; messages print them 1-based.

class NotSkewSymmetric : public Error {
public:
    NotSkewSymmetric(std::size_t i, std::size_t j);
    std::size_t i, j;
};

class IndexOutOfRange : public Error {
public:
    IndexOutOfRange(std::size_t index, std::size_t n);
    std::size_t index, n;
};

class EmptySubset : public Error {
public:
    EmptySubset() : Error("EmptySubset", "vertex subset is empty") {}
};

class LoopPresent : public Error {
public:
    explicit LoopPresent(std::size_t vertex);
    std::size_t vertex;
};

class TwoCyclePresent : public Error {
public:
    TwoCyclePresent(std::size_t i, std::size_t j);
    std::size_t i, j;
};

class TooLargeForCanonicalization : public Error {
public:
    TooLargeForCanonicalization(std::size_t n, std::size_t limit);
    std::size_t n;
};

class VariableCountMismatch : public Error {
public:
    VariableCountMismatch(std::size_t lhs, std::size_t rhs);
};

class DivisionNotExact : public Error {
public:
    DivisionNotExact() : Error("DivisionNotExact", "no Laurent polynomial quotient exists") {}
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("DivisionByZero", "division by the zero polynomial") {}
};

class ZeroPolynomial : public Error {
public:
    ZeroPolynomial() : Error("ZeroPolynomial", "operation undefined on the zero polynomial") {}
};

// Packed exponent keys exceed 128 bits; the polynomial is beyond practical size.
class PolynomialTooLarge : public Error {
public:
    PolynomialTooLarge() : Error("PolynomialTooLarge", "exponent range too wide for packed arithmetic") {}
};

// Exchange division failed at `position` (0-based) of a mutation sequence.
class ExchangeDivisionFailed : public Error {
public:
    ExchangeDivisionFailed(std::size_t direction, std::vector<std::size_t> sequence);
    std::size_t direction;
    std::vector<std::size_t> sequence;  // 0-based directions applied from the start seed
};

class WrongRank : public Error {
public:
    explicit WrongRank(std::size_t n);
};

class NotConnected : public Error {
public:
    NotConnected() : Error("NotConnected", "rank-3 quiver is not connected") {}
};

class UnclassifiableShape : public Error {
public:
    explicit UnclassifiableShape(const std::string& detail) : Error("UnclassifiableShape", detail) {}
};

class NotCyclic : public Error {
public:
    NotCyclic() : Error("NotCyclic", "shape is not an oriented 3-cycle") {}
};

class InternalPredictionMismatch : public Error {
public:
    explicit InternalPredictionMismatch(const std::string& detail)
        : Error("InternalPredictionMismatch", detail) {}
};

// Malformed input text or JSON.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& detail) : Error("ParseError", detail) {}
};

}  // namespace cmut
