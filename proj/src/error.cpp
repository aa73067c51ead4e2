#include "cmut/error.hpp"

namespace cmut {

namespace {
std::string one_based(std::size_t i) { return std::to_string(i + 1); }
}  // namespace

NotSkewSymmetric::NotSkewSymmetric(std::size_t i_, std::size_t j_)
    : Error("NotSkewSymmetric",
            "b(" + one_based(i_) + "," + one_based(j_) + ") != -b(" + one_based(j_) + "," + one_based(i_) + ")"),
      i(i_),
      j(j_) {}

IndexOutOfRange::IndexOutOfRange(std::size_t index_, std::size_t n_)
    : Error("IndexOutOfRange", "vertex " + one_based(index_) + " outside 1.." + std::to_string(n_)),
      index(index_),
      n(n_) {}

LoopPresent::LoopPresent(std::size_t v)
    : Error("LoopPresent", "loop at vertex " + one_based(v)), vertex(v) {}

TwoCyclePresent::TwoCyclePresent(std::size_t i_, std::size_t j_)
    : Error("TwoCyclePresent", "arrows in both directions between " + one_based(i_) + " and " + one_based(j_)),
      i(i_),
      j(j_) {}

TooLargeForCanonicalization::TooLargeForCanonicalization(std::size_t n_, std::size_t limit)
    : Error("TooLargeForCanonicalization",
            std::to_string(n_) + " vertices exceeds the canonicalization limit " + std::to_string(limit)),
      n(n_) {}

VariableCountMismatch::VariableCountMismatch(std::size_t lhs, std::size_t rhs)
    : Error("VariableCountMismatch",
            "operands live in " + std::to_string(lhs) + " and " + std::to_string(rhs) + " variables") {}

namespace {
std::string describe_sequence(const std::vector<std::size_t>& seq) {
    std::string s;
    for (std::size_t k : seq) {
        if (!s.empty()) s += ' ';
        s += one_based(k);
    }
    return s;
}
}  // namespace

ExchangeDivisionFailed::ExchangeDivisionFailed(std::size_t direction_, std::vector<std::size_t> sequence_)
    : Error("ExchangeDivisionFailed",
            "exchange division in direction " + one_based(direction_) + " is not exact (sequence \"" +
                describe_sequence(sequence_) + "\")"),
      direction(direction_),
      sequence(std::move(sequence_)) {}

WrongRank::WrongRank(std::size_t n)
    : Error("WrongRank", "rank-3 analysis needs 3 vertices, got " + std::to_string(n)) {}

}  // namespace cmut
