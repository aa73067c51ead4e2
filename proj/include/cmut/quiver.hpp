#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cmut/exchange_matrix.hpp"

namespace cmut {

// Finite multidigraph without loops or 2-cycles. Vertices are 0..n-1; an arrow
// entry (i, j) -> m means m > 0 arrows i -> j.
class Quiver {
public:
    using ArrowMap = std::map<std::pair<Index, Index>, Integer>;

    explicit Quiver(Index n);

    // Repeated (i, j) entries are summed. Throws IndexOutOfRange, LoopPresent,
    // TwoCyclePresent, or Error("NonPositiveMultiplicity").
    Quiver(Index n, const std::vector<std::tuple<Index, Index, Integer>>& arrows);

    Index size() const { return n_; }
    const ArrowMap& arrows() const { return arrows_; }
    Integer multiplicity(Index from, Index to) const;

    friend bool operator==(const Quiver&, const Quiver&) = default;

private:
    Index n_;
    ArrowMap arrows_;
};

ExchangeMatrix quiver_to_matrix(const Quiver& q);
Quiver matrix_to_quiver(const ExchangeMatrix& b);

// True iff the quiver has no oriented cycle.
bool is_acyclic(const Quiver& q);
bool is_connected(const Quiver& q);

// Serialized matrix minimized over all vertex relabelings. Equal keys iff the
// quivers are isomorphic.
struct QuiverCanonKey {
    std::string bytes;
    friend auto operator<=>(const QuiverCanonKey&, const QuiverCanonKey&) = default;
};

inline constexpr std::size_t kDefaultCanonicalizationLimit = 10;

// Throws TooLargeForCanonicalization when n exceeds `limit`.
QuiverCanonKey canonical_key(const ExchangeMatrix& b, std::size_t limit = kDefaultCanonicalizationLimit);
QuiverCanonKey canonical_key(const Quiver& q, std::size_t limit = kDefaultCanonicalizationLimit);

}  // namespace cmut

template <>
struct std::hash<cmut::QuiverCanonKey> {
    std::size_t operator()(const cmut::QuiverCanonKey& k) const noexcept {
        return std::hash<std::string>{}(k.bytes);
    }
};
