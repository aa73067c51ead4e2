#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "cmut/quiver.hpp"
#include "cmut/seed.hpp"

namespace cmut {

struct EnumerationLimits {
    std::size_t max_seeds = 100000;
    Integer max_entry = Integer(1) << 32;
    std::int64_t max_denominator_degree = std::int64_t{1} << 20;
    // Worker threads for frontier expansion; results do not depend on it.
    unsigned threads = 1;
    // Seeds farther than this from the root are not admitted; edges among
    // admitted seeds are still recorded.
    std::size_t max_depth = std::numeric_limits<std::size_t>::max();
};

// Node of the exchange graph; `neighbors[i]` is the node reached by mutating
// in direction i, when that node was admitted.
struct ExchangeNode {
    SeedKey key;
    Seed seed;
    std::vector<Index> witness;  // directions from the root, 0-based
    std::vector<std::optional<std::size_t>> neighbors;
};

struct ExchangeEdge {
    std::size_t from;
    Index direction;
    std::size_t to;
    friend bool operator==(const ExchangeEdge&, const ExchangeEdge&) = default;
};

// Seeds deduplicated by SeedKey; node 0 is the root and node order is BFS order.
class ExchangeGraph {
public:
    explicit ExchangeGraph(Seed root);

    std::size_t size() const { return nodes_.size(); }
    const ExchangeNode& node(std::size_t id) const { return nodes_[id]; }
    const std::vector<ExchangeNode>& nodes() const { return nodes_; }
    std::optional<std::size_t> find(const SeedKey& key) const;

    // One edge per (node, direction) whose target was admitted.
    std::vector<ExchangeEdge> edges() const;

    std::size_t add_node(SeedKey key, Seed seed, std::vector<Index> witness);
    void link(std::size_t from, Index direction, std::size_t to);

private:
    std::vector<ExchangeNode> nodes_;
    std::unordered_map<SeedKey, std::size_t> index_;
};

enum class StopReason { Exhausted, MaxSeeds };

// A candidate that broke max_entry or max_denominator_degree and was not admitted.
struct SpillRecord {
    std::size_t parent;
    Index direction;
    std::string reason;
};

struct EnumerationResult {
    ExchangeGraph graph;
    bool complete = false;
    std::size_t cluster_count = 0;
    std::size_t cluster_variable_count = 0;
    StopReason stop = StopReason::Exhausted;
    std::vector<SpillRecord> spill;
    // Violations of "equal cluster => matrices agree up to the matching permutation".
    std::vector<std::string> diagnostics;
};

// Breadth-first closure of seed mutation: FIFO frontier, directions ascending.
// Propagates ExchangeDivisionFailed with the witness sequence.
EnumerationResult enumerate(const Seed& root, const EnumerationLimits& limits);

// Union of all clusters, deduplicated and sorted by LaurentPolynomial order.
std::vector<LaurentPolynomial> cluster_variables(const ExchangeGraph& g);

struct FiniteType {
    std::size_t cluster_count;
    std::size_t variable_count;
};
struct ExceededLimits {};

std::variant<FiniteType, ExceededLimits> is_finite_type(const ExchangeMatrix& b, const EnumerationLimits& limits);

struct QuiverClassMember {
    QuiverCanonKey key;
    ExchangeMatrix representative;
    std::vector<Index> witness;
};

struct MutationClassResult {
    std::vector<QuiverClassMember> classes;  // BFS discovery order
    bool complete = false;
};

// Closure of matrix mutation up to quiver isomorphism. max_seeds bounds the
// number of classes; max_entry bounds |b_ij|.
MutationClassResult mutation_class_quivers(const Quiver& q, const EnumerationLimits& limits);

}  // namespace cmut
