#include "cmut/explorer.hpp"

#include <algorithm>
#include <future>
#include <set>
#include <unordered_set>

#include <spdlog/spdlog.h>

namespace cmut {

ExchangeGraph::ExchangeGraph(Seed root) {
    auto key = seed_key(root);
    add_node(std::move(key), std::move(root), {});
}

std::optional<std::size_t> ExchangeGraph::find(const SeedKey& key) const {
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t ExchangeGraph::add_node(SeedKey key, Seed seed, std::vector<Index> witness) {
    const std::size_t id = nodes_.size();
    const auto n = static_cast<std::size_t>(seed.rank());
    index_.emplace(key, id);
    nodes_.push_back({std::move(key), std::move(seed), std::move(witness), std::vector<std::optional<std::size_t>>(n)});
    return id;
}

void ExchangeGraph::link(std::size_t from, Index direction, std::size_t to) {
    nodes_[from].neighbors[static_cast<std::size_t>(direction)] = to;
}

std::vector<ExchangeEdge> ExchangeGraph::edges() const {
    std::vector<ExchangeEdge> out;
    for (std::size_t id = 0; id < nodes_.size(); ++id) {
        const auto& nb = nodes_[id].neighbors;
        for (std::size_t d = 0; d < nb.size(); ++d) {
            if (nb[d]) out.push_back({id, static_cast<Index>(d), *nb[d]});
        }
    }
    return out;
}

namespace {

struct Candidate {
    Seed seed;
    SeedKey key;
};

std::vector<Candidate> expand(const ExchangeNode& node) {
    std::vector<Candidate> out;
    const Index n = node.seed.rank();
    out.reserve(static_cast<std::size_t>(n));
    for (Index dir = 0; dir < n; ++dir) {
        try {
            Seed child = mutate_seed(node.seed, dir);
            SeedKey key = seed_key(child);
            out.push_back({std::move(child), std::move(key)});
        } catch (const ExchangeDivisionFailed& e) {
            std::vector<std::size_t> seq;
            for (Index k : node.witness) seq.push_back(static_cast<std::size_t>(k));
            seq.push_back(static_cast<std::size_t>(dir));
            throw ExchangeDivisionFailed(e.direction, std::move(seq));
        }
    }
    return out;
}

std::optional<std::string> limit_violation(const Seed& s, Index changed, const EnumerationLimits& limits) {
    if (s.matrix().max_abs() > limits.max_entry) {
        return "entry bound " + limits.max_entry.str() + " exceeded";
    }
    const auto degree = denominator_monomial(s.cluster()[static_cast<std::size_t>(changed)]).total_degree();
    if (degree > limits.max_denominator_degree) {
        return "denominator degree " + std::to_string(degree) + " exceeds " +
               std::to_string(limits.max_denominator_degree);
    }
    return std::nullopt;
}

// Same cluster as a set must come with the same matrix up to the relabeling
// that matches the two clusters.
std::optional<std::string> matrix_mismatch(const Seed& existing, const Seed& candidate) {
    const auto& a = existing.cluster();
    const auto& b = candidate.cluster();
    std::vector<Index> perm(b.size());
    for (std::size_t p = 0; p < b.size(); ++p) {
        auto it = std::find(a.begin(), a.end(), b[p]);
        if (it == a.end()) return "clusters differ despite equal keys";
        perm[p] = static_cast<Index>(it - a.begin());
    }
    if (!(relabel(existing.matrix(), perm) == candidate.matrix())) {
        return "equal clusters carry non-conjugate exchange matrices";
    }
    return std::nullopt;
}

}  // namespace

EnumerationResult enumerate(const Seed& root, const EnumerationLimits& limits) {
    EnumerationResult result{ExchangeGraph(root), false, 0, 0, StopReason::Exhausted, {}, {}};
    auto& graph = result.graph;
    bool truncated = false;
    const std::size_t workers = std::max(1u, limits.threads);

    std::size_t cursor = 0;
    bool stopped = false;
    while (!stopped && cursor < graph.size()) {
        // Candidates for a batch of frontier nodes are computed independently
        // (possibly in parallel) and merged in FIFO order.
        const std::size_t batch_end = std::min(graph.size(), cursor + workers);
        std::vector<std::vector<Candidate>> batch(batch_end - cursor);
        if (workers == 1) {
            batch[0] = expand(graph.node(cursor));
        } else {
            std::vector<std::future<std::vector<Candidate>>> jobs;
            for (std::size_t id = cursor; id < batch_end; ++id) {
                jobs.push_back(std::async(std::launch::async, [&graph, id] { return expand(graph.node(id)); }));
            }
            for (std::size_t j = 0; j < jobs.size(); ++j) batch[j] = jobs[j].get();
        }

        for (std::size_t j = 0; j < batch.size() && !stopped; ++j) {
            const std::size_t parent = cursor + j;
            for (std::size_t dir = 0; dir < batch[j].size(); ++dir) {
                auto& cand = batch[j][dir];
                const auto direction = static_cast<Index>(dir);
                if (auto existing = graph.find(cand.key)) {
                    if (auto why = matrix_mismatch(graph.node(*existing).seed, cand.seed)) {
                        result.diagnostics.push_back(*why);
                        spdlog::warn("node {} direction {}: {}", parent, dir + 1, *why);
                    }
                    graph.link(parent, direction, *existing);
                    continue;
                }
                if (graph.node(parent).witness.size() >= limits.max_depth) {
                    truncated = true;
                    continue;
                }
                if (auto why = limit_violation(cand.seed, direction, limits)) {
                    truncated = true;
                    result.spill.push_back({parent, direction, *why});
                    continue;
                }
                if (graph.size() >= limits.max_seeds) {
                    stopped = true;
                    result.stop = StopReason::MaxSeeds;
                    break;
                }
                auto witness = graph.node(parent).witness;
                witness.push_back(direction);
                const std::size_t id = graph.add_node(std::move(cand.key), std::move(cand.seed), std::move(witness));
                graph.link(parent, direction, id);
            }
        }
        cursor = batch_end;
    }

    result.complete = !stopped && !truncated;
    result.cluster_count = graph.size();
    result.cluster_variable_count = cluster_variables(graph).size();
    spdlog::debug("enumerate: {} seeds, {} variables, complete={}", result.cluster_count,
                  result.cluster_variable_count, result.complete);
    return result;
}

std::vector<LaurentPolynomial> cluster_variables(const ExchangeGraph& g) {
    std::unordered_set<LaurentPolynomial> seen;
    std::vector<LaurentPolynomial> out;
    for (const auto& node : g.nodes()) {
        for (const auto& x : node.seed.cluster()) {
            if (seen.insert(x).second) out.push_back(x);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::variant<FiniteType, ExceededLimits> is_finite_type(const ExchangeMatrix& b, const EnumerationLimits& limits) {
    const auto r = enumerate(initial_seed(b), limits);
    if (!r.complete) return ExceededLimits{};
    return FiniteType{r.cluster_count, r.cluster_variable_count};
}

MutationClassResult mutation_class_quivers(const Quiver& q, const EnumerationLimits& limits) {
    MutationClassResult result;
    std::unordered_map<QuiverCanonKey, std::size_t> index;
    const ExchangeMatrix root = quiver_to_matrix(q);
    auto root_key = canonical_key(root);
    index.emplace(root_key, 0);
    result.classes.push_back({std::move(root_key), root, {}});

    bool truncated = false;
    bool stopped = false;
    for (std::size_t cursor = 0; cursor < result.classes.size() && !stopped; ++cursor) {
        for (Index dir = 0; dir < root.size(); ++dir) {
            ExchangeMatrix next = mutate(result.classes[cursor].representative, dir);
            auto key = canonical_key(next);
            if (index.contains(key)) continue;
            if (next.max_abs() > limits.max_entry) {
                truncated = true;
                continue;
            }
            if (result.classes.size() >= limits.max_seeds) {
                stopped = true;
                break;
            }
            auto witness = result.classes[cursor].witness;
            witness.push_back(dir);
            index.emplace(key, result.classes.size());
            result.classes.push_back({std::move(key), std::move(next), std::move(witness)});
        }
    }
    result.complete = !stopped && !truncated;
    return result;
}

}  // namespace cmut
