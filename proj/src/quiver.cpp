#include "cmut/quiver.hpp"

#include <algorithm>
#include <queue>

namespace cmut {

Quiver::Quiver(Index n) : n_(n) {
    if (n < 1) {
        throw Error("EmptyMatrix", "quiver needs at least one vertex");
    }
}

Quiver::Quiver(Index n, const std::vector<std::tuple<Index, Index, Integer>>& arrows) : Quiver(n) {
    for (const auto& [i, j, m] : arrows) {
        if (i < 0 || i >= n) throw IndexOutOfRange(static_cast<std::size_t>(i), static_cast<std::size_t>(n));
        if (j < 0 || j >= n) throw IndexOutOfRange(static_cast<std::size_t>(j), static_cast<std::size_t>(n));
        if (m <= 0) {
            throw Error("NonPositiveMultiplicity", "arrow multiplicity must be positive");
        }
        if (i == j) throw LoopPresent(static_cast<std::size_t>(i));
        arrows_[{i, j}] += m;
    }
    for (const auto& [ij, m] : arrows_) {
        if (ij.first < ij.second && arrows_.contains({ij.second, ij.first})) {
            throw TwoCyclePresent(static_cast<std::size_t>(ij.first), static_cast<std::size_t>(ij.second));
        }
    }
}

Integer Quiver::multiplicity(Index from, Index to) const {
    auto it = arrows_.find({from, to});
    return it == arrows_.end() ? Integer(0) : it->second;
}

ExchangeMatrix quiver_to_matrix(const Quiver& q) {
    DenseMatrix<Integer> b = DenseMatrix<Integer>::Constant(q.size(), q.size(), Integer(0));
    for (const auto& [ij, m] : q.arrows()) {
        b(ij.first, ij.second) = m;
        b(ij.second, ij.first) = -m;
    }
    return ExchangeMatrix(std::move(b));
}

Quiver matrix_to_quiver(const ExchangeMatrix& b) {
    std::vector<std::tuple<Index, Index, Integer>> arrows;
    for (Index i = 0; i < b.size(); ++i) {
        for (Index j = 0; j < b.size(); ++j) {
            if (b(i, j) > 0) arrows.emplace_back(i, j, b(i, j));
        }
    }
    return Quiver(b.size(), arrows);
}

bool is_acyclic(const Quiver& q) {
    const auto n = static_cast<std::size_t>(q.size());
    std::vector<std::vector<std::size_t>> out(n);
    std::vector<std::size_t> indegree(n, 0);
    for (const auto& [ij, m] : q.arrows()) {
        out[static_cast<std::size_t>(ij.first)].push_back(static_cast<std::size_t>(ij.second));
        ++indegree[static_cast<std::size_t>(ij.second)];
    }
    std::queue<std::size_t> ready;
    for (std::size_t v = 0; v < n; ++v) {
        if (indegree[v] == 0) ready.push(v);
    }
    std::size_t removed = 0;
    while (!ready.empty()) {
        const std::size_t v = ready.front();
        ready.pop();
        ++removed;
        for (std::size_t w : out[v]) {
            if (--indegree[w] == 0) ready.push(w);
        }
    }
    return removed == n;
}

bool is_connected(const Quiver& q) {
    const auto n = static_cast<std::size_t>(q.size());
    std::vector<std::size_t> parent(n);
    for (std::size_t v = 0; v < n; ++v) parent[v] = v;
    auto find = [&](std::size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    std::size_t components = n;
    for (const auto& [ij, m] : q.arrows()) {
        auto a = find(static_cast<std::size_t>(ij.first));
        auto b = find(static_cast<std::size_t>(ij.second));
        if (a != b) {
            parent[a] = b;
            --components;
        }
    }
    return components == 1;
}

namespace {

// Branch-and-bound over vertex orderings. The serialization of an ordering p
// lists, for k = 1..n-1, the entries b(p_k, p_0) ... b(p_k, p_{k-1}); a prefix
// of p fixes a prefix of the serialization, so orderings whose prefix already
// compares greater than the incumbent are cut. Twins (vertices with equal
// rows and no arrows between them) are swapped by an automorphism, so each
// twin class is placed in index order only.
class Canonicalizer {
public:
    explicit Canonicalizer(std::vector<std::vector<int>> ranks)
        : n_(ranks.size()), ranks_(std::move(ranks)), used_(n_, false), prev_twin_(n_, kNone) {
        for (std::size_t v = 0; v < n_; ++v) {
            for (std::size_t u = v; u-- > 0;) {
                if (twins(u, v)) {
                    prev_twin_[v] = u;
                    break;
                }
            }
        }
    }

    std::vector<std::size_t> run() {
        search(0);
        return best_perm_;
    }

private:
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    bool twins(std::size_t u, std::size_t v) const {
        if (ranks_[u][v] != ranks_[v][u]) return false;
        for (std::size_t x = 0; x < n_; ++x) {
            if (x != u && x != v && (ranks_[u][x] != ranks_[v][x] || ranks_[x][u] != ranks_[x][v])) return false;
        }
        return true;
    }

    // Prefix comparison of the partial serialization against the incumbent.
    bool exceeds_best() const {
        if (!have_best_) return false;
        for (std::size_t i = 0; i < current_.size(); ++i) {
            if (current_[i] != best_[i]) return current_[i] > best_[i];
        }
        return false;
    }

    void search(std::size_t depth) {
        if (depth == n_) {
            if (!have_best_ || current_ < best_) {
                best_ = current_;
                best_perm_ = perm_;
                have_best_ = true;
            }
            return;
        }
        const std::size_t offset = current_.size();
        for (std::size_t v = 0; v < n_; ++v) {
            if (used_[v] || (prev_twin_[v] != kNone && !used_[prev_twin_[v]])) continue;
            for (std::size_t j = 0; j < depth; ++j) {
                current_.push_back(ranks_[v][perm_[j]]);
            }
            if (!exceeds_best()) {
                used_[v] = true;
                perm_.push_back(v);
                search(depth + 1);
                perm_.pop_back();
                used_[v] = false;
            }
            current_.resize(offset);
        }
    }

    std::size_t n_;
    std::vector<std::vector<int>> ranks_;
    std::vector<bool> used_;
    std::vector<std::size_t> prev_twin_;
    std::vector<std::size_t> perm_;
    std::vector<int> current_;
    std::vector<int> best_;
    std::vector<std::size_t> best_perm_;
    bool have_best_ = false;
};

}  // namespace

QuiverCanonKey canonical_key(const ExchangeMatrix& b, std::size_t limit) {
    const auto n = static_cast<std::size_t>(b.size());
    if (n > limit) {
        throw TooLargeForCanonicalization(n, limit);
    }
    // Order-preserving ranks let the search compare small ints.
    std::vector<Integer> values;
    values.reserve(n * n);
    for (Index i = 0; i < b.size(); ++i) {
        for (Index j = 0; j < b.size(); ++j) values.push_back(b(i, j));
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    std::vector<std::vector<int>> ranks(n, std::vector<int>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const auto& x = b(static_cast<Index>(i), static_cast<Index>(j));
            ranks[i][j] = static_cast<int>(std::lower_bound(values.begin(), values.end(), x) - values.begin());
        }
    }
    const auto perm = Canonicalizer(std::move(ranks)).run();

    std::string bytes = std::to_string(n);
    bytes += ':';
    for (std::size_t k = 1; k < n; ++k) {
        for (std::size_t j = 0; j < k; ++j) {
            bytes += b(static_cast<Index>(perm[k]), static_cast<Index>(perm[j])).str();
            bytes += ',';
        }
    }
    return QuiverCanonKey{std::move(bytes)};
}

QuiverCanonKey canonical_key(const Quiver& q, std::size_t limit) {
    return canonical_key(quiver_to_matrix(q), limit);
}

}  // namespace cmut
