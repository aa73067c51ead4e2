#include "cmut/rank3.hpp"

#include <algorithm>
#include <tuple>

namespace cmut {

namespace {

using ArrowList = std::vector<std::tuple<Index, Index, Integer>>;

void add_arrow(ArrowList& list, Index from, Index to, const Integer& m) {
    if (m > 0) list.emplace_back(from, to, m);
}

auto shape_order(const Rank3Shape& a) { return std::tie(a.r, a.s, a.t, a.vertex_map); }

}  // namespace

Rank3Shape Rank3Shape::acyclic(Integer r, Integer s, Integer t) {
    if (r < 0 || s < 0 || t < 0 || (r == 0) + (s == 0) + (t == 0) > 1) {
        throw UnclassifiableShape("acyclic shape needs nonnegative counts with at most one zero");
    }
    return Rank3Shape{ShapeKind::Acyclic, std::move(r), std::move(s), std::move(t)};
}

Rank3Shape Rank3Shape::cyclic(Integer r, Integer s, Integer t) {
    if (r <= 0 || s <= 0 || t <= 0) {
        throw UnclassifiableShape("cyclic shape needs positive counts");
    }
    return Rank3Shape{ShapeKind::Cyclic, std::move(r), std::move(s), std::move(t)};
}

Integer Rank3Shape::arrows(int from, int to) const {
    if (from == 0 && to == 1) return r;
    if (from == 1 && to == 2) return s;
    if (kind == ShapeKind::Acyclic && from == 0 && to == 2) return t;
    if (kind == ShapeKind::Cyclic && from == 2 && to == 0) return t;
    return Integer(0);
}

int Rank3Shape::role_of(Index v) const {
    for (int role = 0; role < 3; ++role) {
        if (vertex_map[static_cast<std::size_t>(role)] == v) return role;
    }
    return -1;
}

Quiver Rank3Shape::to_quiver() const {
    ArrowList list;
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            if (a != b) {
                add_arrow(list, vertex_map[static_cast<std::size_t>(a)], vertex_map[static_cast<std::size_t>(b)],
                          arrows(a, b));
            }
        }
    }
    return Quiver(3, list);
}

Rank3Shape shape(const Quiver& q) {
    if (q.size() != 3) throw WrongRank(static_cast<std::size_t>(q.size()));
    if (!is_connected(q)) throw NotConnected();

    std::array<Index, 3> perm{0, 1, 2};
    std::optional<Rank3Shape> best;
    const bool acyclic = is_acyclic(q);
    do {
        const auto [a, b, c] = perm;
        Rank3Shape cand;
        cand.vertex_map = perm;
        if (acyclic) {
            // Topological orders only: no arrow may point backwards.
            if (q.multiplicity(b, a) > 0 || q.multiplicity(c, b) > 0 || q.multiplicity(c, a) > 0) continue;
            cand.kind = ShapeKind::Acyclic;
            cand.r = q.multiplicity(a, b);
            cand.s = q.multiplicity(b, c);
            cand.t = q.multiplicity(a, c);
        } else {
            cand.kind = ShapeKind::Cyclic;
            cand.r = q.multiplicity(a, b);
            cand.s = q.multiplicity(b, c);
            cand.t = q.multiplicity(c, a);
            if (cand.r == 0 || cand.s == 0 || cand.t == 0) continue;
        }
        if (!best || shape_order(cand) < shape_order(*best)) best = cand;
    } while (std::next_permutation(perm.begin(), perm.end()));

    if (!best) throw UnclassifiableShape("connected rank-3 quiver fits neither normal form");
    return *best;
}

namespace {

// Formula-level prediction of the arrows after mutating at role k, on
// concrete vertices.
std::pair<MutationCaseTag, ArrowList> predict(const Rank3Shape& sh, int k) {
    auto v = [&](int role) { return sh.vertex_map[static_cast<std::size_t>(role)]; };
    ArrowList out;
    if (sh.kind == ShapeKind::Acyclic) {
        Integer in(0), out_deg(0);
        for (int o = 0; o < 3; ++o) {
            in += sh.arrows(o, k);
            out_deg += sh.arrows(k, o);
        }
        if (in == 0 || out_deg == 0) {
            for (int a = 0; a < 3; ++a) {
                for (int b = 0; b < 3; ++b) {
                    if (a == b) continue;
                    const Integer m = sh.arrows(a, b);
                    if (a == k || b == k) {
                        add_arrow(out, v(b), v(a), m);
                    } else {
                        add_arrow(out, v(a), v(b), m);
                    }
                }
            }
            return {MutationCaseTag::I, out};
        }
        // k is role 1 with r, s > 0: 1 <- k (r), k <- 2 (s), 0 -> 2 gains r*s.
        add_arrow(out, v(1), v(0), sh.r);
        add_arrow(out, v(2), v(1), sh.s);
        add_arrow(out, v(0), v(2), sh.t + sh.r * sh.s);
        return {MutationCaseTag::II, out};
    }

    const int prev = (k + 2) % 3;
    const int next = (k + 1) % 3;
    const Integer in = sh.arrows(prev, k);
    const Integer out_deg = sh.arrows(k, next);
    const Integer opposite = sh.arrows(next, prev);
    const Integer through = in * out_deg - opposite;
    add_arrow(out, v(k), v(prev), in);
    add_arrow(out, v(next), v(k), out_deg);
    if (through > 0) {
        add_arrow(out, v(prev), v(next), through);
        return {MutationCaseTag::IV, out};
    }
    add_arrow(out, v(next), v(prev), -through);
    return {MutationCaseTag::III, out};
}

}  // namespace

MutationCase classify_mutation(const Rank3Shape& sh, int k) {
    if (k < 0 || k > 2) throw IndexOutOfRange(static_cast<std::size_t>(k), 3);
    auto [tag, arrows] = predict(sh, k);
    const Rank3Shape predicted = shape(Quiver(3, arrows));

    const Index concrete = sh.vertex_map[static_cast<std::size_t>(k)];
    const Rank3Shape direct = shape(matrix_to_quiver(mutate(quiver_to_matrix(sh.to_quiver()), concrete)));
    if (!(predicted == direct)) {
        throw InternalPredictionMismatch("case " + to_string(tag) + " prediction disagrees with matrix mutation");
    }
    return {tag, predicted};
}

bool zero_vertex_at(const Rank3Shape& sh, int k) {
    if (sh.kind != ShapeKind::Cyclic) throw NotCyclic();
    return classify_mutation(sh, k).tag == MutationCaseTag::III;
}

std::string to_string(MutationCaseTag tag) {
    switch (tag) {
        case MutationCaseTag::I: return "I";
        case MutationCaseTag::II: return "II";
        case MutationCaseTag::III: return "III";
        case MutationCaseTag::IV: return "IV";
    }
    return "?";
}

std::string to_string(ShapeKind kind) { return kind == ShapeKind::Acyclic ? "acyclic" : "cyclic"; }

std::vector<VertexReport> rank3_report(const Quiver& q, std::optional<std::span<const Index>> witness) {
    const Rank3Shape sh = shape(q);
    bool verified = sh.kind == ShapeKind::Acyclic;
    if (!verified && witness) {
        verified = is_acyclic(matrix_to_quiver(mutate_sequence(quiver_to_matrix(q), *witness)));
    }
    std::vector<VertexReport> out;
    for (Index v = 0; v < 3; ++v) {
        const int role = sh.role_of(v);
        VertexReport rep{v, classify_mutation(sh, role), std::nullopt, {}};
        if (sh.kind == ShapeKind::Cyclic) {
            rep.zero_vertex = rep.mutation.tag == MutationCaseTag::III;
            if (!verified) rep.caveats.emplace_back(kAcyclicClassUnverified);
        }
        out.push_back(std::move(rep));
    }
    return out;
}

}  // namespace cmut
