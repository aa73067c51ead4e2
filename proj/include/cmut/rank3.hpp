#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cmut/quiver.hpp"

namespace cmut {

enum class ShapeKind { Acyclic, Cyclic };

// Rank-3 connected quiver in normal form. Roles are 0, 1, 2.
//   Acyclic: r arrows 0->1, s arrows 1->2, t arrows 0->2. Role 0 is the source
//            and role 2 the sink; r, s > 0 exactly when some vertex is neither
//            source nor sink (the Q_rst form).
//   Cyclic:  r arrows 0->1, s arrows 1->2, t arrows 2->0, all positive.
// `vertex_map[role]` is the concrete (0-based) vertex playing that role.
struct Rank3Shape {
    ShapeKind kind = ShapeKind::Acyclic;
    Integer r, s, t;
    std::array<Index, 3> vertex_map{0, 1, 2};

    // Shapes on vertices 0, 1, 2 with the identity role assignment.
    static Rank3Shape acyclic(Integer r, Integer s, Integer t);
    static Rank3Shape cyclic(Integer r, Integer s, Integer t);

    // Arrow count from role `from` to role `to`.
    Integer arrows(int from, int to) const;
    // Concrete role of vertex v, or -1.
    int role_of(Index v) const;
    Quiver to_quiver() const;

    friend bool operator==(const Rank3Shape&, const Rank3Shape&) = default;
};

// Recognizes a 3-vertex connected quiver. Acyclic shapes take roles from a
// topological order (lexicographically smallest (r, s, t) when two orders
// exist); cyclic shapes take the rotation with lexicographically smallest
// (r, s, t). Throws WrongRank, NotConnected, UnclassifiableShape.
Rank3Shape shape(const Quiver& q);

enum class MutationCaseTag { I, II, III, IV };

struct MutationCase {
    MutationCaseTag tag;
    Rank3Shape predicted;  // normalized shape after mutating at the role vertex
};

// Case table for mutation at role `k`:
//   I   acyclic, k a source or sink: arrows at k reverse.
//   II  acyclic, k the middle vertex: cyclic with t + rs arrows 0->2 closing the cycle.
//   III cyclic, in*out <= opposite at k: acyclic with opposite - in*out arrows.
//   IV  cyclic, in*out > opposite at k: cyclic with in*out - opposite arrows.
// The prediction is cross-checked against direct matrix mutation; a mismatch
// throws InternalPredictionMismatch.
MutationCase classify_mutation(const Rank3Shape& sh, int k);

// True iff mutation at role k of a cyclic shape yields an acyclic quiver.
// Throws NotCyclic.
bool zero_vertex_at(const Rank3Shape& sh, int k);

std::string to_string(MutationCaseTag tag);
std::string to_string(ShapeKind kind);

inline constexpr const char* kAcyclicClassUnverified = "acyclic_class_unverified";

struct VertexReport {
    Index vertex;  // 0-based concrete vertex
    MutationCase mutation;
    std::optional<bool> zero_vertex;  // only for cyclic shapes
    std::vector<std::string> caveats;
};

// Per-vertex report for a rank-3 quiver. Cyclic shapes carry the caveat
// `acyclic_class_unverified` unless `witness` (0-based directions) mutates the
// quiver into an acyclic one.
std::vector<VertexReport> rank3_report(const Quiver& q, std::optional<std::span<const Index>> witness = std::nullopt);

}  // namespace cmut
