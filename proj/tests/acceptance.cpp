// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any fails. All comparisons are exact; runtime bounds are
// wall-clock seconds.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "cmut/cli.hpp"
#include "cmut/explorer.hpp"
#include "cmut/formats.hpp"
#include "cmut/rank3.hpp"
#include "oracles.hpp"

using namespace cmut;
using oracle::SmallMatrix;

namespace {

struct Check {
    bool ok = true;
    std::string detail;
    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
};

int failures = 0;

void criterion(const std::string& name, double max_seconds, const std::function<void(Check&)>& body) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.ok && secs >= max_seconds) c.fail("runtime over " + std::to_string(max_seconds) + " s");
    if (!c.ok) ++failures;
    std::printf("%s %s (%.3f s, limit %.0f s)%s%s\n", c.ok ? "PASS" : "FAIL", name.c_str(), secs, max_seconds,
                c.ok ? "" : ": ", c.ok ? "" : c.detail.c_str());
    std::fflush(stdout);
}

void mutation_laws(Check& c) {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> size(1, 8);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = size(rng);
        const SmallMatrix small = oracle::random_skew(rng, n, 5);
        const ExchangeMatrix b = oracle::from_small(small);
        for (int k = 0; k < n; ++k) {
            bool odd = false;
            const auto expected = oracle::mutate_halved(small, k, &odd);
            const ExchangeMatrix m = mutate(b, k);
            if (odd) c.fail("odd halved numerator");
            if (!oracle::is_skew(oracle::to_small(m))) c.fail("mutation not skew-symmetric");
            if (oracle::to_small(m) != expected) c.fail("mutation disagrees with the halved formula");
            if (!(mutate(m, k) == b)) c.fail("mutation not an involution");
        }
    }
}

Integer arrows(const ExchangeMatrix& b, Index from, Index to) { return b(from, to) > 0 ? b(from, to) : Integer(0); }

void rank3_table(Check& c) {
    for (int r = 1; r <= 4; ++r) {
        for (int s = 1; s <= 4; ++s) {
            for (int t = 0; t <= 4; ++t) {
                const Integer R(r), S(s), T(t), RS(r * s);

                // Acyclic: r 1->2, s 2->3, t 1->3; mutate at vertex 2.
                const auto acyc = Rank3Shape::acyclic(R, S, T);
                const ExchangeMatrix direct = mutate(quiver_to_matrix(acyc.to_quiver()), 1);
                if (arrows(direct, 1, 0) != R || arrows(direct, 2, 1) != S || arrows(direct, 0, 2) != T + RS) {
                    c.fail("acyclic direct mutation counts r=" + std::to_string(r) + " s=" + std::to_string(s) +
                           " t=" + std::to_string(t));
                }
                const auto ii = classify_mutation(acyc, 1);
                if (ii.tag != MutationCaseTag::II || ii.predicted.kind != ShapeKind::Cyclic) c.fail("acyclic tag");
                if (!(quiver_to_matrix(ii.predicted.to_quiver()) == direct)) c.fail("acyclic prediction");

                // Cyclic: r 1->2, s 2->3, t 3->1 (t = 0 is the path); mutate at vertex 2.
                const auto cyc = t > 0 ? Rank3Shape::cyclic(R, S, T) : acyc;
                const ExchangeMatrix after = mutate(quiver_to_matrix(cyc.to_quiver()), 1);
                const bool stays_cyclic = RS > T;
                const bool counts_ok = arrows(after, 1, 0) == R && arrows(after, 2, 1) == S &&
                                       (stays_cyclic ? arrows(after, 0, 2) == RS - T && arrows(after, 2, 0) == 0
                                                     : arrows(after, 2, 0) == T - RS && arrows(after, 0, 2) == 0);
                if (!counts_ok) {
                    c.fail("cyclic direct mutation counts r=" + std::to_string(r) + " s=" + std::to_string(s) +
                           " t=" + std::to_string(t));
                }
                if (is_acyclic(matrix_to_quiver(after)) == stays_cyclic) c.fail("cyclic result kind");
                const auto pred = classify_mutation(cyc, 1);
                if (!(quiver_to_matrix(pred.predicted.to_quiver()) == after)) c.fail("cyclic prediction");
                if (t > 0) {
                    const auto expected_tag = stays_cyclic ? MutationCaseTag::IV : MutationCaseTag::III;
                    if (pred.tag != expected_tag) c.fail("cyclic tag");
                    if (pred.predicted.kind != (stays_cyclic ? ShapeKind::Cyclic : ShapeKind::Acyclic)) {
                        c.fail("cyclic predicted kind");
                    }
                }
            }
        }
    }
}

const SmallMatrix kA2{{0, 1}, {-1, 0}};
const SmallMatrix kA3{{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}};
const SmallMatrix kA4{{0, 1, 0, 0}, {-1, 0, 1, 0}, {0, -1, 0, 1}, {0, 0, -1, 0}};
const SmallMatrix kD4{{0, 1, 0, 0}, {-1, 0, 1, 1}, {0, -1, 0, 0}, {0, -1, 0, 0}};
const SmallMatrix kMarkov{{0, 2, -2}, {-2, 0, 2}, {2, -2, 0}};

void finite_types(Check& c) {
    struct Case {
        std::string name;
        const SmallMatrix* b;
        Integer clusters, variables;
    };
    // Type A_n: Catalan(n + 1) clusters, n(n + 3)/2 variables.
    // Type D_n: (3n - 2)/n * binomial(2n - 2, n - 1) clusters, n^2 variables.
    const std::vector<Case> cases{
        {"A2", &kA2, oracle::catalan(3), Integer(2 * 5 / 2)},
        {"A3", &kA3, oracle::catalan(4), Integer(3 * 6 / 2)},
        {"A4", &kA4, oracle::catalan(5), Integer(4 * 7 / 2)},
        {"D4", &kD4, Integer(10) * oracle::binomial(6, 3) / 4, Integer(16)},
    };
    const std::vector<std::pair<std::size_t, std::size_t>> literal{{5, 5}, {14, 9}, {42, 14}, {50, 16}};
    std::mt19937_64 rng(7);
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& cs = cases[i];
        if (cs.clusters != literal[i].first || cs.variables != literal[i].second) c.fail(cs.name + " formula");
        const auto r = enumerate(initial_seed(oracle::from_small(*cs.b)), {});
        if (!r.complete || !r.spill.empty() || !r.diagnostics.empty()) c.fail(cs.name + " incomplete");
        if (r.cluster_count != literal[i].first) c.fail(cs.name + " cluster count");
        if (r.cluster_variable_count != literal[i].second) c.fail(cs.name + " variable count");
        const auto numeric = oracle::numeric_enumerate(*cs.b, oracle::random_point(rng, cs.b->size()), 10000);
        if (!numeric.complete || numeric.clusters != literal[i].first || numeric.variables != literal[i].second) {
            c.fail(cs.name + " numeric oracle");
        }
        for (std::size_t id = 0; id < r.graph.size(); ++id) {
            const auto& node = r.graph.node(id);
            std::set<std::size_t> distinct;
            for (const auto& nb : node.neighbors) {
                if (!nb || *nb == id) c.fail(cs.name + " missing neighbor");
                if (nb) distinct.insert(*nb);
            }
            if (distinct.size() != cs.b->size()) c.fail(cs.name + " neighbors not distinct");
        }
    }
}

void exchange_consistency(Check& c) {
    const auto r = enumerate(initial_seed(oracle::from_small(kA3)), {});
    if (!r.complete) c.fail("A3 incomplete");
    for (const auto& e : r.graph.edges()) {
        const Seed& from = r.graph.node(e.from).seed;
        const auto k = static_cast<std::size_t>(e.direction);
        const Seed next = mutate_seed(from, e.direction);
        const auto bin = exchange_binomial(from, e.direction);
        if (!(mul(from.cluster()[k], next.cluster()[k]) == add(bin.plus, bin.minus))) c.fail("exchange relation");
        // Nodes are identified up to relabeling.
        if (seed_key(next) != r.graph.node(e.to).key) c.fail("edge does not match mutation");
        if (!(mutate_seed(next, e.direction) == from)) c.fail("double mutation");
    }
}

void markov(Check& c) {
    const auto cls = mutation_class_quivers(matrix_to_quiver(oracle::from_small(kMarkov)), {});
    if (!cls.complete) c.fail("mutation class incomplete");
    if (cls.classes.size() != 1) c.fail("class count " + std::to_string(cls.classes.size()));
    EnumerationLimits limits;
    limits.max_seeds = 1000;
    const auto r = enumerate(initial_seed(oracle::from_small(kMarkov)), limits);
    if (r.complete) c.fail("enumeration reported complete");
    if (r.stop != StopReason::MaxSeeds) c.fail("enumeration did not stop on max_seeds");
    if (r.cluster_count != 1000) c.fail("cluster count " + std::to_string(r.cluster_count));
}

void locality(Check& c) {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> size(3, 8);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = size(rng);
        const ExchangeMatrix b = oracle::from_small(oracle::random_skew(rng, n, 5));
        for (Index i = 0; i < n; ++i) {
            for (Index j = i + 1; j < n; ++j) {
                for (Index k = j + 1; k < n; ++k) {
                    const std::vector<Index> subset{i, j, k};
                    for (Index pos = 0; pos < 3; ++pos) {
                        const Index v = subset[static_cast<std::size_t>(pos)];
                        if (!(restrict_to(mutate(b, v), subset) == mutate(restrict_to(b, subset), pos))) {
                            c.fail("restriction does not commute with mutation");
                        }
                    }
                }
            }
        }
    }
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void golden_walk(Check& c) {
    const std::string dir = CMUT_TEST_DIR;
    const std::string input = dir + "/data/a2.qvr";
    const std::vector<int> walk{1, 2, 1, 2, 1};
    std::mt19937_64 rng(5);
    const auto point = oracle::random_point(rng, 2);
    oracle::NumericSeed numeric{point, kA2};
    std::string prefix;
    for (std::size_t step = 0; step < walk.size(); ++step) {
        prefix += (step ? " " : "") + std::to_string(walk[step]);
        const std::vector<std::string> args{"cluster-mutant", "mutate", "-q", input, "-s", prefix};
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
        const std::string golden = slurp(dir + "/golden/a2_walk_" + std::to_string(step + 1) + ".json");
        if (code != 0) c.fail("exit code " + std::to_string(code));
        if (out.str() != golden) c.fail("step " + std::to_string(step + 1) + " differs from golden");

        // The golden renderings evaluate to the rational exchange iteration.
        numeric = oracle::numeric_mutate(numeric, walk[step] - 1);
        const auto j = formats::json::parse(golden);
        for (std::size_t i = 0; i < 2; ++i) {
            const auto x = parse_laurent(j.at("cluster")[i].get<std::string>(), 2);
            if (oracle::evaluate(x, point) != numeric.x[i]) c.fail("golden rendering disagrees with the oracle");
        }
        if (oracle::to_small(formats::matrix_from_json(j.at("matrix"))) != numeric.b) c.fail("golden matrix");
    }
}

}  // namespace

int main() {
    criterion("matrix mutation laws: 1000 random matrices, n <= 8, entries in [-5, 5]", 1, mutation_laws);
    criterion("rank-3 case table: r, s in 1..4, t in 0..4", 1, rank3_table);
    criterion("finite-type enumeration: A2 5/5, A3 14/9, A4 42/14, D4 50/16", 60, finite_types);
    criterion("A3 exchange relation and double mutation on every edge", 60, exchange_consistency);
    criterion("Markov quiver: one mutation class, enumeration stops at 1000 seeds", 10, markov);
    criterion("locality: 200 random matrices, all triples", 60, locality);
    criterion("golden CLI output for the A2 walk 1 2 1 2 1", 60, golden_walk);
    std::printf("%s: %d failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
