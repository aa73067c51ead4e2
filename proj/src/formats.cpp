#include "cmut/formats.hpp"

#include <sstream>

namespace cmut::formats {

json integer_to_json(const Integer& x) {
    if (fits_int64(x)) return x.convert_to<std::int64_t>();
    return x.str();
}

Integer integer_from_json(const json& j) {
    if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
    if (j.is_string()) {
        if (auto v = parse_integer(j.get<std::string>())) return *v;
    }
    throw ParseError("expected an integer, got " + j.dump());
}

namespace {

Index checked_vertex(const Integer& one_based, Index n) {
    if (one_based < 1 || one_based > n) {
        throw IndexOutOfRange(one_based < 1 ? 0 : one_based.convert_to<std::size_t>() - 1,
                              static_cast<std::size_t>(n));
    }
    return one_based.convert_to<Index>() - 1;
}

Index checked_rank(const Integer& n) {
    if (n < 1 || n > 4096) throw ParseError("vertex count must be in 1..4096");
    return n.convert_to<Index>();
}

}  // namespace

Quiver parse_quiver_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::optional<Index> n;
    std::vector<std::tuple<Index, Index, Integer>> arrows;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::vector<std::string> tok;
        for (std::string t; fields >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        auto where = " (line " + std::to_string(lineno) + ")";
        if (!n) {
            if (tok.size() != 2 || tok[0] != "n") throw ParseError("expected 'n <count>'" + where);
            auto count = parse_integer(tok[1]);
            if (!count) throw ParseError("bad vertex count" + where);
            n = checked_rank(*count);
            continue;
        }
        if (tok.size() != 3) throw ParseError("expected '<i> <j> <m>'" + where);
        auto i = parse_integer(tok[0]);
        auto j = parse_integer(tok[1]);
        auto m = parse_integer(tok[2]);
        if (!i || !j || !m) throw ParseError("non-integer field" + where);
        arrows.emplace_back(checked_vertex(*i, *n), checked_vertex(*j, *n), *m);
    }
    if (!n) throw ParseError("missing 'n <count>' header");
    return Quiver(*n, arrows);
}

std::string quiver_to_text(const Quiver& q) {
    std::string out = "n " + std::to_string(q.size()) + "\n";
    for (const auto& [ij, m] : q.arrows()) {
        out += std::to_string(ij.first + 1) + " " + std::to_string(ij.second + 1) + " " + m.str() + "\n";
    }
    return out;
}

json quiver_to_json(const Quiver& q) {
    json arrows = json::array();
    for (const auto& [ij, m] : q.arrows()) {
        arrows.push_back({ij.first + 1, ij.second + 1, integer_to_json(m)});
    }
    return {{"n", q.size()}, {"arrows", std::move(arrows)}};
}

Quiver quiver_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n")) throw ParseError("quiver JSON needs \"n\"");
    const Index n = checked_rank(integer_from_json(j.at("n")));
    std::vector<std::tuple<Index, Index, Integer>> arrows;
    if (j.contains("arrows")) {
        if (!j.at("arrows").is_array()) throw ParseError("\"arrows\" must be an array");
        for (const auto& a : j.at("arrows")) {
            if (!a.is_array() || a.size() != 3) throw ParseError("arrow must be [i, j, m]");
            arrows.emplace_back(checked_vertex(integer_from_json(a[0]), n), checked_vertex(integer_from_json(a[1]), n),
                                integer_from_json(a[2]));
        }
    }
    return Quiver(n, arrows);
}

json matrix_to_json(const ExchangeMatrix& b) {
    json rows = json::array();
    for (Index i = 0; i < b.size(); ++i) {
        json row = json::array();
        for (Index k = 0; k < b.size(); ++k) row.push_back(integer_to_json(b(i, k)));
        rows.push_back(std::move(row));
    }
    return {{"b", std::move(rows)}};
}

ExchangeMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("b") || !j.at("b").is_array()) {
        throw ParseError("matrix JSON needs \"b\": [[...], ...]");
    }
    const auto& rows = j.at("b");
    const auto n = static_cast<Index>(rows.size());
    if (n < 1) throw ParseError("matrix JSON has no rows");
    DenseMatrix<Integer> b(n, n);
    for (Index i = 0; i < n; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Index>(row.size()) != n) throw ParseError("matrix JSON is not square");
        for (Index k = 0; k < n; ++k) b(i, k) = integer_from_json(row[static_cast<std::size_t>(k)]);
    }
    return ExchangeMatrix(std::move(b));
}

ExchangeMatrix parse_exchange_input(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::exception& e) {
            throw ParseError(std::string("invalid JSON: ") + e.what());
        }
        if (j.contains("b")) return matrix_from_json(j);
        return quiver_to_matrix(quiver_from_json(j));
    }
    return quiver_to_matrix(parse_quiver_text(text));
}

std::string quiver_to_dot(const Quiver& q) {
    std::string out = "digraph quiver {\n";
    for (Index v = 0; v < q.size(); ++v) out += "  " + std::to_string(v + 1) + ";\n";
    for (const auto& [ij, m] : q.arrows()) {
        out += "  " + std::to_string(ij.first + 1) + " -> " + std::to_string(ij.second + 1);
        if (m > 1) out += " [label=" + m.str() + "]";
        out += ";\n";
    }
    out += "}\n";
    return out;
}

json polynomial_to_json(const LaurentPolynomial& p) {
    json terms = json::array();
    for (const auto& t : p.terms()) {
        json exps = json::array();
        for (auto e : t.monomial) exps.push_back(e);
        terms.push_back({std::move(exps), t.coefficient.str()});
    }
    return {{"terms", std::move(terms)}};
}

LaurentPolynomial polynomial_from_json(const json& j, std::size_t nvars) {
    if (!j.is_object() || !j.contains("terms") || !j.at("terms").is_array()) {
        throw ParseError("polynomial JSON needs \"terms\"");
    }
    std::vector<LaurentPolynomial::Term> terms;
    for (const auto& t : j.at("terms")) {
        if (!t.is_array() || t.size() != 2 || !t[0].is_array() || t[0].size() != nvars) {
            throw ParseError("term must be [[e1, ..., en], \"coef\"]");
        }
        Monomial m(nvars);
        for (std::size_t k = 0; k < nvars; ++k) m[k] = t[0][k].get<std::int32_t>();
        terms.push_back({m, integer_from_json(t[1])});
    }
    return LaurentPolynomial::from_terms(nvars, std::move(terms));
}

json seed_to_json(const Seed& s) {
    json cluster = json::array();
    for (const auto& x : s.cluster()) cluster.push_back(x.str());
    return {{"matrix", matrix_to_json(s.matrix())}, {"cluster", std::move(cluster)}};
}

Seed seed_from_json(const json& j) {
    if (!j.is_object() || !j.contains("matrix") || !j.contains("cluster") || !j.at("cluster").is_array()) {
        throw ParseError("seed JSON needs \"matrix\" and \"cluster\"");
    }
    ExchangeMatrix b = matrix_from_json(j.at("matrix"));
    const auto n = static_cast<std::size_t>(b.size());
    std::vector<LaurentPolynomial> cluster;
    for (const auto& x : j.at("cluster")) {
        if (!x.is_string()) throw ParseError("cluster entries must be strings");
        cluster.push_back(parse_laurent(x.get<std::string>(), n));
    }
    return Seed(std::move(cluster), std::move(b));
}

std::vector<Index> parse_sequence(std::string_view text, Index n) {
    std::istringstream in{std::string(text)};
    std::vector<Index> out;
    for (std::string tok; in >> tok;) {
        auto k = parse_integer(tok);
        if (!k) throw ParseError("bad mutation sequence token '" + tok + "'");
        out.push_back(checked_vertex(*k, n));
    }
    return out;
}

std::string format_sequence(std::span<const Index> seq) {
    std::string out;
    for (Index k : seq) {
        if (!out.empty()) out += ' ';
        out += std::to_string(k + 1);
    }
    return out;
}

json sequence_to_json(std::span<const Index> seq) {
    json out = json::array();
    for (Index k : seq) out.push_back(k + 1);
    return out;
}

json graph_to_json(const EnumerationResult& r) {
    const auto& g = r.graph;
    json nodes = json::array();
    for (std::size_t id = 0; id < g.size(); ++id) {
        const auto& node = g.node(id);
        nodes.push_back({{"id", id}, {"seed", seed_to_json(node.seed)}, {"witness", sequence_to_json(node.witness)}});
    }
    json edges = json::array();
    for (const auto& e : g.edges()) edges.push_back({e.from, e.direction + 1, e.to});
    json spill = json::array();
    for (const auto& s : r.spill) {
        spill.push_back({{"parent", s.parent}, {"direction", s.direction + 1}, {"reason", s.reason}});
    }
    return {{"root", 0},
            {"complete", r.complete},
            {"nodes", std::move(nodes)},
            {"edges", std::move(edges)},
            {"spill", std::move(spill)},
            {"diagnostics", r.diagnostics}};
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

std::string graph_to_dot(const ExchangeGraph& g, bool numeric_labels) {
    std::string out = "graph exchange {\n";
    for (std::size_t id = 0; id < g.size(); ++id) {
        std::string label;
        if (numeric_labels) {
            label = std::to_string(id);
        } else {
            for (const auto& x : g.node(id).seed.cluster()) {
                if (!label.empty()) label += ", ";
                label += x.str();
            }
        }
        out += "  n" + std::to_string(id) + " [label=\"" + dot_escape(label) + "\"];\n";
    }
    for (const auto& e : g.edges()) {
        if (e.from > e.to) continue;
        out += "  n" + std::to_string(e.from) + " -- n" + std::to_string(e.to) + " [label=" +
               std::to_string(e.direction + 1) + "];\n";
    }
    out += "}\n";
    return out;
}

json stats_to_json(const EnumerationResult& r) {
    return {{"clusters", r.cluster_count}, {"variables", r.cluster_variable_count}, {"complete", r.complete}};
}

json shape_to_json(const Rank3Shape& sh) {
    json roles = json::array();
    for (Index v : sh.vertex_map) roles.push_back(v + 1);
    return {{"kind", to_string(sh.kind)},
            {"r", integer_to_json(sh.r)},
            {"s", integer_to_json(sh.s)},
            {"t", integer_to_json(sh.t)},
            {"vertices", std::move(roles)}};
}

json rank3_report_to_json(const std::vector<VertexReport>& report) {
    json out = json::array();
    for (const auto& rep : report) {
        out.push_back({{"vertex", rep.vertex + 1},
                       {"case", to_string(rep.mutation.tag)},
                       {"predicted", shape_to_json(rep.mutation.predicted)},
                       {"zero_vertex", rep.zero_vertex ? json(*rep.zero_vertex) : json(nullptr)},
                       {"caveat", rep.caveats}});
    }
    return out;
}

json mutation_class_to_json(const MutationClassResult& r) {
    json classes = json::array();
    for (const auto& c : r.classes) {
        classes.push_back({{"key", c.key.bytes},
                           {"quiver", quiver_to_json(matrix_to_quiver(c.representative))},
                           {"witness", sequence_to_json(c.witness)}});
    }
    return {{"complete", r.complete}, {"count", r.classes.size()}, {"classes", std::move(classes)}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace cmut::formats
