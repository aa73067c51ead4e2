#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cmut/explorer.hpp"
#include "cmut/quiver.hpp"
#include "cmut/rank3.hpp"
#include "cmut/seed.hpp"

// Serialization boundary. Every external format uses 1-based vertex indices;
// the library is 0-based. Integers are JSON numbers when they fit in 64 bits
// and decimal strings otherwise.
namespace cmut::formats {

using json = nlohmann::json;

json integer_to_json(const Integer& x);
Integer integer_from_json(const json& j);

// "n <count>" followed by "<i> <j> <m>" lines; '#' starts a comment.
Quiver parse_quiver_text(std::string_view text);
std::string quiver_to_text(const Quiver& q);

// {"n": int, "arrows": [[i, j, m], ...]}
json quiver_to_json(const Quiver& q);
Quiver quiver_from_json(const json& j);

// {"b": [[...], ...]}
json matrix_to_json(const ExchangeMatrix& b);
ExchangeMatrix matrix_from_json(const json& j);

// Quiver text, quiver JSON, or matrix JSON, recognized by content.
ExchangeMatrix parse_exchange_input(std::string_view text);

std::string quiver_to_dot(const Quiver& q);

// {"terms": [[[e1, ..., en], "coef"], ...]} in canonical term order.
json polynomial_to_json(const LaurentPolynomial& p);
LaurentPolynomial polynomial_from_json(const json& j, std::size_t nvars);

// {"matrix": {"b": ...}, "cluster": ["<rendering>", ...]}
json seed_to_json(const Seed& s);
Seed seed_from_json(const json& j);

// "2 1 3" -> {1, 0, 2}; throws ParseError or IndexOutOfRange for ranks < n.
std::vector<Index> parse_sequence(std::string_view text, Index n);
std::string format_sequence(std::span<const Index> seq);
json sequence_to_json(std::span<const Index> seq);

json graph_to_json(const EnumerationResult& r);
// Undirected edges labeled by direction; node labels are cluster renderings
// unless `numeric_labels`.
std::string graph_to_dot(const ExchangeGraph& g, bool numeric_labels = false);
// {"clusters": int, "variables": int, "complete": bool}
json stats_to_json(const EnumerationResult& r);

json shape_to_json(const Rank3Shape& sh);
json rank3_report_to_json(const std::vector<VertexReport>& report);
json mutation_class_to_json(const MutationClassResult& r);

// Pretty-printed (sorted keys, two-space indent) with a trailing newline.
std::string dump(const json& j);

}  // namespace cmut::formats
