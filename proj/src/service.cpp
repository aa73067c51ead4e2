#include "cmut/service.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <random>

#include <httplib.h>
#include <spdlog/spdlog.h>

#include "cmut/formats.hpp"
#include "cmut/rank3.hpp"

namespace cmut::service {

namespace fmt_ = cmut::formats;

namespace {

std::int64_t now_ms() {
    using namespace std::chrono;
    return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

Reply error_reply(int status, const std::string& name, const std::string& detail) {
    return {status, json{{"error", name}, {"detail", detail}}, std::nullopt, "application/json"};
}

Reply unknown_session(const std::string& id) { return error_reply(404, "UnknownSession", "no session '" + id + "'"); }

// Structural violations of an otherwise well-formed payload.
bool is_unprocessable(const std::string& name) {
    return name == "NotSkewSymmetric" || name == "LoopPresent" || name == "TwoCyclePresent";
}

json parse_body(const std::string& body) {
    try {
        return json::parse(body);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON body: ") + e.what());
    }
}

ExchangeMatrix matrix_from_payload(const json& j) {
    if (!j.is_object()) throw ParseError("payload must be a JSON object");
    if (j.contains("matrix")) return fmt_::matrix_from_json(j.at("matrix"));
    if (j.contains("quiver")) {
        const auto& q = j.at("quiver");
        if (q.is_string()) return quiver_to_matrix(fmt_::parse_quiver_text(q.get<std::string>()));
        return quiver_to_matrix(fmt_::quiver_from_json(q));
    }
    if (j.contains("b")) return fmt_::matrix_from_json(j);
    return quiver_to_matrix(fmt_::quiver_from_json(j));
}

// Copy of the mutable fields taken under the session lock.
struct Snapshot {
    Seed root;
    std::vector<Index> history;
    Seed current;
};

Snapshot snapshot(Session& s) {
    std::lock_guard lock(s.mutex);
    return {s.root, s.history, s.current};
}

json variables_to_json(const Seed& s) {
    json out = json::array();
    for (std::size_t i = 0; i < s.cluster().size(); ++i) {
        const auto& x = s.cluster()[i];
        out.push_back({{"index", i + 1}, {"text", x.str()}, {"terms", fmt_::polynomial_to_json(x).at("terms")}});
    }
    return out;
}

json rank3_to_json(const Seed& root, const std::vector<Index>& history, const Seed& current) {
    const Quiver q = matrix_to_quiver(current.matrix());
    try {
        const Rank3Shape sh = shape(q);
        std::optional<std::vector<Index>> back;
        // Reversing the history leads back to the root, which certifies the
        // acyclic class when the root itself is acyclic.
        if (is_acyclic(matrix_to_quiver(root.matrix()))) back.emplace(history.rbegin(), history.rend());
        const auto report = back ? rank3_report(q, std::span<const Index>(*back)) : rank3_report(q);
        return {{"shape", fmt_::shape_to_json(sh)}, {"vertices", fmt_::rank3_report_to_json(report)}};
    } catch (const Error& e) {
        return {{"error", e.name()}, {"detail", e.what()}};
    }
}

json state_to_json(const std::string& id, const Snapshot& snap, std::int64_t created, std::int64_t updated) {
    json cluster = json::array();
    for (const auto& x : snap.current.cluster()) cluster.push_back(x.str());
    json out = {{"id", id},
                {"n", snap.current.rank()},
                {"history", fmt_::sequence_to_json(snap.history)},
                {"quiver", fmt_::quiver_to_json(matrix_to_quiver(snap.current.matrix()))},
                {"matrix", fmt_::matrix_to_json(snap.current.matrix())},
                {"cluster", std::move(cluster)},
                {"variables", variables_to_json(snap.current)},
                {"created_ms", created},
                {"updated_ms", updated}};
    out["rank3"] = snap.current.rank() == 3 ? rank3_to_json(snap.root, snap.history, snap.current) : json(nullptr);
    return out;
}

}  // namespace

json session_to_json(const Session& s) {
    return state_to_json(s.id, {s.root, s.history, s.current}, s.created_ms, s.updated_ms);
}

Api::Api(Config config) : config_(std::move(config)) {
    std::random_device rd;
    id_state_ = (std::uint64_t{rd()} << 32) ^ rd();
    if (config_.journal) {
        replay(*config_.journal);
        journal_out_ = std::make_unique<std::ofstream>(*config_.journal, std::ios::app);
        if (!*journal_out_) throw Error("IoError", "cannot open journal " + *config_.journal);
    }
}

Api::~Api() = default;

std::string Api::new_id() {
    std::lock_guard lock(id_mutex_);
    std::mt19937_64 gen(id_state_);
    for (;;) {
        id_state_ = gen();
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(id_state_));
        std::lock_guard sessions(sessions_mutex_);
        if (!sessions_.contains(buf)) return buf;
    }
}

std::shared_ptr<Session> Api::find(const std::string& id) const {
    std::lock_guard lock(sessions_mutex_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
}

std::size_t Api::session_count() const {
    std::lock_guard lock(sessions_mutex_);
    return sessions_.size();
}

void Api::journal(const json& record) {
    if (!journal_out_) return;
    std::lock_guard lock(journal_mutex_);
    *journal_out_ << record.dump() << '\n';
    journal_out_->flush();
}

std::shared_ptr<Session> Api::open_session(std::string id, const ExchangeMatrix& b, std::int64_t created_ms) {
    Seed root = initial_seed(b);
    auto s = std::make_shared<Session>(std::move(id), root, std::vector<Index>{}, root, created_ms, created_ms);
    std::lock_guard lock(sessions_mutex_);
    sessions_[s->id] = s;
    return s;
}

void Api::replay(const std::string& path) {
    std::ifstream in(path);
    if (!in) return;
    std::size_t lineno = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        if (line.empty()) continue;
        try {
            const json rec = json::parse(line);
            const auto op = rec.at("op").get<std::string>();
            const auto id = rec.at("id").get<std::string>();
            if (op == "create") {
                open_session(id, fmt_::matrix_from_json(rec.at("matrix")), rec.value("time_ms", now_ms()));
                continue;
            }
            auto s = find(id);
            if (!s) throw ParseError("unknown session");
            if (op == "mutate") {
                const auto k = rec.at("vertex").get<Index>() - 1;
                s->current = mutate_seed(s->current, k);
                s->history.push_back(k);
            } else if (op == "undo") {
                if (s->history.empty()) throw ParseError("undo on empty history");
                s->current = mutate_seed(s->current, s->history.back());
                s->history.pop_back();
            } else {
                throw ParseError("unknown op '" + op + "'");
            }
            s->updated_ms = rec.value("time_ms", s->updated_ms);
        } catch (const std::exception& e) {
            spdlog::warn("journal {} line {} skipped: {}", path, lineno, e.what());
        }
    }
    // Replaying history from the root must reproduce the current seed.
    std::lock_guard lock(sessions_mutex_);
    for (auto& [id, s] : sessions_) {
        if (!(apply_sequence(s->root, s->history) == s->current)) {
            spdlog::error("journal replay of session {} is inconsistent", id);
        }
    }
    spdlog::info("journal {}: restored {} sessions", path, sessions_.size());
}

Reply Api::create_session(const std::string& body) {
    try {
        const ExchangeMatrix b = matrix_from_payload(parse_body(body));
        const auto created = now_ms();
        auto s = open_session(new_id(), b, created);
        journal({{"op", "create"}, {"id", s->id}, {"matrix", fmt_::matrix_to_json(b)}, {"time_ms", created}});
        std::lock_guard lock(s->mutex);
        return {201, session_to_json(*s), std::nullopt, "application/json"};
    } catch (const Error& e) {
        return error_reply(is_unprocessable(e.name()) ? 422 : 400, e.name(), e.what());
    }
}

Reply Api::get_session(const std::string& id) {
    auto s = find(id);
    if (!s) return unknown_session(id);
    std::lock_guard lock(s->mutex);
    return {200, session_to_json(*s), std::nullopt, "application/json"};
}

Reply Api::mutate(const std::string& id, const std::string& body) {
    auto s = find(id);
    if (!s) return unknown_session(id);
    Index k = 0;
    try {
        const json j = parse_body(body);
        if (!j.is_object() || !j.contains("vertex") || !j.at("vertex").is_number_integer()) {
            throw ParseError("body must be {\"vertex\": <1-based index>}");
        }
        const auto v = j.at("vertex").get<std::int64_t>();
        const auto n = static_cast<std::int64_t>(s->root.rank());
        if (v < 1 || v > n) {
            throw IndexOutOfRange(v < 1 ? 0 : static_cast<std::size_t>(v - 1), static_cast<std::size_t>(n));
        }
        k = static_cast<Index>(v - 1);
    } catch (const Error& e) {
        return error_reply(400, e.name(), e.what());
    }

    std::lock_guard lock(s->mutex);
    const auto idx = static_cast<std::size_t>(k);
    std::string old_text = s->current.cluster()[idx].str();
    try {
        s->current = mutate_seed(s->current, k);
    } catch (const ExchangeDivisionFailed& e) {
        auto seq = s->history;
        seq.push_back(k);
        auto reply = error_reply(409, e.name(), e.what());
        reply.body["sequence"] = fmt_::sequence_to_json(seq);
        return reply;
    }
    s->history.push_back(k);
    s->updated_ms = now_ms();
    journal({{"op", "mutate"}, {"id", id}, {"vertex", k + 1}, {"time_ms", s->updated_ms}});
    const auto& x = s->current.cluster()[idx];
    json out = session_to_json(*s);
    out["changed"] = {{"index", k + 1},
                      {"old", std::move(old_text)},
                      {"new", x.str()},
                      {"terms", fmt_::polynomial_to_json(x).at("terms")}};
    return {200, std::move(out), std::nullopt, "application/json"};
}

Reply Api::undo(const std::string& id) {
    auto s = find(id);
    if (!s) return unknown_session(id);
    std::lock_guard lock(s->mutex);
    if (s->history.empty()) return error_reply(409, "EmptyHistory", "nothing to undo");
    const Index k = s->history.back();
    const auto idx = static_cast<std::size_t>(k);
    std::string old_text = s->current.cluster()[idx].str();
    // Mutation is an involution, so re-mutating undoes the last step.
    s->current = mutate_seed(s->current, k);
    s->history.pop_back();
    s->updated_ms = now_ms();
    journal({{"op", "undo"}, {"id", id}, {"time_ms", s->updated_ms}});
    json out = session_to_json(*s);
    out["changed"] = {{"index", k + 1}, {"old", std::move(old_text)}, {"new", s->current.cluster()[idx].str()}};
    return {200, std::move(out), std::nullopt, "application/json"};
}

Reply Api::neighborhood(const std::string& id, const std::optional<std::string>& depth_text) {
    auto s = find(id);
    if (!s) return unknown_session(id);
    std::size_t depth = 1;
    if (depth_text) {
        auto d = parse_integer(*depth_text);
        if (!d || *d < 0) return error_reply(400, "ParseError", "depth must be a non-negative integer");
        if (*d > config_.max_depth) {
            return error_reply(400, "DepthTooLarge",
                               "depth " + d->str() + " exceeds the maximum " + std::to_string(config_.max_depth));
        }
        depth = d->convert_to<std::size_t>();
    }
    const Snapshot snap = snapshot(*s);

    EnumerationLimits limits;
    limits.max_depth = depth;
    limits.max_seeds = config_.neighborhood_max_seeds;
    std::optional<EnumerationResult> found;
    try {
        found.emplace(enumerate(snap.current, limits));
    } catch (const ExchangeDivisionFailed& e) {
        return error_reply(409, e.name(), e.what());
    }
    const EnumerationResult& r = *found;
    json nodes = json::array();
    for (std::size_t nid = 0; nid < r.graph.size(); ++nid) {
        const auto& node = r.graph.node(nid);
        json cluster = json::array();
        for (const auto& x : node.seed.cluster()) cluster.push_back(x.str());
        nodes.push_back({{"id", nid},
                         {"cluster", std::move(cluster)},
                         {"quiver", fmt_::quiver_to_json(matrix_to_quiver(node.seed.matrix()))},
                         {"witness", fmt_::sequence_to_json(node.witness)},
                         {"depth", node.witness.size()}});
    }
    json edges = json::array();
    for (const auto& e : r.graph.edges()) edges.push_back({e.from, e.direction + 1, e.to});
    json out = {{"center", 0},
                {"depth", depth},
                {"complete", r.complete},
                {"nodes", std::move(nodes)},
                {"edges", std::move(edges)}};
    return {200, std::move(out), std::nullopt, "application/json"};
}

Reply Api::verify(const std::string& id) {
    auto s = find(id);
    if (!s) return unknown_session(id);
    const Snapshot snap = snapshot(*s);
    const Seed replayed = apply_sequence(snap.root, snap.history);
    return {200,
            json{{"id", id}, {"consistent", replayed == snap.current}, {"history", fmt_::sequence_to_json(snap.history)}},
            std::nullopt, "application/json"};
}

Reply Api::export_session(const std::string& id, const std::optional<std::string>& format) {
    auto s = find(id);
    if (!s) return unknown_session(id);
    const Snapshot snap = snapshot(*s);
    const std::string f = format.value_or("json");
    if (f == "dot") {
        return {200, nullptr, fmt_::quiver_to_dot(matrix_to_quiver(snap.current.matrix())), "text/vnd.graphviz"};
    }
    if (f != "json") return error_reply(400, "BadFormat", "format must be json or dot");
    return {200,
            json{{"id", id},
                 {"root", fmt_::seed_to_json(snap.root)},
                 {"history", fmt_::sequence_to_json(snap.history)},
                 {"current", fmt_::seed_to_json(snap.current)},
                 {"quiver", fmt_::quiver_to_json(matrix_to_quiver(snap.current.matrix()))}},
            std::nullopt, "application/json"};
}

namespace {

void send(httplib::Response& res, const Reply& reply) {
    res.status = reply.status;
    if (reply.text) {
        res.set_content(*reply.text, reply.content_type);
    } else {
        res.set_content(formats::dump(reply.body), reply.content_type);
    }
}

std::optional<std::string> param(const httplib::Request& req, const char* name) {
    if (!req.has_param(name)) return std::nullopt;
    return req.get_param_value(name);
}

}  // namespace

Server::Server(Config config, std::optional<std::string> static_dir)
    : api_(std::move(config)), http_(std::make_unique<httplib::Server>()) {
    auto& srv = *http_;
    // Guards every route: domain errors not mapped above become 500s with
    // their names rather than dropped connections.
    auto guarded = [](auto handler) {
        return [handler](const httplib::Request& req, httplib::Response& res) {
            try {
                send(res, handler(req));
            } catch (const Error& e) {
                send(res, error_reply(500, e.name(), e.what()));
            } catch (const std::exception& e) {
                send(res, error_reply(500, "InternalError", e.what()));
            }
        };
    };
    const std::string id = "/sessions/([A-Za-z0-9]+)";
    srv.Post("/sessions", guarded([this](const httplib::Request& req) { return api_.create_session(req.body); }));
    srv.Get(id, guarded([this](const httplib::Request& req) { return api_.get_session(req.matches[1]); }));
    srv.Post(id + "/mutate",
             guarded([this](const httplib::Request& req) { return api_.mutate(req.matches[1], req.body); }));
    srv.Post(id + "/undo", guarded([this](const httplib::Request& req) { return api_.undo(req.matches[1]); }));
    srv.Get(id + "/neighborhood", guarded([this](const httplib::Request& req) {
                return api_.neighborhood(req.matches[1], param(req, "depth"));
            }));
    srv.Get(id + "/verify", guarded([this](const httplib::Request& req) { return api_.verify(req.matches[1]); }));
    srv.Get(id + "/export", guarded([this](const httplib::Request& req) {
                return api_.export_session(req.matches[1], param(req, "format"));
            }));
    if (static_dir && !srv.set_mount_point("/", *static_dir)) {
        spdlog::warn("static directory {} not mounted", *static_dir);
    }
    srv.set_logger([](const httplib::Request& req, const httplib::Response& res) {
        spdlog::debug("{} {} -> {}", req.method, req.path, res.status);
    });
}

Server::~Server() = default;

int Server::bind(const std::string& host, int port) {
    if (port == 0) return http_->bind_to_any_port(host);
    return http_->bind_to_port(host, port) ? port : -1;
}

bool Server::listen() { return http_->listen_after_bind(); }

void Server::stop() { http_->stop(); }

}  // namespace cmut::service
