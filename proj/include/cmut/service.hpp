#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "cmut/explorer.hpp"
#include "cmut/seed.hpp"

namespace httplib {
class Server;
}

namespace cmut::service {

using json = nlohmann::json;

struct Config {
    std::size_t max_depth = 3;
    // Append-only JSON-lines log; replayed on startup when present.
    std::optional<std::string> journal;
    // Bounds each neighborhood request.
    std::size_t neighborhood_max_seeds = 20000;
};

struct Session {
    std::string id;
    Seed root;
    std::vector<Index> history;
    Seed current;
    std::int64_t created_ms = 0;
    std::int64_t updated_ms = 0;
    std::mutex mutex;  // serializes writers; readers copy a snapshot under it
};

// Transport-independent reply: JSON body unless `text` is set.
struct Reply {
    int status = 200;
    json body;
    std::optional<std::string> text;
    std::string content_type = "application/json";
};

// REST semantics without the socket layer. Thread-safe; requests on the same
// session serialize, different sessions run concurrently.
class Api {
public:
    explicit Api(Config config = {});
    ~Api();
    Api(const Api&) = delete;
    Api& operator=(const Api&) = delete;

    Reply create_session(const std::string& body);
    Reply get_session(const std::string& id);
    Reply mutate(const std::string& id, const std::string& body);
    Reply undo(const std::string& id);
    Reply neighborhood(const std::string& id, const std::optional<std::string>& depth);
    Reply verify(const std::string& id);
    Reply export_session(const std::string& id, const std::optional<std::string>& format);

    std::size_t session_count() const;

private:
    std::shared_ptr<Session> find(const std::string& id) const;
    std::string new_id();
    void journal(const json& record);
    void replay(const std::string& path);
    std::shared_ptr<Session> open_session(std::string id, const ExchangeMatrix& b, std::int64_t created_ms);

    Config config_;
    mutable std::mutex sessions_mutex_;
    std::unordered_map<std::string, std::shared_ptr<Session>> sessions_;
    std::mutex journal_mutex_;
    std::unique_ptr<std::ofstream> journal_out_;
    std::mutex id_mutex_;
    std::uint64_t id_state_;
};

// JSON view of a session: id, history, quiver, matrix, cluster renderings,
// structured variables, and the rank-3 report when n = 3.
json session_to_json(const Session& s);

// HTTP front end. Routes:
//   POST /sessions, GET /sessions/:id, POST /sessions/:id/mutate,
//   POST /sessions/:id/undo, GET /sessions/:id/neighborhood?depth=d,
//   GET /sessions/:id/verify, GET /sessions/:id/export?format=json|dot
// plus an optional static mount at "/".
class Server {
public:
    explicit Server(Config config = {}, std::optional<std::string> static_dir = std::nullopt);
    ~Server();

    // Returns the bound port (port 0 picks a free one), or -1.
    int bind(const std::string& host, int port);
    // Blocks until stop().
    bool listen();
    void stop();
    Api& api() { return api_; }

private:
    Api api_;
    std::unique_ptr<httplib::Server> http_;
};

}  // namespace cmut::service
