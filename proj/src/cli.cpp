#include "cmut/cli.hpp"

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "cmut/formats.hpp"
#include "cmut/service.hpp"

namespace cmut::cli {

namespace fm = cmut::formats;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : Error {
    explicit IoError(const std::string& detail) : Error("IoError", detail) {}
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << content)) throw IoError("cannot write " + path);
}

// Whitespace-separated rows of integers, one row per line.
ExchangeMatrix parse_matrix_text(const std::string& text) {
    std::vector<std::vector<Integer>> rows;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::vector<Integer> row;
        for (std::string tok; fields >> tok;) {
            auto v = parse_integer(tok);
            if (!v) throw ParseError("bad matrix entry '" + tok + "'");
            row.push_back(*v);
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    const auto n = static_cast<Index>(rows.size());
    if (n == 0) throw ParseError("matrix has no rows");
    DenseMatrix<Integer> b(n, n);
    for (Index i = 0; i < n; ++i) {
        if (static_cast<Index>(rows[i].size()) != n) throw ParseError("matrix is not square");
        for (Index j = 0; j < n; ++j) b(i, j) = rows[i][j];
    }
    return ExchangeMatrix(std::move(b));
}

ExchangeMatrix load(const InputSpec& in) {
    const std::string text = read_file(in.path);
    if (in.kind == InputKind::Quiver) return fm::parse_exchange_input(text);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return fm::parse_exchange_input(text);
    return parse_matrix_text(text);
}

std::vector<Index> sequence_or_usage(const std::string& text, Index n) {
    // Malformed tokens are usage errors; well-formed indices outside 1..n are
    // domain errors (IndexOutOfRange).
    std::istringstream in(text);
    for (std::string tok; in >> tok;) {
        if (!parse_integer(tok)) throw UsageError("bad mutation sequence token '" + tok + "'");
    }
    return fm::parse_sequence(text, n);
}

fm::json seed_output(const Seed& s) {
    auto j = fm::seed_to_json(s);
    j["quiver"] = fm::quiver_to_json(matrix_to_quiver(s.matrix()));
    return j;
}

int run_mutate(const MutateCommand& cmd, std::ostream& out) {
    const ExchangeMatrix b = load(cmd.input);
    const auto seq = sequence_or_usage(cmd.sequence, b.size());
    Seed s = initial_seed(b);
    if (!cmd.trace) {
        out << fm::dump(seed_output(apply_sequence(s, seq)));
        return kOk;
    }
    fm::json steps = fm::json::array();
    for (std::size_t i = 0; i < seq.size(); ++i) {
        s = apply_sequence(s, std::span<const Index>(&seq[i], 1));
        steps.push_back({{"step", i + 1}, {"vertex", seq[i] + 1}, {"seed", seed_output(s)}});
    }
    out << fm::dump(steps);
    return kOk;
}

int run_enumerate(const EnumerateCommand& cmd, std::ostream& out) {
    const ExchangeMatrix b = load(cmd.input);
    const auto r = enumerate(initial_seed(b), cmd.limits);
    if (cmd.out) write_file(*cmd.out, fm::dump(fm::graph_to_json(r)));
    if (cmd.dot) write_file(*cmd.dot, fm::graph_to_dot(r.graph));
    out << fm::dump(fm::stats_to_json(r));
    return kOk;
}

int run_classify(const ClassifyRank3Command& cmd, std::ostream& out) {
    const Quiver q = matrix_to_quiver(load(cmd.input));
    const Rank3Shape sh = shape(q);
    std::vector<VertexReport> report;
    if (cmd.witness) {
        const auto w = sequence_or_usage(*cmd.witness, q.size());
        report = rank3_report(q, std::span<const Index>(w));
    } else {
        report = rank3_report(q);
    }
    out << fm::dump({{"shape", fm::shape_to_json(sh)}, {"vertices", fm::rank3_report_to_json(report)}});
    return kOk;
}

int run_mutation_class(const MutationClassCommand& cmd, std::ostream& out) {
    const Quiver q = matrix_to_quiver(load(cmd.input));
    out << fm::dump(fm::mutation_class_to_json(mutation_class_quivers(q, cmd.limits)));
    return kOk;
}

service::Server* active_server = nullptr;

extern "C" void on_signal(int) {
    if (active_server) active_server->stop();
}

int run_serve(const ServeCommand& cmd, std::ostream& out) {
    service::Config config;
    config.max_depth = cmd.max_depth;
    config.journal = cmd.journal;
    service::Server server(config, cmd.static_dir);
    const int port = server.bind(cmd.host, cmd.port);
    if (port < 0) throw IoError("cannot bind " + cmd.host + ":" + std::to_string(cmd.port));
    out << "listening on http://" << cmd.host << ":" << port << std::endl;
    active_server = &server;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    server.listen();
    active_server = nullptr;
    return kOk;
}

}  // namespace

std::pair<std::string, int> parse_bind(const std::string& text) {
    const auto colon = text.rfind(':');
    if (colon == std::string::npos || colon == 0) throw ParseError("bind address must be host:port");
    const auto port = parse_integer(text.substr(colon + 1));
    if (!port || *port < 0 || *port > 65535) throw ParseError("bad port in '" + text + "'");
    return {text.substr(0, colon), port->convert_to<int>()};
}

void configure_logging() {
    static std::once_flag once;
    std::call_once(once, [] {
        auto logger = spdlog::stderr_color_mt("cluster-mutant");
        spdlog::set_default_logger(logger);
    });
    spdlog::set_level(spdlog::level::warn);
    if (const char* level = std::getenv("CLUSTER_MUTANT_LOG")) {
        spdlog::set_level(spdlog::level::from_str(level));
    }
}

int run(const Command& cmd, std::ostream& out, std::ostream& err) {
    try {
        return std::visit(
            [&out](const auto& c) -> int {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, MutateCommand>) return run_mutate(c, out);
                if constexpr (std::is_same_v<T, EnumerateCommand>) return run_enumerate(c, out);
                if constexpr (std::is_same_v<T, ClassifyRank3Command>) return run_classify(c, out);
                if constexpr (std::is_same_v<T, MutationClassCommand>) return run_mutation_class(c, out);
                if constexpr (std::is_same_v<T, ServeCommand>) return run_serve(c, out);
            },
            cmd);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsageError;
    } catch (const Error& e) {
        err << e.name() << ": " << e.what() << "\n";
        return kDomainError;
    }
}

namespace {

std::string integer_validator(const std::string& text) {
    auto v = parse_integer(text);
    return v && *v >= 0 ? std::string() : "expected a non-negative integer, got '" + text + "'";
}

}  // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    configure_logging();
    CLI::App app{"Exact cluster mutation: seeds, exchange graphs, rank-3 analysis", "cluster-mutant"};
    app.require_subcommand(1);

    std::string quiver_path, matrix_path;
    auto add_input = [&](CLI::App* sub) {
        auto* q = sub->add_option("-q,--quiver", quiver_path, "quiver file (text or JSON)");
        auto* m = sub->add_option("-m,--matrix", matrix_path, "exchange matrix file (JSON or rows)");
        q->excludes(m);
        m->excludes(q);
        sub->callback([sub, q, m] {
            if (q->count() + m->count() != 1) throw CLI::ValidationError(sub->get_name(), "one of -q or -m is required");
        });
    };
    std::string max_seeds = "100000", max_entry = "4294967296", max_den = std::to_string(std::int64_t{1} << 20);
    unsigned threads = 1;
    auto add_limits = [&](CLI::App* sub) {
        sub->add_option("--max-seeds", max_seeds, "seed (or class) limit")->check(CLI::Validator(integer_validator, "N"));
        sub->add_option("--max-entry", max_entry, "bound on |b_ij|")->check(CLI::Validator(integer_validator, "N"));
    };

    auto* mutate = app.add_subcommand("mutate", "apply a mutation sequence to the initial seed");
    add_input(mutate);
    std::string sequence;
    bool trace = false;
    mutate->add_option("-s,--sequence", sequence, "1-based directions, e.g. \"1 2 1\"");
    mutate->add_flag("--trace", trace, "print the seed after every step");

    auto* enumerate_cmd = app.add_subcommand("enumerate", "breadth-first exchange graph enumeration");
    add_input(enumerate_cmd);
    add_limits(enumerate_cmd);
    std::string out_path, dot_path;
    enumerate_cmd->add_option("--out", out_path, "write the graph JSON here");
    enumerate_cmd->add_option("--dot", dot_path, "write the graph DOT here");
    enumerate_cmd->add_option("--max-denominator-degree", max_den, "bound on denominator degree")
        ->check(CLI::Validator(integer_validator, "N"));
    enumerate_cmd->add_option("--threads", threads, "expansion threads")->check(CLI::Range(1u, 256u));

    auto* classify = app.add_subcommand("classify-rank3", "rank-3 shape and per-vertex mutation cases");
    add_input(classify);
    std::string witness;
    classify->add_option("--witness", witness, "sequence mutating the quiver to an acyclic one");

    auto* mclass = app.add_subcommand("mutation-class", "quiver mutation class up to isomorphism");
    add_input(mclass);
    add_limits(mclass);

    auto* serve = app.add_subcommand("serve", "HTTP service");
    std::string bind = "127.0.0.1:8080", static_dir, journal;
    std::size_t max_depth = 3;
    serve->add_option("--bind", bind, "host:port");
    serve->add_option("--static", static_dir, "directory served at /");
    serve->add_option("--journal", journal, "JSON-lines session journal");
    serve->add_option("--max-depth", max_depth, "neighborhood depth limit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsageError;
    }

    const InputSpec input{matrix_path.empty() ? InputKind::Quiver : InputKind::Matrix,
                          matrix_path.empty() ? quiver_path : matrix_path};
    EnumerationLimits limits;
    limits.max_seeds = Integer(max_seeds).convert_to<std::size_t>();
    limits.max_entry = Integer(max_entry);
    limits.max_denominator_degree = Integer(max_den).convert_to<std::int64_t>();
    limits.threads = threads;

    Command cmd;
    if (mutate->parsed()) {
        cmd = MutateCommand{input, sequence, trace};
    } else if (enumerate_cmd->parsed()) {
        EnumerateCommand e{input, limits, std::nullopt, std::nullopt};
        if (!out_path.empty()) e.out = out_path;
        if (!dot_path.empty()) e.dot = dot_path;
        cmd = e;
    } else if (classify->parsed()) {
        ClassifyRank3Command c{input, std::nullopt};
        if (!witness.empty()) c.witness = witness;
        cmd = c;
    } else if (mclass->parsed()) {
        cmd = MutationClassCommand{input, limits};
    } else {
        ServeCommand s;
        try {
            std::tie(s.host, s.port) = parse_bind(bind);
        } catch (const ParseError& e) {
            err << "usage error: " << e.what() << "\n";
            return kUsageError;
        }
        if (!static_dir.empty()) s.static_dir = static_dir;
        if (!journal.empty()) s.journal = journal;
        s.max_depth = max_depth;
        cmd = s;
    }
    return run(cmd, out, err);
}

}  // namespace cmut::cli
