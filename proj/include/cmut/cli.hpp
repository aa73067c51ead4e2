#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cmut/explorer.hpp"

namespace cmut::cli {

enum class InputKind { Quiver, Matrix };

struct InputSpec {
    InputKind kind = InputKind::Quiver;
    std::string path;
};

struct MutateCommand {
    InputSpec input;
    std::string sequence;
    bool trace = false;  // one seed per step instead of the final seed only
};

struct EnumerateCommand {
    InputSpec input;
    EnumerationLimits limits;
    std::optional<std::string> out;
    std::optional<std::string> dot;
};

struct ClassifyRank3Command {
    InputSpec input;
    std::optional<std::string> witness;
};

struct MutationClassCommand {
    InputSpec input;
    EnumerationLimits limits;
};

struct ServeCommand {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::optional<std::string> static_dir;
    std::optional<std::string> journal;
    std::size_t max_depth = 3;
};

using Command = std::variant<MutateCommand, EnumerateCommand, ClassifyRank3Command, MutationClassCommand, ServeCommand>;

enum ExitCode : int { kOk = 0, kDomainError = 1, kUsageError = 2 };

// Executes a parsed command. Domain errors are reported on `err` as
// "<ErrorName>: <detail>".
int run(const Command& cmd, std::ostream& out, std::ostream& err);

// Parses argv (CLI11) and runs the command.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// "host:port"; throws ParseError.
std::pair<std::string, int> parse_bind(const std::string& text);

// Reads CLUSTER_MUTANT_LOG (trace, debug, info, warn, error, off).
void configure_logging();

}  // namespace cmut::cli
