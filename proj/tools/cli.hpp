#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace rktree::cli {

// Everything a command produces. `text` is what main() prints; `payload`
// carries the same content structured (populated on success, null on error)
// so tests can assert text/json agreement without re-parsing the text.
struct CommandResult {
    int exit_code = 0;  // 0 ok, 1 domain error, 2 usage error
    std::string text;
    nlohmann::json payload;
};

// Dispatches argv (program name excluded) to the subcommands. Never throws:
// usage problems render CLI11's message with exit code 2, domain errors
// render the underlying message with exit code 1.
CommandResult run(const std::vector<std::string>& args);

}  // namespace rktree::cli
