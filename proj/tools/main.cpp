#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    const rktree::cli::CommandResult result = rktree::cli::run(args);
    if (result.exit_code == 0)
        std::cout << result.text;
    else
        std::cerr << result.text;
    return result.exit_code;
}
