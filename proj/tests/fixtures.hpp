#pragma once

#include <string>

// Path into the repository's fixtures/ directory, injected by CMake.
inline std::string fixture(const std::string& name) {
    return std::string(RKTREE_FIXTURES_DIR) + "/" + name;
}
