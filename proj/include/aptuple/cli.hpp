#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace aptuple::cli {

// Runs one CLI invocation. args excludes the program name.
// Returns 0 on success, 2 on usage errors, 1 on runtime errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Accepts "10000000", "1e7", "2.5e6"; the value must be a non-negative integer.
uint64_t parse_count(std::string_view text);

// APTUPLE_CACHE, else $XDG_CACHE_HOME/aptuple, else $HOME/.cache/aptuple,
// else ./.aptuple-cache
std::filesystem::path default_cache_dir();

// Smallest power of two >= n.
uint64_t next_power_of_two(uint64_t n);

}  // namespace aptuple::cli
