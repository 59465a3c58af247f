#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "lpaqb/scalar.hpp"

namespace lpaqb {

// Parsed command-line configuration. One seed drives every randomized
// suite, so identical (input, seed, flags) reproduce byte-identical output.
struct RunConfig {
    enum class Format { Text, Json };

    std::string command;
    std::optional<std::string> input_path;
    Field field = Field::rationals();
    std::uint64_t seed = 1;
    std::optional<std::size_t> depth;  // partition depth; default max(6, |V|+2)
    int count = -1;                    // probe/suite count; -1 picks the default
    int graphs = 500;                  // sweep width for file-less commands
    int max_vertices = 6;              // sweep graph size bound
    Format format = Format::Text;
};

/// Dispatches classify | hs | fe | decide | proj | check-equiv |
/// oracle-acyclic | properness | partition | selftest. Returns the process
/// exit status: 0 verdict-true/agreement, 1 verdict-false, 2 input error.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace lpaqb
