#pragma once

#include <cstddef>
#include <ostream>
#include <string>

namespace loewner::cli {

enum class Command
{
    reduce,
    analyze,
    systole,
    revolution,
    sweep,
};

enum class Format
{
    json,
    csv,
};

struct RunConfig
{
    Command command = Command::analyze;
    std::string input;
    std::size_t rows = 256;
    std::size_t cols = 256;
    std::string output;  //!< empty: write to the output stream
    Format format = Format::json;
    bool refine = false;  //!< also run at 2N x 2M and report differences
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitViolation = 2;

//! Execute one command. Diagnostics go to `err`.
int run(RunConfig const& config, std::ostream& out, std::ostream& err);

Command parse_command(std::string const& name);
//! "N" or "N,M".
void parse_grid(std::string const& text, RunConfig& config);

}  // namespace loewner::cli
