#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "primearcs/random.hpp"
#include "primearcs/sequences.hpp"

namespace primearcs::cli {

enum class Subcommand { primes, seq, coverage, sievelab, hits, fracparts, ergodic };
enum class OutFormat { json, csv };

/// Everything a run depends on. Identical configs give byte-identical output.
struct RunConfig {
    Subcommand subcommand = Subcommand::primes;
    std::optional<std::string> c;  // raw "num/den", validated by run()
    std::uint64_t bound = 0;
    std::optional<std::string> x;  // rational text for hits and fracparts
    std::uint64_t range_lo = 0;    // X of (X, Y] for coverage and sievelab
    std::uint64_t range_hi = 0;    // Y
    std::optional<std::string> x_named;
    std::optional<std::string> eta;
    double ergodic_x = 0.0;
    double ergodic_y = 0.0;
    std::uint64_t seed = kDefaultSeed;
    std::optional<std::uint64_t> trials;
    bool exact = false;
    bool list = false;
    bool with_arcs = false;
    std::string method = "greedy";
    std::vector<std::string> epsilons;
    std::optional<std::string> sparse;  // "geometric" or "psi:<name>"
    std::optional<std::filesystem::path> seq_path;
    std::optional<std::filesystem::path> out_path;
    std::optional<OutFormat> format;
};

/// Executes one run. On success the report goes to out_path (or `out`) and
/// 0 is returned; on failure a single "error: ..." line goes to `err`,
/// nothing is written, and the result is nonzero.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig and runs it.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace primearcs::cli
