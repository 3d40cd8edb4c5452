#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lga/random_instance.hpp"

namespace lga::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsage = 1,
    kParseError = 2,
    kConstraintViolation = 3,
    kInternalFailure = 4,
};

/// Runs the `lga` command line. `args[0]` is the program name. Payloads go to
/// `out` (or the `-o` file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

struct BenchReport {
    RandomSpec spec;
    std::size_t text_states = 0;
    std::size_t text_transitions = 0;
    std::uint64_t text_paths = 0;
    std::size_t grammar_states_raw = 0;
    std::size_t grammar_states = 0;  // after determinize + minimize
    std::size_t grammar_transitions = 0;
    std::size_t matcher_states = 0;
    std::size_t matcher_transitions = 0;
    std::size_t matcher_copies = 0;
    double growth_ratio = 0.0;
    std::size_t applied_states = 0;
    std::size_t applied_transitions = 0;
    std::uint64_t applied_paths = 0;
    std::size_t dropped_transitions = 0;
    std::size_t minimized_states = 0;
    std::size_t minimized_transitions = 0;
    double generate_ms = 0.0;
    double compile_ms = 0.0;
    double apply_ms = 0.0;
    double minimize_ms = 0.0;
    std::size_t samples_requested = 0;
    std::size_t survivors_checked = 0;
    std::size_t survivors_failed = 0;
    std::size_t removed_checked = 0;
    std::size_t removed_failed = 0;

    bool spot_checks_passed() const noexcept {
        return survivors_failed == 0 && removed_failed == 0 && survivors_checked == samples_requested &&
               removed_checked == samples_requested;
    }
};

/// Generates the random instance, compiles the grammar, applies it, minimizes
/// the result and spot-checks `samples` surviving and removed text paths
/// against the brute-force factor oracle.
BenchReport run_bench(const RandomSpec& spec, std::size_t samples);

}  // namespace lga::cli
