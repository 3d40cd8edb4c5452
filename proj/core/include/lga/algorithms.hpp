#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "lga/automaton.hpp"

namespace lga {

struct Classification {
    bool acyclic = true;
    bool deterministic = true;

    friend bool operator==(const Classification&, const Classification&) = default;
};

Classification classify(const Automaton& a);
bool is_acyclic(const Automaton& a);
bool is_deterministic(const Automaton& a);

/// Renumbers the states reachable from the initial state in breadth-first
/// discovery order (transitions visited in label order). Unreachable states
/// are dropped.
Automaton canonicalize(const Automaton& a);

/// Keeps exactly the accessible and co-accessible states. When no final state
/// is reachable the result is the one-state empty-language automaton.
Automaton trim(const Automaton& a);

/// Subset construction; states are discovered breadth-first with labels in
/// byte order. Expects a trim input.
Automaton determinize(const Automaton& a);

/// Minimal partial DFA for L(a) (no explicit sink), canonically numbered.
/// Throws ConstraintError when `a` is not deterministic.
Automaton minimize(const Automaton& a);

struct PathReport {
    /// Number of initial-to-final paths; empty when a cycle lies on an
    /// accepting path.
    std::optional<std::uint64_t> path_count;
    /// Accepted label sequences in lexicographic order, at most the limit.
    std::vector<Word> sample_paths;

    bool unbounded() const noexcept { return !path_count.has_value(); }
};

/// Exact path count by topological dynamic programming. Throws
/// ConstraintError if the count does not fit in 64 bits.
PathReport count_paths(const Automaton& a, std::size_t sample_limit = 0);

/// Number of edges on the longest accepting path; empty for the empty
/// language. Throws ConstraintError when an accepting path contains a cycle.
std::optional<std::size_t> longest_accepting_path(const Automaton& a);

/// True iff both automata accept the same words of length <= max_len.
bool languages_equal_bounded(const Automaton& a, const Automaton& b, std::size_t max_len);

/// Structural identity up to renaming of states. Both inputs must be
/// deterministic and trim (ConstraintError otherwise).
bool isomorphic(const Automaton& a, const Automaton& b);

}  // namespace lga
