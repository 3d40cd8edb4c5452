#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "lga/automaton.hpp"

namespace lga {

/// Deterministic partial automaton with a failure function.
///
/// `fail(u)` is the state reached by the longest proper suffix of the words
/// leading to `u` that is also a prefix in the grammar. Missing transitions are
/// resolved by following failure links, with an implicit self-loop on every
/// label at the initial state, so the machine recognizes A*L over an open
/// alphabet A.
///
/// Two final sets are kept: the raw finals produced by construction, and the
/// match closure, in which a state also matches when any state on its failure
/// chain is a raw final.
class FailureAutomaton {
public:
    using Edge = std::pair<Label, StateId>;

    /// A lone initial state; recognizes nothing.
    FailureAutomaton();

    /// Validates every invariant (ids in range, labels unique per state, all
    /// states reachable, fail(initial) == initial, failure depth strictly
    /// decreasing) and computes the match closure. Throws InvariantError.
    FailureAutomaton(StateId initial, std::vector<std::vector<Edge>> delta,
                     std::vector<StateId> fail, std::vector<bool> finals_raw,
                     bool wildcard = false);

    StateId state_count() const noexcept { return static_cast<StateId>(delta_.size()); }
    StateId initial() const noexcept { return initial_; }
    std::span<const Edge> delta(StateId s) const { return delta_.at(s); }
    StateId fail(StateId s) const { return fail_.at(s); }
    bool is_raw_final(StateId s) const { return finals_raw_.at(s); }
    bool is_match(StateId s) const { return finals_closed_.at(s); }
    /// Breadth-first distance from the initial state.
    std::size_t depth(StateId s) const { return depth_.at(s); }
    bool wildcard() const noexcept { return wildcard_; }
    std::size_t transition_count() const noexcept { return transition_count_; }
    std::set<Label> labels() const;

    /// Explicit transition only, ignoring the wildcard.
    std::optional<StateId> exact_target(StateId s, std::string_view label) const;

    /// Explicit transition, then the `<?>` transition when the wildcard
    /// extension is on.
    std::optional<StateId> target(StateId s, std::string_view label) const;

    friend bool operator==(const FailureAutomaton&, const FailureAutomaton&) = default;

private:
    StateId initial_ = 0;
    std::vector<std::vector<Edge>> delta_;
    std::vector<StateId> fail_;
    std::vector<bool> finals_raw_;
    std::vector<bool> finals_closed_;
    std::vector<std::size_t> depth_;
    std::size_t transition_count_ = 0;
    bool wildcard_ = false;
};

/// Construction counters.
struct BuildTrace {
    std::size_t enqueues = 0;
    std::size_t copies = 0;
    std::size_t failure_steps = 0;
    std::size_t transitions_examined = 0;
};

struct MatcherBuild {
    FailureAutomaton matcher;
    BuildTrace trace;
};

struct BuildOptions {
    /// Resolve `<?>` transitions as "any label" during lookups.
    bool wildcard = false;
};

/// Breadth-first construction of the failure automaton for A*L(g2).
///
/// g2 must be acyclic, deterministic and trim (ConstraintError otherwise).
/// Original states keep their ids; duplicated states are appended in creation
/// order. A state reached with a failure value that none of its existing
/// copies carries is duplicated along with its finality and its outgoing
/// transitions.
MatcherBuild build_factor_matcher(const Automaton& g2, BuildOptions options = {});

/// trim, acyclicity check, determinize, minimize, then build_factor_matcher.
/// The grammar automaton actually used is returned in `grammar`.
struct CompiledGrammar {
    Automaton grammar;
    FailureAutomaton matcher;
    BuildTrace trace;
};
CompiledGrammar compile_grammar(const Automaton& grammar, BuildOptions options = {});

struct Lookup {
    StateId next = 0;
    std::size_t failure_steps = 0;
};

/// Follows failure links from `state` until a transition on `label` exists or
/// the initial state is reached. Falls back to the initial state.
Lookup failure_lookup(const FailureAutomaton& fa, StateId state, std::string_view label);

bool is_match_state(const FailureAutomaton& fa, StateId state);

struct Recognition {
    bool accepted = false;
    /// Visited states: the initial state, then per label each failure stop
    /// followed by the state reached (1 + advances + failure_steps entries).
    std::vector<StateId> trace;
    std::size_t advances = 0;
    std::size_t failure_steps = 0;
};

/// True iff some suffix of w belongs to the grammar language.
Recognition recognize_ends_with(const FailureAutomaton& fa, std::span<const Label> w);

struct Scan {
    /// End positions (0-based, end-exclusive) of every factor occurrence.
    std::vector<std::size_t> ends;
    std::size_t advances = 0;
    std::size_t failure_steps = 0;

    std::size_t moves() const noexcept { return advances + failure_steps; }
};

Scan scan(const FailureAutomaton& fa, std::span<const Label> w);
std::vector<std::size_t> scan_factors(const FailureAutomaton& fa, std::span<const Label> w);

/// Materializes every default transition over `alphabet`: the result is the
/// complete DFA with the matcher's state ids and the match closure as finals.
/// Throws ConstraintError if `alphabet` misses a label used by `fa`.
Automaton expand_to_dfa(const FailureAutomaton& fa, const std::set<Label>& alphabet);

}  // namespace lga
