#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "lga/automaton.hpp"
#include "lga/factor_matcher.hpp"

namespace lga {

enum class Mode { negative, positive };

std::string_view to_string(Mode mode) noexcept;

struct ApplyStats {
    Mode mode = Mode::negative;
    std::size_t states_in = 0;
    std::size_t states_out = 0;
    std::size_t transitions_in = 0;
    std::size_t transitions_out = 0;
    /// Empty when the automaton has a cycle on an accepting path.
    std::optional<std::uint64_t> paths_in;
    std::optional<std::uint64_t> paths_out;
    /// Text transitions examined minus transitions emitted by the product.
    std::size_t dropped_transitions = 0;
    std::size_t transitions_examined = 0;
    /// Distinct (text state, matcher state) pairs discovered.
    std::size_t pairs = 0;
};

struct ApplyResult {
    Automaton automaton;
    ApplyStats stats;
};

/// Product of the text with the matcher, keeping only text transitions whose
/// matcher successor is not a match state. The result is trimmed and accepts
/// L(text) minus every word containing a factor in the grammar language.
/// Nondeterministic text is accepted; each transition keeps its own target.
ApplyResult apply_negative(const Automaton& text, const FailureAutomaton& fa);

/// True iff no explicit transition of `state` leads to a raw final, i.e. no
/// obligatory continuation is pending at `state`.
bool ft(const FailureAutomaton& fa, StateId state);

/// Matcher advance used for positive grammars. Failure links are only followed
/// through unconstrained states. Returns nothing when the label is forbidden:
/// backoff stopped at a constrained non-initial state with no transition on it.
std::optional<StateId> positive_step(const FailureAutomaton& fa, StateId state,
                                     std::string_view label);

/// Product that keeps a text transition iff `positive_step` accepts its label.
ApplyResult apply_positive(const Automaton& text, const FailureAutomaton& fa);

/// Runs `positive_step` along w; true iff no position is rejected.
bool reference_scan_positive(const FailureAutomaton& fa, std::span<const Label> w);

ApplyResult apply_grammar(const Automaton& text, const FailureAutomaton& fa, Mode mode);

/// Full pipeline: compile the grammar, apply it, trim, and optionally
/// determinize+minimize. Throws ConstraintError for a cyclic grammar.
ApplyResult disambiguate(const Automaton& text, const Automaton& grammar, Mode mode,
                         bool minimize_result = true);

}  // namespace lga
