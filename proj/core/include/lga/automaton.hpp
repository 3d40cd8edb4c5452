#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lga {

using StateId = std::uint32_t;

/// Labels are compared as exact byte strings.
using Label = std::string;

/// A label sequence: one path through an automaton.
using Word = std::vector<Label>;

inline constexpr std::string_view kWildcardLabel = "<?>";
inline constexpr std::string_view kUnknownLabel = "<UNK>";

/// Empty string when `text` is a usable label, otherwise the reason it is not.
/// Labels are non-empty, contain no whitespace and no `#`; a leading `<` is
/// reserved for `<?>` and `<UNK>`.
std::string label_problem(std::string_view text);

inline bool is_valid_label(std::string_view text) { return label_problem(text).empty(); }

struct Transition {
    Label label;
    StateId target = 0;

    friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// Labeled directed multigraph with one initial state and a set of finals.
///
/// Values are immutable once built. Per-state transition lists are kept sorted
/// by (label, target) and are duplicate-free, so two automata with the same
/// numbering compare equal iff they are structurally identical.
class Automaton {
public:
    /// One state, no finals: the empty language.
    Automaton();

    /// Validates ids, sorts every transition list and drops exact duplicates.
    /// Throws InvariantError on out-of-range ids or an empty state set.
    Automaton(StateId state_count, StateId initial, std::vector<StateId> finals,
              std::vector<std::vector<Transition>> transitions);

    StateId state_count() const noexcept { return static_cast<StateId>(out_.size()); }
    StateId initial() const noexcept { return initial_; }
    bool is_final(StateId s) const { return final_flags_.at(s); }
    const std::vector<StateId>& finals() const noexcept { return finals_; }
    std::span<const Transition> transitions(StateId s) const { return out_.at(s); }
    std::size_t transition_count() const noexcept { return transition_count_; }

    /// Distinct labels in byte order.
    std::set<Label> labels() const;

    friend bool operator==(const Automaton&, const Automaton&) = default;

private:
    StateId initial_ = 0;
    std::vector<bool> final_flags_;
    std::vector<StateId> finals_;
    std::vector<std::vector<Transition>> out_;
    std::size_t transition_count_ = 0;
};

/// Incremental construction helper; `build()` produces the immutable value.
class AutomatonBuilder {
public:
    StateId add_state();
    /// Grows the state set so that `s` is a valid id.
    void ensure_state(StateId s);
    void set_initial(StateId s);
    void set_final(StateId s, bool final = true);
    void add_transition(StateId src, Label label, StateId dst);

    StateId state_count() const noexcept { return static_cast<StateId>(out_.size()); }

    Automaton build() const;

private:
    StateId initial_ = 0;
    std::vector<bool> finals_;
    std::vector<std::vector<Transition>> out_;
};

}  // namespace lga
