#include "lga/apply.hpp"

#include <unordered_map>

#include "lga/algorithms.hpp"
#include "lga/errors.hpp"

namespace lga {

namespace {

std::optional<std::uint64_t> path_count_or_unbounded(const Automaton& a) {
    return count_paths(a).path_count;
}

/// Breadth-first pair construction shared by both modes. `advance` returns the
/// matcher successor, or nothing when the text transition must be dropped.
template <typename Advance>
ApplyResult product(const Automaton& text, const FailureAutomaton& fa, Mode mode, Advance advance,
                    bool keep_finals = true) {
    ApplyStats stats;
    stats.mode = mode;
    stats.states_in = text.state_count();
    stats.transitions_in = text.transition_count();
    stats.paths_in = path_count_or_unbounded(text);

    std::unordered_map<std::uint64_t, StateId> registry;
    std::vector<std::pair<StateId, StateId>> pairs;
    auto key = [](StateId t, StateId m) { return (static_cast<std::uint64_t>(t) << 32) | m; };
    auto intern = [&](StateId t, StateId m) {
        auto [it, inserted] = registry.emplace(key(t, m), static_cast<StateId>(pairs.size()));
        if (inserted) pairs.emplace_back(t, m);
        return it->second;
    };

    std::vector<std::vector<Transition>> out;
    std::vector<StateId> finals;
    std::size_t emitted = 0;
    intern(text.initial(), fa.initial());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto [u1, u3] = pairs[i];
        out.emplace_back();
        if (keep_finals && text.is_final(u1)) finals.push_back(static_cast<StateId>(i));
        for (const auto& t : text.transitions(u1)) {
            ++stats.transitions_examined;
            auto v3 = advance(u3, t.label);
            if (!v3) continue;
            const StateId v4 = intern(t.target, *v3);
            out[i].push_back({t.label, v4});
            ++emitted;
        }
    }
    stats.pairs = pairs.size();
    stats.dropped_transitions = stats.transitions_examined - emitted;

    Automaton raw(static_cast<StateId>(pairs.size()), 0, std::move(finals), std::move(out));
    ApplyResult result{trim(raw), stats};
    result.stats.states_out = result.automaton.state_count();
    result.stats.transitions_out = result.automaton.transition_count();
    result.stats.paths_out = path_count_or_unbounded(result.automaton);
    return result;
}

}  // namespace

std::string_view to_string(Mode mode) noexcept {
    return mode == Mode::negative ? "negative" : "positive";
}

ApplyResult apply_negative(const Automaton& text, const FailureAutomaton& fa) {
    if (fa.is_match(fa.initial())) {
        // The empty word is forbidden, so every path, including the empty
        // one, contains a forbidden factor.
        return product(
            text, fa, Mode::negative, [](StateId, std::string_view) { return std::optional<StateId>{}; }, false);
    }
    return product(text, fa, Mode::negative, [&](StateId u3, std::string_view label) -> std::optional<StateId> {
        const StateId v3 = failure_lookup(fa, u3, label).next;
        if (fa.is_match(v3)) return std::nullopt;
        return v3;
    });
}

bool ft(const FailureAutomaton& fa, StateId state) {
    for (const auto& [label, target] : fa.delta(state))
        if (fa.is_raw_final(target)) return false;
    return true;
}

std::optional<StateId> positive_step(const FailureAutomaton& fa, StateId state, std::string_view label) {
    StateId v = state;
    while (v != fa.initial() && !fa.target(v, label) && ft(fa, v)) v = fa.fail(v);
    if (auto t = fa.target(v, label)) return *t;
    if (v == fa.initial()) return v;
    return std::nullopt;
}

ApplyResult apply_positive(const Automaton& text, const FailureAutomaton& fa) {
    std::vector<bool> unconstrained(fa.state_count());
    for (StateId s = 0; s < fa.state_count(); ++s) unconstrained[s] = ft(fa, s);
    return product(text, fa, Mode::positive, [&](StateId u3, std::string_view label) -> std::optional<StateId> {
        StateId v = u3;
        while (v != fa.initial() && !fa.target(v, label) && unconstrained[v]) v = fa.fail(v);
        if (auto t = fa.target(v, label)) return *t;
        if (v == fa.initial()) return v;
        return std::nullopt;
    });
}

bool reference_scan_positive(const FailureAutomaton& fa, std::span<const Label> w) {
    StateId s = fa.initial();
    for (const auto& label : w) {
        auto next = positive_step(fa, s, label);
        if (!next) return false;
        s = *next;
    }
    return true;
}

ApplyResult apply_grammar(const Automaton& text, const FailureAutomaton& fa, Mode mode) {
    return mode == Mode::negative ? apply_negative(text, fa) : apply_positive(text, fa);
}

ApplyResult disambiguate(const Automaton& text, const Automaton& grammar, Mode mode, bool minimize_result) {
    const auto compiled = compile_grammar(grammar);
    const Automaton input = trim(text);
    ApplyResult result = apply_grammar(input, compiled.matcher, mode);
    result.stats.states_in = text.state_count();
    result.stats.transitions_in = text.transition_count();
    if (minimize_result) {
        Automaton& a = result.automaton;
        a = minimize(is_deterministic(a) ? a : determinize(a));
        result.stats.states_out = a.state_count();
        result.stats.transitions_out = a.transition_count();
        result.stats.paths_out = path_count_or_unbounded(a);
    }
    return result;
}

}  // namespace lga
