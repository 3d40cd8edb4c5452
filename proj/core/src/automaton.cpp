#include "lga/automaton.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "lga/errors.hpp"

namespace lga {

std::string label_problem(std::string_view text) {
    if (text.empty()) return "empty label";
    for (unsigned char c : text) {
        if (std::isspace(c)) return "label contains whitespace";
        if (c == '#') return "label contains '#'";
    }
    if (text.front() == '<' && text != kWildcardLabel && text != kUnknownLabel)
        return "reserved label '" + std::string(text) + "' (only <?> and <UNK> are defined)";
    return {};
}

Automaton::Automaton() : final_flags_(1, false), out_(1) {}

Automaton::Automaton(StateId state_count, StateId initial, std::vector<StateId> finals,
                     std::vector<std::vector<Transition>> transitions)
    : initial_(initial), final_flags_(state_count, false), out_(std::move(transitions)) {
    if (state_count == 0) throw InvariantError("automaton needs at least one state");
    if (initial >= state_count) throw InvariantError("initial state out of range");
    if (out_.size() > state_count) throw InvariantError("transition table larger than state set");
    out_.resize(state_count);
    for (StateId f : finals) {
        if (f >= state_count) throw InvariantError("final state out of range");
        final_flags_[f] = true;
    }
    for (StateId s = 0; s < state_count; ++s) {
        if (final_flags_[s]) finals_.push_back(s);
        auto& list = out_[s];
        for (const auto& t : list)
            if (t.target >= state_count) throw InvariantError("transition target out of range");
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        transition_count_ += list.size();
    }
}

std::set<Label> Automaton::labels() const {
    std::set<Label> result;
    for (const auto& list : out_)
        for (const auto& t : list) result.insert(t.label);
    return result;
}

StateId AutomatonBuilder::add_state() {
    out_.emplace_back();
    finals_.push_back(false);
    return static_cast<StateId>(out_.size() - 1);
}

void AutomatonBuilder::ensure_state(StateId s) {
    while (out_.size() <= s) add_state();
}

void AutomatonBuilder::set_initial(StateId s) {
    ensure_state(s);
    initial_ = s;
}

void AutomatonBuilder::set_final(StateId s, bool final) {
    ensure_state(s);
    finals_[s] = final;
}

void AutomatonBuilder::add_transition(StateId src, Label label, StateId dst) {
    ensure_state(std::max(src, dst));
    out_[src].push_back({std::move(label), dst});
}

Automaton AutomatonBuilder::build() const {
    if (out_.empty()) return Automaton{};
    std::vector<StateId> finals;
    for (StateId s = 0; s < finals_.size(); ++s)
        if (finals_[s]) finals.push_back(s);
    return Automaton(static_cast<StateId>(out_.size()), initial_, std::move(finals), out_);
}

}  // namespace lga
