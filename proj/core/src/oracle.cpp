#include "lga/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "lga/algorithms.hpp"
#include "lga/errors.hpp"

namespace lga::oracle {

namespace {

std::vector<StateId> step(const Automaton& a, const std::vector<StateId>& current, const Label& label) {
    std::vector<StateId> next;
    for (StateId s : current)
        for (const auto& t : a.transitions(s))
            if (t.label == label) next.push_back(t.target);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    return next;
}

bool any_final(const Automaton& a, const std::vector<StateId>& states) {
    return std::any_of(states.begin(), states.end(), [&](StateId s) { return a.is_final(s); });
}

void collect(const Automaton& a, StateId s, Word& prefix, std::size_t max_len, std::set<Word>& out) {
    if (a.is_final(s)) out.insert(prefix);
    if (prefix.size() == max_len) return;
    for (const auto& t : a.transitions(s)) {
        prefix.push_back(t.label);
        collect(a, t.target, prefix, max_len, out);
        prefix.pop_back();
    }
}

}  // namespace

bool accepts(const Automaton& a, const Word& w) {
    std::vector<StateId> current{a.initial()};
    for (const auto& label : w) {
        current = step(a, current, label);
        if (current.empty()) return false;
    }
    return any_final(a, current);
}

std::vector<Word> enumerate_words(const Automaton& a, std::size_t max_len) {
    const Automaton t = trim(a);
    std::set<Word> words;
    if (!t.finals().empty()) {
        Word prefix;
        collect(t, t.initial(), prefix, max_len, words);
    }
    return {words.begin(), words.end()};
}

std::vector<Word> enumerate_language(const Automaton& a) {
    auto longest = longest_accepting_path(a);
    if (!longest) return {};
    return enumerate_words(a, *longest);
}

std::vector<std::size_t> naive_factor_ends(const Automaton& grammar, const Word& w) {
    std::vector<std::size_t> ends;
    for (std::size_t p = 0; p <= w.size(); ++p) {
        for (std::size_t s = 0; s <= p; ++s) {
            if (accepts(grammar, Word(w.begin() + static_cast<std::ptrdiff_t>(s),
                                      w.begin() + static_cast<std::ptrdiff_t>(p)))) {
                ends.push_back(p);
                break;
            }
        }
    }
    return ends;
}

bool contains_factor(const Automaton& grammar, const Word& w) {
    return !naive_factor_ends(grammar, w).empty();
}

Automaton trie_from_words(const std::vector<Word>& words) {
    AutomatonBuilder b;
    b.set_initial(b.add_state());
    std::vector<std::map<Label, StateId>> children(1);
    for (const auto& w : words) {
        StateId s = 0;
        for (const auto& label : w) {
            auto it = children[s].find(label);
            if (it == children[s].end()) {
                StateId next = b.add_state();
                children.emplace_back();
                children[s].emplace(label, next);
                b.add_transition(s, label, next);
                s = next;
            } else {
                s = it->second;
            }
        }
        b.set_final(s);
    }
    return canonicalize(b.build());
}

}  // namespace lga::oracle
