#include "lga/random_instance.hpp"

#include <limits>
#include <map>

#include "lga/algorithms.hpp"
#include "lga/errors.hpp"
#include "lga/oracle.hpp"

namespace lga {

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw ConstraintError("Rng::below needs a positive bound");
    // Reject the top partial block so every residue is equally likely.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % bound;
}

Label synthetic_label(std::size_t i) { return "t" + std::to_string(i); }

namespace {

constexpr std::size_t kMinWordLength = 2;
constexpr std::size_t kMaxWordLength = 5;
constexpr int kAttemptsBeforeExtending = 64;

Automaton random_text(const RandomSpec& spec, Rng& rng) {
    std::vector<Word> sequences;
    sequences.reserve(spec.sequence_count);
    for (std::size_t i = 0; i < spec.sequence_count; ++i) {
        const auto length = rng.between(spec.min_length, spec.min_length + 10);
        Word w;
        for (std::uint64_t k = 0; k < length; ++k) w.push_back(synthetic_label(rng.below(spec.alphabet_size)));
        sequences.push_back(std::move(w));
    }
    return minimize(oracle::trie_from_words(sequences));
}

// Trie of forbidden words with an exact state budget.
class GrammarTrie {
public:
    GrammarTrie() : children_(1), final_(1, false) {}

    std::size_t size() const noexcept { return children_.size(); }

    /// New states needed to insert w; empty when w runs through or ends on an
    /// existing state that would make it a prefix-related duplicate.
    std::optional<std::size_t> cost(const Word& w) const {
        StateId s = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (final_[s]) return std::nullopt;
            auto it = children_[s].find(w[i]);
            if (it == children_[s].end()) return w.size() - i;
            s = it->second;
        }
        return std::nullopt;
    }

    void insert(const Word& w) {
        StateId s = 0;
        for (const auto& label : w) s = child(s, label);
        final_[s] = true;
    }

    /// Appends `extra` fresh states below a final leaf (or the root).
    void extend(Rng& rng, std::size_t extra, std::size_t alphabet) {
        std::vector<StateId> leaves;
        for (StateId s = 0; s < size(); ++s)
            if (final_[s]) leaves.push_back(s);
        StateId s = leaves.empty() ? 0 : leaves[rng.below(leaves.size())];
        final_[s] = false;
        for (std::size_t i = 0; i < extra; ++i) {
            Label label;
            do {
                label = synthetic_label(rng.below(alphabet));
            } while (children_[s].contains(label));
            s = child(s, label);
        }
        final_[s] = true;
    }

    Automaton automaton() const {
        AutomatonBuilder b;
        b.set_initial(b.add_state());
        for (StateId s = 1; s < size(); ++s) b.add_state();
        for (StateId s = 0; s < size(); ++s) {
            b.set_final(s, final_[s]);
            for (const auto& [label, t] : children_[s]) b.add_transition(s, label, t);
        }
        return b.build();
    }

private:
    StateId child(StateId s, const Label& label) {
        auto it = children_[s].find(label);
        if (it != children_[s].end()) return it->second;
        const auto id = static_cast<StateId>(children_.size());
        children_.emplace_back();
        final_.push_back(false);
        children_[s].emplace(label, id);
        return id;
    }

    std::vector<std::map<Label, StateId>> children_;
    std::vector<bool> final_;
};

Automaton random_grammar(const RandomSpec& spec, Rng& rng) {
    GrammarTrie trie;
    int failures = 0;
    while (trie.size() < spec.grammar_states && failures < kAttemptsBeforeExtending) {
        const auto length = rng.between(kMinWordLength, kMaxWordLength);
        Word w;
        for (std::uint64_t k = 0; k < length; ++k) w.push_back(synthetic_label(rng.below(spec.alphabet_size)));
        const auto needed = trie.cost(w);
        if (needed && trie.size() + *needed <= spec.grammar_states) {
            trie.insert(w);
            failures = 0;
        } else {
            ++failures;
        }
    }
    if (trie.size() < spec.grammar_states) trie.extend(rng, spec.grammar_states - trie.size(), spec.alphabet_size);
    return trie.automaton();
}

}  // namespace

RandomInstance random_instance(const RandomSpec& spec) {
    if (spec.sequence_count == 0 || spec.min_length == 0 || spec.alphabet_size == 0 || spec.grammar_states == 0)
        throw ConstraintError("random instance counts must be positive");
    Rng rng(spec.seed);
    Automaton text = random_text(spec, rng);
    Automaton grammar = random_grammar(spec, rng);
    return {std::move(text), std::move(grammar)};
}

}  // namespace lga
