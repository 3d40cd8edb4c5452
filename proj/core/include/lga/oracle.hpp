#pragma once

// Brute-force reference procedures. They deliberately avoid the matcher and
// product code so they can serve as independent oracles in tests and in the
// `oracle-check` command.

#include <cstddef>
#include <vector>

#include "lga/automaton.hpp"

namespace lga::oracle {

/// Subset simulation; works on nondeterministic input.
bool accepts(const Automaton& a, const Word& w);

/// Every accepted word of length <= max_len, sorted and duplicate-free.
std::vector<Word> enumerate_words(const Automaton& a, std::size_t max_len);

/// Every accepted word. Throws ConstraintError if the language is infinite.
std::vector<Word> enumerate_language(const Automaton& a);

/// End positions p (0..|w|) such that some factor w[s..p) is accepted by
/// `grammar`. Quadratic in |w|.
std::vector<std::size_t> naive_factor_ends(const Automaton& grammar, const Word& w);

/// True iff some factor of w is accepted by `grammar`.
bool contains_factor(const Automaton& grammar, const Word& w);

/// Deterministic trie accepting exactly `words`, canonically numbered.
Automaton trie_from_words(const std::vector<Word>& words);

}  // namespace lga::oracle
