#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "lga/automaton.hpp"

namespace lga {

/// Parameters of a synthetic text/grammar pair.
struct RandomSpec {
    std::size_t sequence_count = 1600;
    std::size_t min_length = 20;
    std::size_t alphabet_size = 60;
    std::size_t grammar_states = 290;
    std::uint64_t seed = 1;
};

struct RandomInstance {
    /// Minimal DFA of sequence_count random sequences.
    Automaton text;
    /// Trie of random forbidden words with exactly grammar_states states.
    Automaton grammar;
};

/// Seeded generator used throughout: std::mt19937_64 (bit-exact by the
/// standard) with rejection sampling for bounded draws, so instances are
/// identical across platforms and standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, bound). `bound` must be positive.
    std::uint64_t below(std::uint64_t bound);
    /// Uniform in [lo, hi].
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
    bool chance(std::uint64_t numerator, std::uint64_t denominator) {
        return below(denominator) < numerator;
    }

private:
    std::mt19937_64 engine_;
};

/// Label `t<i>`.
Label synthetic_label(std::size_t i);

/// Text: sequence_count sequences with lengths uniform in
/// [min_length, min_length + 10] and labels uniform over t0..t{k-1}, stored as
/// a minimal DFA.
///
/// Grammar: random words of length 2..5 are inserted into a trie as long as
/// they fit the state budget, skipping words that run through an existing
/// final; the leftover budget is spent extending one existing word. Every leaf
/// is final. Throws ConstraintError when a count is zero.
RandomInstance random_instance(const RandomSpec& spec);

}  // namespace lga
