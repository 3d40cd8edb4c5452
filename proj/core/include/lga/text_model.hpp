#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lga/automaton.hpp"

namespace lga {

/// Surface token -> analyses. Each analysis is a non-empty label sequence,
/// conventionally part of speech, features, canonical form (`DET f:s le`).
class Lexicon {
public:
    /// Appends an analysis unless it is already present for `surface`.
    /// Throws ConstraintError on an empty analysis or an invalid label.
    void add(const std::string& surface, Word analysis);

    /// Analyses in insertion order; nullptr for unknown surfaces.
    const std::vector<Word>* find(std::string_view surface) const;

    std::size_t size() const noexcept { return entries_.size(); }
    const std::map<std::string, std::vector<Word>, std::less<>>& entries() const noexcept {
        return entries_;
    }

private:
    std::map<std::string, std::vector<Word>, std::less<>> entries_;
};

/// `.lex` format: `surface<TAB>label [label ...]`, `#` comments, one analysis
/// per line. Throws ParseError with the line number.
Lexicon parse_lexicon(std::string_view text);

struct AnalyzedToken {
    std::string surface;
    std::vector<Word> analyses;
};

/// Lexicon hits, or the single analysis `<UNK> surface` for unknown tokens.
/// Throws ConstraintError for unknown tokens in strict mode.
AnalyzedToken analyze(std::string_view surface, const Lexicon& lex, bool strict);

/// Left-to-right chain of token slots, one branch per analysis within a slot.
/// The result is acyclic and trim with a single final state. Throws
/// ConstraintError for an empty token list or a strict-mode unknown token.
Automaton build_text_automaton(std::span<const std::string> tokens, const Lexicon& lex,
                               bool strict = false);

/// Whitespace tokenization.
std::vector<std::string> tokenize(std::string_view line);

struct AmbiguityReport {
    std::uint64_t paths_before = 0;
    std::uint64_t paths_after = 0;
    /// paths_after / paths_before; 0 when paths_before is 0.
    double reduction_ratio = 0.0;
};

/// Throws ConstraintError when either automaton has an accepting cycle.
AmbiguityReport ambiguity_report(const Automaton& before, const Automaton& after);

}  // namespace lga
