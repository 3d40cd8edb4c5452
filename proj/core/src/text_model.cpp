#include "lga/text_model.hpp"

#include <algorithm>

#include "lga/algorithms.hpp"
#include "lga/errors.hpp"
#include "text_lines.hpp"

namespace lga {

void Lexicon::add(const std::string& surface, Word analysis) {
    if (auto problem = label_problem(surface); !problem.empty())
        throw ConstraintError("surface '" + surface + "': " + problem);
    if (analysis.empty()) throw ConstraintError("empty analysis for '" + surface + "'");
    for (const auto& l : analysis) {
        if (auto problem = label_problem(l); !problem.empty()) throw ConstraintError(problem);
        if (l.front() == '<') throw ConstraintError("reserved label '" + l + "' in a lexicon analysis");
    }
    auto& analyses = entries_[surface];
    if (std::find(analyses.begin(), analyses.end(), analysis) == analyses.end())
        analyses.push_back(std::move(analysis));
}

const std::vector<Word>* Lexicon::find(std::string_view surface) const {
    auto it = entries_.find(surface);
    return it == entries_.end() ? nullptr : &it->second;
}

Lexicon parse_lexicon(std::string_view text) {
    Lexicon lex;
    detail::LineCursor cursor(text);
    std::string_view line;
    while (cursor.next(line)) {
        const std::size_t n = cursor.line_no();
        const auto tab = line.find('\t');
        if (tab == std::string_view::npos) throw ParseError(n, "missing TAB between surface and analysis");
        const auto surface = detail::LineCursor::trim(line.substr(0, tab));
        if (surface.empty()) throw ParseError(n, "empty surface form");
        Word analysis;
        for (auto token : detail::split_ws(line.substr(tab + 1))) analysis.emplace_back(token);
        if (analysis.empty()) throw ParseError(n, "empty analysis");
        try {
            lex.add(std::string(surface), std::move(analysis));
        } catch (const ConstraintError& e) {
            throw ParseError(n, e.what());
        }
    }
    return lex;
}

AnalyzedToken analyze(std::string_view surface, const Lexicon& lex, bool strict) {
    AnalyzedToken token{std::string(surface), {}};
    if (const auto* found = lex.find(surface)) {
        token.analyses = *found;
        return token;
    }
    if (strict) throw ConstraintError("unknown token '" + token.surface + "'");
    if (auto problem = label_problem(surface); !problem.empty())
        throw ConstraintError("token '" + token.surface + "': " + problem);
    token.analyses.push_back({Label(kUnknownLabel), token.surface});
    return token;
}

Automaton build_text_automaton(std::span<const std::string> tokens, const Lexicon& lex, bool strict) {
    if (tokens.empty()) throw ConstraintError("empty token list");
    AutomatonBuilder b;
    StateId slot_start = b.add_state();
    b.set_initial(slot_start);
    for (const auto& surface : tokens) {
        const auto token = analyze(surface, lex, strict);
        const StateId slot_end = b.add_state();
        for (const auto& analysis : token.analyses) {
            StateId s = slot_start;
            for (std::size_t i = 0; i + 1 < analysis.size(); ++i) {
                const StateId next = b.add_state();
                b.add_transition(s, analysis[i], next);
                s = next;
            }
            b.add_transition(s, analysis.back(), slot_end);
        }
        slot_start = slot_end;
    }
    b.set_final(slot_start);
    return canonicalize(b.build());
}

std::vector<std::string> tokenize(std::string_view line) {
    std::vector<std::string> out;
    for (auto token : detail::split_ws(line)) out.emplace_back(token);
    return out;
}

AmbiguityReport ambiguity_report(const Automaton& before, const Automaton& after) {
    const auto b = count_paths(before).path_count;
    const auto a = count_paths(after).path_count;
    if (!b || !a) throw ConstraintError("ambiguity report needs acyclic automata");
    AmbiguityReport r{*b, *a, 0.0};
    if (*b > 0) r.reduction_ratio = static_cast<double>(*a) / static_cast<double>(*b);
    return r;
}

}  // namespace lga
