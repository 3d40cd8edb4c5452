#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "lga/lga.hpp"

#ifndef LGA_FIXTURE_DIR
#error "LGA_FIXTURE_DIR must point at the fixtures directory"
#endif

namespace lga::test {

inline std::filesystem::path fixture_path(const std::string& name) {
    return std::filesystem::path(LGA_FIXTURE_DIR) / name;
}

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("missing file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline Automaton fixture_fsa(const std::string& name) { return parse_fsa(slurp(fixture_path(name))); }
inline FailureAutomaton fixture_fsm3(const std::string& name) { return parse_fsm3(slurp(fixture_path(name))); }

inline Word word(std::string_view spaced) {
    Word w;
    for (auto& t : tokenize(spaced)) w.push_back(t);
    return w;
}

/// a(a+b)^n
inline Automaton blowup_grammar(std::size_t n) {
    AutomatonBuilder b;
    StateId s = b.add_state();
    b.set_initial(s);
    StateId next = b.add_state();
    b.add_transition(s, "a", next);
    for (std::size_t i = 0; i < n; ++i) {
        s = next;
        next = b.add_state();
        b.add_transition(s, "a", next);
        b.add_transition(s, "b", next);
    }
    b.set_final(next);
    return b.build();
}

/// Structural isomorphism of failure automata: delta, failure links and
/// raw finality must correspond under one bijection.
inline bool matcher_isomorphic(const FailureAutomaton& x, const FailureAutomaton& y) {
    if (x.state_count() != y.state_count() || x.transition_count() != y.transition_count() ||
        x.wildcard() != y.wildcard())
        return false;
    constexpr StateId kNone = static_cast<StateId>(-1);
    std::vector<StateId> fwd(x.state_count(), kNone), bwd(y.state_count(), kNone);
    std::vector<StateId> queue{x.initial()};
    fwd[x.initial()] = y.initial();
    bwd[y.initial()] = x.initial();
    for (std::size_t i = 0; i < queue.size(); ++i) {
        const StateId p = queue[i];
        const StateId q = fwd[p];
        if (x.is_raw_final(p) != y.is_raw_final(q)) return false;
        const auto dx = x.delta(p);
        const auto dy = y.delta(q);
        if (dx.size() != dy.size()) return false;
        for (std::size_t k = 0; k < dx.size(); ++k) {
            if (dx[k].first != dy[k].first) return false;
            const StateId a = dx[k].second, b = dy[k].second;
            if (fwd[a] == kNone && bwd[b] == kNone) {
                fwd[a] = b;
                bwd[b] = a;
                queue.push_back(a);
            } else if (fwd[a] != b || bwd[b] != a) {
                return false;
            }
        }
    }
    for (StateId p = 0; p < x.state_count(); ++p)
        if (fwd[p] == kNone || fwd[x.fail(p)] != y.fail(fwd[p])) return false;
    return true;
}

/// Map h with h(delta_x(p, l)) = delta_y(h(p), l) for every edge of x, if one
/// exists. Used to read a trace on one machine in the numbering of another.
inline std::optional<std::vector<StateId>> delta_homomorphism(const FailureAutomaton& x,
                                                              const FailureAutomaton& y) {
    constexpr StateId kNone = static_cast<StateId>(-1);
    std::vector<StateId> h(x.state_count(), kNone);
    std::vector<StateId> queue{x.initial()};
    h[x.initial()] = y.initial();
    for (std::size_t i = 0; i < queue.size(); ++i) {
        const StateId p = queue[i];
        for (const auto& [label, target] : x.delta(p)) {
            const auto image = y.exact_target(h[p], label);
            if (!image) return std::nullopt;
            if (h[target] == kNone) {
                h[target] = *image;
                queue.push_back(target);
            } else if (h[target] != *image) {
                return std::nullopt;
            }
        }
    }
    return h;
}

}  // namespace lga::test
