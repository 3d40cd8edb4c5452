#include <chrono>

#include "cli.hpp"
#include "lga/algorithms.hpp"
#include "lga/apply.hpp"
#include "lga/factor_matcher.hpp"
#include "lga/oracle.hpp"

namespace lga::cli {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

/// Uniform path sampler over an acyclic automaton (unranking by path counts).
class PathSampler {
public:
    explicit PathSampler(const Automaton& a) : a_(a), from_(a.state_count(), 0) {
        // Path counts by memoized depth-first search.
        std::vector<bool> done(a.state_count(), false);
        std::vector<std::pair<StateId, std::size_t>> stack{{a.initial(), 0}};
        while (!stack.empty()) {
            auto& [s, next] = stack.back();
            auto out = a.transitions(s);
            if (next < out.size()) {
                const StateId t = out[next++].target;
                if (!done[t]) stack.emplace_back(t, 0);
                continue;
            }
            std::uint64_t n = a.is_final(s) ? 1 : 0;
            for (const auto& tr : out) n += from_[tr.target];
            from_[s] = n;
            done[s] = true;
            stack.pop_back();
        }
    }

    std::uint64_t total() const { return from_[a_.initial()]; }

    Word sample(Rng& rng) const {
        Word w;
        StateId s = a_.initial();
        std::uint64_t r = rng.below(total());
        for (;;) {
            if (a_.is_final(s)) {
                if (r == 0) return w;
                --r;
            }
            for (const auto& t : a_.transitions(s)) {
                if (r < from_[t.target]) {
                    w.push_back(t.label);
                    s = t.target;
                    break;
                }
                r -= from_[t.target];
            }
        }
    }

private:
    const Automaton& a_;
    std::vector<std::uint64_t> from_;
};

bool dfa_accepts(const Automaton& dfa, const Word& w) {
    StateId s = dfa.initial();
    for (const auto& label : w) {
        bool moved = false;
        for (const auto& t : dfa.transitions(s))
            if (t.label == label) {
                s = t.target;
                moved = true;
                break;
            }
        if (!moved) return false;
    }
    return dfa.is_final(s);
}

}  // namespace

BenchReport run_bench(const RandomSpec& spec, std::size_t samples) {
    BenchReport r;
    r.spec = spec;
    r.samples_requested = samples;

    auto start = Clock::now();
    const RandomInstance instance = random_instance(spec);
    r.generate_ms = ms_since(start);
    r.text_states = instance.text.state_count();
    r.text_transitions = instance.text.transition_count();
    r.grammar_states_raw = instance.grammar.state_count();

    start = Clock::now();
    const CompiledGrammar compiled = compile_grammar(instance.grammar);
    r.compile_ms = ms_since(start);
    r.grammar_states = compiled.grammar.state_count();
    r.grammar_transitions = compiled.grammar.transition_count();
    r.matcher_states = compiled.matcher.state_count();
    r.matcher_transitions = compiled.matcher.transition_count();
    r.matcher_copies = compiled.trace.copies;
    r.growth_ratio = static_cast<double>(r.matcher_states) / static_cast<double>(r.grammar_states);

    start = Clock::now();
    const ApplyResult applied = apply_negative(instance.text, compiled.matcher);
    r.apply_ms = ms_since(start);
    r.text_paths = applied.stats.paths_in.value_or(0);
    r.applied_states = applied.stats.states_out;
    r.applied_transitions = applied.stats.transitions_out;
    r.applied_paths = applied.stats.paths_out.value_or(0);
    r.dropped_transitions = applied.stats.dropped_transitions;

    start = Clock::now();
    const Automaton minimal = minimize(applied.automaton);
    r.minimize_ms = ms_since(start);
    r.minimized_states = minimal.state_count();
    r.minimized_transitions = minimal.transition_count();

    // Spot checks against the naive factor search on the raw grammar.
    const PathSampler sampler(instance.text);
    Rng rng(spec.seed ^ 0x5eed5eed5eed5eedULL);
    const std::size_t max_draws = samples * 1000;
    for (std::size_t draw = 0; draw < max_draws && sampler.total() > 0; ++draw) {
        if (r.survivors_checked == samples && r.removed_checked == samples) break;
        const Word w = sampler.sample(rng);
        const bool survived = dfa_accepts(minimal, w);
        if (survived && r.survivors_checked < samples) {
            ++r.survivors_checked;
            if (!scan_factors(compiled.matcher, w).empty() || oracle::contains_factor(instance.grammar, w))
                ++r.survivors_failed;
        } else if (!survived && r.removed_checked < samples) {
            ++r.removed_checked;
            if (!oracle::contains_factor(instance.grammar, w)) ++r.removed_failed;
        }
    }
    return r;
}

}  // namespace lga::cli
