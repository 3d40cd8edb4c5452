#include "lga/factor_matcher.hpp"

#include <algorithm>
#include <limits>

#include "lga/algorithms.hpp"
#include "lga/errors.hpp"

namespace lga {

namespace {

constexpr StateId kUndefined = std::numeric_limits<StateId>::max();
constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

using EdgeList = std::vector<FailureAutomaton::Edge>;

std::optional<StateId> find_edge(const EdgeList& edges, std::string_view label) {
    auto it = std::lower_bound(edges.begin(), edges.end(), label,
                               [](const FailureAutomaton::Edge& e, std::string_view l) { return e.first < l; });
    if (it != edges.end() && it->first == label) return it->second;
    return std::nullopt;
}

}  // namespace

FailureAutomaton::FailureAutomaton()
    : delta_(1), fail_{0}, finals_raw_{false}, finals_closed_{false}, depth_{0} {}

FailureAutomaton::FailureAutomaton(StateId initial, std::vector<std::vector<Edge>> delta,
                                   std::vector<StateId> fail, std::vector<bool> finals_raw, bool wildcard)
    : initial_(initial), delta_(std::move(delta)), fail_(std::move(fail)),
      finals_raw_(std::move(finals_raw)), wildcard_(wildcard) {
    const std::size_t n = delta_.size();
    if (n == 0) throw InvariantError("matcher needs at least one state");
    if (fail_.size() != n || finals_raw_.size() != n) throw InvariantError("matcher tables differ in size");
    if (initial_ >= n) throw InvariantError("initial state out of range");

    for (std::size_t s = 0; s < n; ++s) {
        auto& edges = delta_[s];
        std::sort(edges.begin(), edges.end());
        for (std::size_t i = 0; i < edges.size(); ++i) {
            if (edges[i].second >= n) throw InvariantError("transition target out of range");
            if (i > 0 && edges[i].first == edges[i - 1].first)
                throw InvariantError("state " + std::to_string(s) + " has two transitions on '" + edges[i].first + "'");
        }
        if (fail_[s] >= n) throw InvariantError("failure target out of range");
        transition_count_ += edges.size();
    }
    if (fail_[initial_] != initial_) throw InvariantError("failure of the initial state must be itself");

    depth_.assign(n, kUnreached);
    std::vector<StateId> order{initial_};
    depth_[initial_] = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (const auto& [label, target] : delta_[order[i]])
            if (depth_[target] == kUnreached) {
                depth_[target] = depth_[order[i]] + 1;
                order.push_back(target);
            }
    if (order.size() != n) throw InvariantError("matcher has unreachable states");
    for (std::size_t s = 0; s < n; ++s)
        if (s != initial_ && depth_[fail_[s]] >= depth_[s])
            throw InvariantError("failure of state " + std::to_string(s) + " is not shallower than the state");

    // Breadth-first order visits every failure target before its sources.
    finals_closed_.assign(n, false);
    for (StateId s : order) finals_closed_[s] = finals_raw_[s] || (s != initial_ && finals_closed_[fail_[s]]);
}

std::set<Label> FailureAutomaton::labels() const {
    std::set<Label> out;
    for (const auto& edges : delta_)
        for (const auto& e : edges) out.insert(e.first);
    return out;
}

std::optional<StateId> FailureAutomaton::exact_target(StateId s, std::string_view label) const {
    return find_edge(delta_.at(s), label);
}

std::optional<StateId> FailureAutomaton::target(StateId s, std::string_view label) const {
    if (auto t = find_edge(delta_.at(s), label)) return t;
    if (wildcard_) return find_edge(delta_[s], kWildcardLabel);
    return std::nullopt;
}

MatcherBuild build_factor_matcher(const Automaton& g2, BuildOptions options) {
    const auto kind = classify(g2);
    if (!kind.acyclic) throw ConstraintError("grammar automaton is cyclic");
    if (!kind.deterministic) throw ConstraintError("grammar automaton is not deterministic");
    if (trim(g2).state_count() != g2.state_count())
        throw ConstraintError("grammar automaton is not trim");

    const StateId init = g2.initial();
    std::vector<EdgeList> delta(g2.state_count());
    std::vector<bool> raw_final(g2.state_count());
    for (StateId s = 0; s < g2.state_count(); ++s) {
        raw_final[s] = g2.is_final(s);
        for (const auto& t : g2.transitions(s)) delta[s].emplace_back(t.label, t.target);
    }
    std::vector<StateId> fail(g2.state_count(), kUndefined);
    std::vector<StateId> origin(g2.state_count());
    for (StateId s = 0; s < g2.state_count(); ++s) origin[s] = s;
    // Copies of each original state, the original first; fail values distinct.
    std::vector<std::vector<StateId>> registry(g2.state_count());

    BuildTrace trace;
    std::vector<StateId> queue{init};
    fail[init] = init;
    registry[init].push_back(init);
    trace.enqueues = 1;

    for (std::size_t head = 0; head < queue.size(); ++head) {
        const StateId u = queue[head];
        for (std::size_t k = 0; k < delta[u].size(); ++k) {
            ++trace.transitions_examined;
            const Label label = delta[u][k].first;
            const StateId target = delta[u][k].second;

            StateId v = fail[u];
            while (v != init && !find_edge(delta[v], label)) {
                v = fail[v];
                ++trace.failure_steps;
            }
            if (u != init)
                if (auto next = find_edge(delta[v], label)) v = *next;

            if (fail[target] == kUndefined) {
                fail[target] = v;
                queue.push_back(target);
                ++trace.enqueues;
                registry[origin[target]].push_back(target);
                continue;
            }
            auto& copies = registry[origin[target]];
            auto same = std::find_if(copies.begin(), copies.end(), [&](StateId w) { return fail[w] == v; });
            if (same != copies.end()) {
                delta[u][k].second = *same;
                continue;
            }
            const StateId w = static_cast<StateId>(delta.size());
            EdgeList edges = delta[target];
            delta.push_back(std::move(edges));
            raw_final.push_back(raw_final[target]);
            fail.push_back(v);
            origin.push_back(origin[target]);
            registry[origin[target]].push_back(w);
            delta[u][k].second = w;
            queue.push_back(w);
            ++trace.enqueues;
            ++trace.copies;
        }
    }

    FailureAutomaton fa(init, std::move(delta), std::move(fail), std::move(raw_final), options.wildcard);
    return {std::move(fa), trace};
}

CompiledGrammar compile_grammar(const Automaton& grammar, BuildOptions options) {
    Automaton g = trim(grammar);
    if (!is_acyclic(g)) throw ConstraintError("grammar automaton is cyclic");
    g = minimize(determinize(g));
    auto built = build_factor_matcher(g, options);
    return {std::move(g), std::move(built.matcher), built.trace};
}

Lookup failure_lookup(const FailureAutomaton& fa, StateId state, std::string_view label) {
    Lookup result{state, 0};
    for (;;) {
        if (auto t = fa.target(result.next, label)) {
            result.next = *t;
            return result;
        }
        if (result.next == fa.initial()) return result;
        result.next = fa.fail(result.next);
        ++result.failure_steps;
    }
}

bool is_match_state(const FailureAutomaton& fa, StateId state) { return fa.is_match(state); }

Recognition recognize_ends_with(const FailureAutomaton& fa, std::span<const Label> w) {
    Recognition r;
    StateId s = fa.initial();
    r.trace.push_back(s);
    for (const auto& label : w) {
        // Replays failure_lookup so that intermediate stops can be recorded.
        for (;;) {
            if (auto t = fa.target(s, label)) {
                s = *t;
                r.trace.push_back(s);
                break;
            }
            if (s == fa.initial()) {
                r.trace.push_back(s);  // implicit self-loop
                break;
            }
            s = fa.fail(s);
            ++r.failure_steps;
            r.trace.push_back(s);
        }
        ++r.advances;
    }
    r.accepted = fa.is_match(s);
    return r;
}

Scan scan(const FailureAutomaton& fa, std::span<const Label> w) {
    Scan result;
    StateId s = fa.initial();
    if (fa.is_match(s)) result.ends.push_back(0);
    for (std::size_t i = 0; i < w.size(); ++i) {
        auto step = failure_lookup(fa, s, w[i]);
        s = step.next;
        ++result.advances;
        result.failure_steps += step.failure_steps;
        if (fa.is_match(s)) result.ends.push_back(i + 1);
    }
    return result;
}

std::vector<std::size_t> scan_factors(const FailureAutomaton& fa, std::span<const Label> w) {
    return scan(fa, w).ends;
}

Automaton expand_to_dfa(const FailureAutomaton& fa, const std::set<Label>& alphabet) {
    for (const auto& l : fa.labels())
        if (!alphabet.contains(l)) throw ConstraintError("alphabet lacks label '" + l + "' used by the matcher");
    std::vector<std::vector<Transition>> out(fa.state_count());
    std::vector<StateId> finals;
    for (StateId s = 0; s < fa.state_count(); ++s) {
        if (fa.is_match(s)) finals.push_back(s);
        for (const auto& l : alphabet) out[s].push_back({l, failure_lookup(fa, s, l).next});
    }
    return Automaton(fa.state_count(), fa.initial(), std::move(finals), std::move(out));
}

}  // namespace lga
