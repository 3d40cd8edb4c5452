#include "lga/algorithms.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <unordered_map>

#include "lga/errors.hpp"

namespace lga {

namespace {

constexpr StateId kNone = std::numeric_limits<StateId>::max();

/// Kahn order over all states; empty optional when some cycle exists.
std::optional<std::vector<StateId>> topological_order(const Automaton& a) {
    std::vector<std::size_t> indegree(a.state_count(), 0);
    for (StateId s = 0; s < a.state_count(); ++s)
        for (const auto& t : a.transitions(s)) ++indegree[t.target];
    std::vector<StateId> order;
    order.reserve(a.state_count());
    for (StateId s = 0; s < a.state_count(); ++s)
        if (indegree[s] == 0) order.push_back(s);
    for (std::size_t i = 0; i < order.size(); ++i)
        for (const auto& t : a.transitions(order[i]))
            if (--indegree[t.target] == 0) order.push_back(t.target);
    if (order.size() != a.state_count()) return std::nullopt;
    return order;
}

std::uint64_t checked_add(std::uint64_t x, std::uint64_t y) {
    if (x > std::numeric_limits<std::uint64_t>::max() - y)
        throw ConstraintError("path count exceeds 64 bits");
    return x + y;
}

/// Restricts `a` to `keep` and renumbers breadth-first from the initial state.
Automaton restrict_and_renumber(const Automaton& a, const std::vector<bool>& keep) {
    std::vector<StateId> id(a.state_count(), kNone);
    std::vector<StateId> order{a.initial()};
    id[a.initial()] = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (const auto& t : a.transitions(order[i])) {
            if (!keep[t.target] || id[t.target] != kNone) continue;
            id[t.target] = static_cast<StateId>(order.size());
            order.push_back(t.target);
        }
    }
    std::vector<std::vector<Transition>> out(order.size());
    std::vector<StateId> finals;
    for (std::size_t i = 0; i < order.size(); ++i) {
        StateId old = order[i];
        if (a.is_final(old)) finals.push_back(static_cast<StateId>(i));
        for (const auto& t : a.transitions(old))
            if (keep[t.target]) out[i].push_back({t.label, id[t.target]});
    }
    return Automaton(static_cast<StateId>(order.size()), 0, std::move(finals), std::move(out));
}

std::vector<bool> accessible(const Automaton& a) {
    std::vector<bool> seen(a.state_count(), false);
    std::vector<StateId> stack{a.initial()};
    seen[a.initial()] = true;
    while (!stack.empty()) {
        StateId s = stack.back();
        stack.pop_back();
        for (const auto& t : a.transitions(s))
            if (!seen[t.target]) {
                seen[t.target] = true;
                stack.push_back(t.target);
            }
    }
    return seen;
}

std::vector<bool> coaccessible(const Automaton& a) {
    std::vector<std::vector<StateId>> reverse(a.state_count());
    for (StateId s = 0; s < a.state_count(); ++s)
        for (const auto& t : a.transitions(s)) reverse[t.target].push_back(s);
    std::vector<bool> seen(a.state_count(), false);
    std::vector<StateId> stack(a.finals().begin(), a.finals().end());
    for (StateId f : stack) seen[f] = true;
    while (!stack.empty()) {
        StateId s = stack.back();
        stack.pop_back();
        for (StateId p : reverse[s])
            if (!seen[p]) {
                seen[p] = true;
                stack.push_back(p);
            }
    }
    return seen;
}

bool is_trim(const Automaton& a) {
    auto acc = accessible(a);
    auto co = coaccessible(a);
    for (StateId s = 0; s < a.state_count(); ++s)
        if (!acc[s] || !co[s]) return a.state_count() == 1 && a.finals().empty();
    return true;
}

void sample_dfs(const Automaton& a, StateId s, Word& prefix, std::size_t limit,
                std::size_t max_depth, std::vector<Word>& out) {
    if (out.size() >= limit) return;
    if (a.is_final(s)) out.push_back(prefix);
    if (prefix.size() >= max_depth) return;
    for (const auto& t : a.transitions(s)) {
        if (out.size() >= limit) return;
        prefix.push_back(t.label);
        sample_dfs(a, t.target, prefix, limit, max_depth, out);
        prefix.pop_back();
    }
}

}  // namespace

bool is_acyclic(const Automaton& a) { return topological_order(a).has_value(); }

bool is_deterministic(const Automaton& a) {
    for (StateId s = 0; s < a.state_count(); ++s) {
        auto list = a.transitions(s);
        for (std::size_t i = 1; i < list.size(); ++i)
            if (list[i].label == list[i - 1].label) return false;
    }
    return true;
}

Classification classify(const Automaton& a) { return {is_acyclic(a), is_deterministic(a)}; }

Automaton canonicalize(const Automaton& a) {
    return restrict_and_renumber(a, std::vector<bool>(a.state_count(), true));
}

Automaton trim(const Automaton& a) {
    auto keep = accessible(a);
    auto co = coaccessible(a);
    for (StateId s = 0; s < a.state_count(); ++s) keep[s] = keep[s] && co[s];
    if (!keep[a.initial()]) return Automaton{};
    return restrict_and_renumber(a, keep);
}

Automaton determinize(const Automaton& a) {
    using Subset = std::vector<StateId>;
    std::map<Subset, StateId> index;
    std::vector<Subset> subsets;
    std::vector<std::vector<Transition>> out;
    std::vector<StateId> finals;

    auto intern = [&](Subset subset) {
        auto [it, inserted] = index.emplace(subset, static_cast<StateId>(subsets.size()));
        if (inserted) {
            subsets.push_back(std::move(subset));
            out.emplace_back();
        }
        return it->second;
    };

    intern({a.initial()});
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        std::map<Label, Subset> moves;
        bool final = false;
        for (StateId s : subsets[i]) {
            final = final || a.is_final(s);
            for (const auto& t : a.transitions(s)) moves[t.label].push_back(t.target);
        }
        if (final) finals.push_back(static_cast<StateId>(i));
        for (auto& [label, targets] : moves) {
            std::sort(targets.begin(), targets.end());
            targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
            StateId id = intern(std::move(targets));
            out[i].push_back({label, id});
        }
    }
    return Automaton(static_cast<StateId>(subsets.size()), 0, std::move(finals), std::move(out));
}

PathReport count_paths(const Automaton& a, std::size_t sample_limit) {
    PathReport report;
    Automaton t = trim(a);
    auto order = topological_order(t);
    if (order) {
        std::vector<std::uint64_t> from(t.state_count(), 0);
        for (auto it = order->rbegin(); it != order->rend(); ++it) {
            std::uint64_t n = t.is_final(*it) ? 1 : 0;
            for (const auto& tr : t.transitions(*it)) n = checked_add(n, from[tr.target]);
            from[*it] = n;
        }
        report.path_count = from[t.initial()];
    }
    if (sample_limit > 0 && !t.finals().empty()) {
        Word prefix;
        const std::size_t max_depth = order ? t.state_count() : 2 * static_cast<std::size_t>(t.state_count());
        sample_dfs(t, t.initial(), prefix, sample_limit, max_depth, report.sample_paths);
    }
    return report;
}

std::optional<std::size_t> longest_accepting_path(const Automaton& a) {
    Automaton t = trim(a);
    if (t.finals().empty()) return std::nullopt;
    auto order = topological_order(t);
    if (!order) throw ConstraintError("accepting path contains a cycle");
    std::vector<std::size_t> longest(t.state_count(), 0);
    for (auto it = order->rbegin(); it != order->rend(); ++it)
        for (const auto& tr : t.transitions(*it))
            longest[*it] = std::max(longest[*it], longest[tr.target] + 1);
    return longest[t.initial()];
}

bool languages_equal_bounded(const Automaton& a, const Automaton& b, std::size_t max_len) {
    const Automaton da = determinize(trim(a));
    const Automaton db = determinize(trim(b));
    auto final_of = [](const Automaton& x, StateId s) { return s != kNone && x.is_final(s); };

    std::map<std::pair<StateId, StateId>, std::size_t> depth;
    std::deque<std::pair<StateId, StateId>> queue;
    queue.emplace_back(da.initial(), db.initial());
    depth[queue.front()] = 0;
    while (!queue.empty()) {
        auto [sa, sb] = queue.front();
        queue.pop_front();
        if (final_of(da, sa) != final_of(db, sb)) return false;
        const std::size_t d = depth[{sa, sb}];
        if (d == max_len) continue;

        // Merge the two label-sorted transition lists; a missing side is the
        // implicit dead state.
        std::span<const Transition> ta, tb;
        if (sa != kNone) ta = da.transitions(sa);
        if (sb != kNone) tb = db.transitions(sb);
        std::size_t i = 0, j = 0;
        while (i < ta.size() || j < tb.size()) {
            std::pair<StateId, StateId> next;
            if (j == tb.size() || (i < ta.size() && ta[i].label < tb[j].label)) {
                next = {ta[i++].target, kNone};
            } else if (i == ta.size() || tb[j].label < ta[i].label) {
                next = {kNone, tb[j++].target};
            } else {
                next = {ta[i++].target, tb[j++].target};
            }
            if (depth.emplace(next, d + 1).second) queue.push_back(next);
        }
    }
    return true;
}

bool isomorphic(const Automaton& a, const Automaton& b) {
    if (!is_deterministic(a) || !is_deterministic(b) || !is_trim(a) || !is_trim(b))
        throw ConstraintError("isomorphic() requires deterministic trim automata");
    if (a.state_count() != b.state_count() || a.transition_count() != b.transition_count() ||
        a.finals().size() != b.finals().size())
        return false;
    std::vector<StateId> to_b(a.state_count(), kNone);
    std::vector<StateId> to_a(b.state_count(), kNone);
    std::deque<StateId> queue{a.initial()};
    to_b[a.initial()] = b.initial();
    to_a[b.initial()] = a.initial();
    while (!queue.empty()) {
        StateId s = queue.front();
        queue.pop_front();
        StateId m = to_b[s];
        if (a.is_final(s) != b.is_final(m)) return false;
        auto ta = a.transitions(s);
        auto tb = b.transitions(m);
        if (ta.size() != tb.size()) return false;
        for (std::size_t i = 0; i < ta.size(); ++i) {
            if (ta[i].label != tb[i].label) return false;
            StateId x = ta[i].target, y = tb[i].target;
            if (to_b[x] == kNone && to_a[y] == kNone) {
                to_b[x] = y;
                to_a[y] = x;
                queue.push_back(x);
            } else if (to_b[x] != y || to_a[y] != x) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace lga
