#include <algorithm>
#include <map>
#include <numeric>

#include "lga/algorithms.hpp"
#include "lga/errors.hpp"

namespace lga {

namespace {

// Refinable partition of {0..n-1}. Elements of a set occupy a contiguous
// range of `elems_`; marked elements are moved to the front of their set and
// `split()` separates them from the rest, giving the new id to the smaller
// half.
class Partition {
public:
    explicit Partition(std::size_t n)
        : elems_(n), loc_(n), set_of_(n, 0), first_(n + 1), past_(n + 1), marked_(n + 1, 0) {
        std::iota(elems_.begin(), elems_.end(), 0);
        std::iota(loc_.begin(), loc_.end(), 0);
        if (n > 0) {
            sets_ = 1;
            first_[0] = 0;
            past_[0] = n;
        }
    }

    std::size_t sets() const noexcept { return sets_; }
    std::size_t set_of(std::size_t e) const { return set_of_[e]; }
    std::size_t first(std::size_t s) const { return first_[s]; }
    std::size_t past(std::size_t s) const { return past_[s]; }
    std::size_t element(std::size_t i) const { return elems_[i]; }

    /// Caller must not mark an element twice between splits.
    void mark(std::size_t e) {
        const std::size_t s = set_of_[e];
        const std::size_t i = loc_[e];
        const std::size_t j = first_[s] + marked_[s];
        elems_[i] = elems_[j];
        loc_[elems_[i]] = i;
        elems_[j] = e;
        loc_[e] = j;
        if (marked_[s]++ == 0) touched_.push_back(s);
    }

    void split() {
        while (!touched_.empty()) {
            const std::size_t s = touched_.back();
            touched_.pop_back();
            const std::size_t j = first_[s] + marked_[s];
            if (j == past_[s]) {
                marked_[s] = 0;
                continue;
            }
            const std::size_t z = sets_++;
            if (marked_[s] <= past_[s] - j) {
                first_[z] = first_[s];
                past_[z] = first_[s] = j;
            } else {
                past_[z] = past_[s];
                first_[z] = past_[s] = j;
            }
            for (std::size_t i = first_[z]; i < past_[z]; ++i) set_of_[elems_[i]] = z;
            marked_[s] = marked_[z] = 0;
        }
    }

private:
    std::vector<std::size_t> elems_, loc_, set_of_, first_, past_, marked_;
    std::vector<std::size_t> touched_;
    std::size_t sets_ = 0;
};

}  // namespace

Automaton minimize(const Automaton& input) {
    if (!is_deterministic(input)) throw ConstraintError("minimize() requires a deterministic automaton");
    const Automaton a = trim(input);
    if (a.finals().empty()) return a;

    const std::size_t n = a.state_count();

    // Flatten transitions with interned labels (ids follow byte order).
    std::map<Label, std::size_t> label_ids;
    for (const auto& l : a.labels()) label_ids.emplace(l, label_ids.size());
    std::vector<std::size_t> tail, head, label;
    for (StateId s = 0; s < n; ++s)
        for (const auto& t : a.transitions(s)) {
            tail.push_back(s);
            head.push_back(t.target);
            label.push_back(label_ids[t.label]);
        }
    const std::size_t m = tail.size();

    // Incoming transitions per state, CSR layout.
    std::vector<std::size_t> in_first(n + 1, 0), in_list(m);
    for (std::size_t t = 0; t < m; ++t) ++in_first[head[t] + 1];
    for (std::size_t q = 0; q < n; ++q) in_first[q + 1] += in_first[q];
    {
        auto fill = in_first;
        for (std::size_t t = 0; t < m; ++t) in_list[fill[head[t]]++] = t;
    }

    Partition blocks(n);
    for (StateId f : a.finals()) blocks.mark(f);
    blocks.split();

    // Transitions grouped by label form the initial cords.
    Partition cords(m);
    if (m > 0) {
        std::vector<std::size_t> by_label(m);
        std::iota(by_label.begin(), by_label.end(), 0);
        std::stable_sort(by_label.begin(), by_label.end(),
                         [&](std::size_t x, std::size_t y) { return label[x] < label[y]; });
        // Peel one label group at a time off the still-unsplit remainder.
        std::size_t start = 0;
        for (std::size_t i = 1; i <= m; ++i) {
            if (i < m && label[by_label[i]] == label[by_label[start]]) continue;
            for (std::size_t k = start; k < i; ++k) cords.mark(by_label[k]);
            cords.split();
            start = i;
        }
    }

    std::size_t b = 1;
    std::size_t c = 0;
    while (c < cords.sets()) {
        for (std::size_t i = cords.first(c); i < cords.past(c); ++i) blocks.mark(tail[cords.element(i)]);
        blocks.split();
        ++c;
        while (b < blocks.sets()) {
            for (std::size_t i = blocks.first(b); i < blocks.past(b); ++i) {
                const std::size_t q = blocks.element(i);
                for (std::size_t k = in_first[q]; k < in_first[q + 1]; ++k) cords.mark(in_list[k]);
            }
            cords.split();
            ++b;
        }
    }

    const std::size_t k = blocks.sets();
    std::vector<std::vector<Transition>> out(k);
    std::vector<StateId> finals;
    for (std::size_t blk = 0; blk < k; ++blk) {
        const StateId rep = static_cast<StateId>(blocks.element(blocks.first(blk)));
        if (a.is_final(rep)) finals.push_back(static_cast<StateId>(blk));
        for (const auto& t : a.transitions(rep))
            out[blk].push_back({t.label, static_cast<StateId>(blocks.set_of(t.target))});
    }
    Automaton quotient(static_cast<StateId>(k), static_cast<StateId>(blocks.set_of(a.initial())),
                       std::move(finals), std::move(out));
    return canonicalize(quotient);
}

}  // namespace lga
