#include "lga/fsa_format.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

#include "lga/errors.hpp"
#include "text_lines.hpp"

namespace lga {

namespace {

constexpr std::string_view kHeader = "lga-fsa v1";

struct RawTransition {
    std::uint32_t src;
    std::uint32_t dst;
    std::string label;
};

std::uint32_t require_id(std::string_view token, std::size_t line) {
    auto id = detail::parse_id(token);
    if (!id) throw ParseError(line, "expected a state id, got '" + std::string(token) + "'");
    return *id;
}

}  // namespace

Automaton parse_fsa(std::string_view text) {
    detail::LineCursor cursor(text);
    std::string_view line;
    if (!cursor.next(line)) throw ParseError(0, "empty input, expected header '" + std::string(kHeader) + "'");
    const std::size_t header_line = cursor.line_no();
    if (line != kHeader)
        throw ParseError(header_line, "bad header '" + std::string(line) + "', expected '" + std::string(kHeader) + "'");

    std::optional<std::uint32_t> initial;
    std::set<std::uint32_t> finals;
    std::vector<RawTransition> transitions;
    std::set<std::tuple<std::uint32_t, std::string, std::uint32_t>> seen;

    while (cursor.next(line)) {
        const std::size_t n = cursor.line_no();
        auto tokens = detail::split_ws(line);
        if (tokens.front() == "initial") {
            if (tokens.size() != 2) throw ParseError(n, "malformed initial line");
            if (initial) throw ParseError(n, "initial state declared twice");
            initial = require_id(tokens[1], n);
        } else if (tokens.front() == "final") {
            if (tokens.size() < 2) throw ParseError(n, "final line lists no state");
            for (std::size_t i = 1; i < tokens.size(); ++i) finals.insert(require_id(tokens[i], n));
        } else {
            if (tokens.size() != 3) throw ParseError(n, "malformed line '" + std::string(line) + "'");
            RawTransition t{require_id(tokens[0], n), require_id(tokens[1], n), std::string(tokens[2])};
            if (auto problem = label_problem(t.label); !problem.empty()) throw ParseError(n, problem);
            if (!seen.emplace(t.src, t.label, t.dst).second)
                throw ParseError(n, "duplicate transition " + std::string(line));
            transitions.push_back(std::move(t));
        }
    }
    if (!initial) throw ParseError(header_line, "missing 'initial' line");

    std::set<std::uint32_t> ids(finals);
    ids.insert(*initial);
    for (const auto& t : transitions) {
        ids.insert(t.src);
        ids.insert(t.dst);
    }
    std::map<std::uint32_t, StateId> dense;
    for (auto id : ids) dense.emplace(id, static_cast<StateId>(dense.size()));

    std::vector<std::vector<Transition>> out(dense.size());
    for (auto& t : transitions) out[dense[t.src]].push_back({std::move(t.label), dense[t.dst]});
    std::vector<StateId> final_ids;
    for (auto f : finals) final_ids.push_back(dense[f]);
    return Automaton(static_cast<StateId>(dense.size()), dense[*initial], std::move(final_ids), std::move(out));
}

Automaton read_fsa(std::istream& in) {
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse_fsa(text);
}

void write_fsa(std::ostream& out, const Automaton& a) {
    out << kHeader << '\n' << "initial " << a.initial() << '\n';
    if (!a.finals().empty()) {
        out << "final";
        for (StateId f : a.finals()) out << ' ' << f;
        out << '\n';
    }
    for (StateId s = 0; s < a.state_count(); ++s)
        for (const auto& t : a.transitions(s)) out << s << ' ' << t.target << ' ' << t.label << '\n';
}

std::string to_fsa_string(const Automaton& a) {
    std::ostringstream out;
    write_fsa(out, a);
    return out.str();
}

}  // namespace lga
