#include "lga/matcher_format.hpp"

#include <iterator>
#include <ostream>
#include <sstream>

#include "lga/errors.hpp"
#include "text_lines.hpp"

namespace lga {

namespace {

constexpr std::string_view kHeader = "lga-fsm3 v1";

std::uint32_t require_id(std::string_view token, std::size_t line) {
    auto id = detail::parse_id(token);
    if (!id) throw ParseError(line, "expected a state id, got '" + std::string(token) + "'");
    return *id;
}

std::string_view require_field(std::string_view token, std::string_view key, std::size_t line) {
    if (token.size() <= key.size() || token.substr(0, key.size()) != key)
        throw ParseError(line, "expected '" + std::string(key) + "<value>', got '" + std::string(token) + "'");
    return token.substr(key.size());
}

}  // namespace

FailureAutomaton parse_fsm3(std::string_view text) {
    detail::LineCursor cursor(text);
    std::string_view line;
    if (!cursor.next(line)) throw ParseError(0, "empty input, expected header '" + std::string(kHeader) + "'");
    const std::size_t header_line = cursor.line_no();
    if (line != kHeader)
        throw ParseError(header_line, "bad header '" + std::string(line) + "', expected '" + std::string(kHeader) + "'");

    std::optional<std::uint32_t> initial;
    std::optional<std::uint32_t> count;
    bool wildcard = false;
    std::vector<std::vector<FailureAutomaton::Edge>> delta;
    std::vector<StateId> fail;
    std::vector<bool> finals;
    std::vector<std::size_t> state_line;

    auto require_count = [&](std::size_t n) {
        if (!count) throw ParseError(n, "'states' line must precede state and transition lines");
    };
    auto check_id = [&](std::uint32_t id, std::size_t n) {
        if (id >= *count) throw ParseError(n, "dangling state id " + std::to_string(id));
    };

    while (cursor.next(line)) {
        const std::size_t n = cursor.line_no();
        auto tokens = detail::split_ws(line);
        const auto head = tokens.front();
        if (head == "initial") {
            if (tokens.size() != 2 || initial) throw ParseError(n, "malformed or repeated initial line");
            initial = require_id(tokens[1], n);
        } else if (head == "states") {
            if (tokens.size() != 2 || count) throw ParseError(n, "malformed or repeated states line");
            count = require_id(tokens[1], n);
            if (*count == 0) throw ParseError(n, "matcher needs at least one state");
            delta.resize(*count);
            fail.assign(*count, 0);
            finals.assign(*count, false);
            state_line.assign(*count, 0);
        } else if (head == "wildcard") {
            if (tokens.size() != 2 || (tokens[1] != "0" && tokens[1] != "1"))
                throw ParseError(n, "malformed wildcard line");
            wildcard = tokens[1] == "1";
        } else if (head == "state") {
            require_count(n);
            if (tokens.size() != 4) throw ParseError(n, "malformed state line");
            const auto id = require_id(tokens[1], n);
            check_id(id, n);
            if (state_line[id] != 0) throw ParseError(n, "state " + std::to_string(id) + " declared twice");
            state_line[id] = n;
            fail[id] = require_id(require_field(tokens[2], "fail=", n), n);
            check_id(fail[id], n);
            const auto flag = require_field(tokens[3], "final=", n);
            if (flag != "0" && flag != "1") throw ParseError(n, "final flag must be 0 or 1");
            finals[id] = flag == "1";
        } else {
            require_count(n);
            if (tokens.size() != 3) throw ParseError(n, "malformed line '" + std::string(line) + "'");
            const auto src = require_id(tokens[0], n);
            const auto dst = require_id(tokens[1], n);
            check_id(src, n);
            check_id(dst, n);
            if (auto problem = label_problem(tokens[2]); !problem.empty()) throw ParseError(n, problem);
            for (const auto& e : delta[src])
                if (e.first == tokens[2]) throw ParseError(n, "second transition on '" + std::string(tokens[2]) + "'");
            delta[src].emplace_back(std::string(tokens[2]), dst);
        }
    }
    if (!initial) throw ParseError(header_line, "missing 'initial' line");
    if (!count) throw ParseError(header_line, "missing 'states' line");
    if (*initial >= *count) throw ParseError(header_line, "initial state out of range");
    for (std::uint32_t s = 0; s < *count; ++s)
        if (state_line[s] == 0) throw ParseError(header_line, "state " + std::to_string(s) + " has no state line");

    constexpr std::size_t kUnreached = static_cast<std::size_t>(-1);
    std::vector<std::size_t> depth(*count, kUnreached);
    std::vector<StateId> order{*initial};
    depth[*initial] = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (const auto& e : delta[order[i]])
            if (depth[e.second] == kUnreached) {
                depth[e.second] = depth[order[i]] + 1;
                order.push_back(e.second);
            }
    for (std::uint32_t s = 0; s < *count; ++s) {
        if (depth[s] == kUnreached) throw ParseError(state_line[s], "state " + std::to_string(s) + " is unreachable");
        if (s == *initial ? fail[s] != s : depth[fail[s]] >= depth[s])
            throw ParseError(state_line[s], "failure of state " + std::to_string(s) + " is not shallower than the state");
    }

    try {
        return FailureAutomaton(*initial, std::move(delta), std::move(fail), std::move(finals), wildcard);
    } catch (const InvariantError& e) {
        throw ParseError(0, std::string("invalid matcher: ") + e.what());
    }
}

FailureAutomaton read_fsm3(std::istream& in) {
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse_fsm3(text);
}

void write_fsm3(std::ostream& out, const FailureAutomaton& fa) {
    out << kHeader << '\n'
        << "initial " << fa.initial() << '\n'
        << "states " << fa.state_count() << '\n';
    if (fa.wildcard()) out << "wildcard 1\n";
    for (StateId s = 0; s < fa.state_count(); ++s)
        out << "state " << s << " fail=" << fa.fail(s) << " final=" << (fa.is_raw_final(s) ? 1 : 0) << '\n';
    for (StateId s = 0; s < fa.state_count(); ++s)
        for (const auto& [label, target] : fa.delta(s)) out << s << ' ' << target << ' ' << label << '\n';
}

std::string to_fsm3_string(const FailureAutomaton& fa) {
    std::ostringstream out;
    write_fsm3(out, fa);
    return out.str();
}

}  // namespace lga
