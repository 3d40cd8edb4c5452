#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "lga/automaton.hpp"

namespace lga {

/// Reads the `.fsa` text format:
///
///     lga-fsa v1
///     initial <id>
///     final <id> [<id> ...]      (zero or more lines)
///     <src> <dst> <label>        (zero or more lines)
///
/// `#` starts a comment. Ids may be any non-negative integers; they are
/// renumbered densely in ascending order. States that appear on no line do
/// not exist. Throws ParseError with the offending line number.
Automaton parse_fsa(std::string_view text);
Automaton read_fsa(std::istream& in);

void write_fsa(std::ostream& out, const Automaton& a);
std::string to_fsa_string(const Automaton& a);

}  // namespace lga
