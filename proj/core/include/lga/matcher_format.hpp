#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "lga/factor_matcher.hpp"

namespace lga {

/// `.fsm3` text format:
///
///     lga-fsm3 v1
///     initial <id>
///     states <n>
///     wildcard 1                       (optional, only when enabled)
///     state <id> fail=<id> final=<0|1>  (one per state)
///     <src> <dst> <label>
///
/// Only raw finals are stored; the match closure is recomputed on load.
FailureAutomaton parse_fsm3(std::string_view text);
FailureAutomaton read_fsm3(std::istream& in);

void write_fsm3(std::ostream& out, const FailureAutomaton& fa);
std::string to_fsm3_string(const FailureAutomaton& fa);

}  // namespace lga
