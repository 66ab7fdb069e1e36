#pragma once

#include <istream>
#include <string>
#include <string_view>

#include "fsmlock/fsm.hpp"

namespace fsmlock {

/**
 * Reads the MCNC KISS2 format: `#` comments, `.i .o .p .s .r .e`
 * directives and `input src dst output` transition lines. States are
 * ordered by first appearance. Without `.r` the reset state is the source
 * of the first transition. Throws ParseError with line/column.
 */
Fsm parse_kiss2(std::string_view text);
Fsm read_kiss2_file(const std::string &path);

/// Canonical text: `.i .o .p .s .r` header, transitions in stored order, `.e`.
std::string emit_kiss2(const Fsm &fsm);

} // namespace fsmlock
