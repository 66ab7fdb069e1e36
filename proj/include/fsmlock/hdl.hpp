#pragma once

#include <string>
#include <string_view>

#include "fsmlock/fsm.hpp"

namespace fsmlock {

/// Verilog-2001 module for `fsm` with binary state encoding in state-list
/// order. Throws Error when `module_name` is not a legal identifier.
std::string emit_hdl(const Fsm &fsm, std::string_view module_name);

} // namespace fsmlock
