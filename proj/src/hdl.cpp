#include "fsmlock/hdl.hpp"

#include <regex>
#include <sstream>

#include "fsmlock/error.hpp"

namespace fsmlock {

namespace {

std::size_t state_bits(std::size_t count)
{
    std::size_t w = 1;
    while ((std::size_t{1} << w) < count) {
        ++w;
    }
    return w;
}

std::string verilog_bits(const TernaryPattern &pattern, bool casez_item)
{
    std::string body = pattern.str();
    for (char &c : body) {
        if (c == '-') {
            c = casez_item ? '?' : '0';
        }
    }
    return std::to_string(pattern.width()) + "'b" + body;
}

} // namespace

std::string emit_hdl(const Fsm &fsm, std::string_view module_name)
{
    static const std::regex identifier("[A-Za-z_][A-Za-z0-9_$]*");
    if (!std::regex_match(module_name.begin(), module_name.end(), identifier)) {
        throw Error("invalid module name '" + std::string(module_name) + "'");
    }

    const std::size_t n = fsm.states().size();
    const std::size_t w = state_bits(n);
    const std::size_t iw = fsm.inputs_width();
    const std::size_t ow = fsm.outputs_width();
    auto code = [&](std::size_t idx) { return "ST_" + std::to_string(idx); };

    std::ostringstream v;
    v << "module " << module_name << " (\n"
      << "    input  wire clk,\n"
      << "    input  wire rst";
    if (iw > 0) {
        v << ",\n    input  wire [" << iw - 1 << ":0] in";
    }
    if (ow > 0) {
        v << ",\n    output reg  [" << ow - 1 << ":0] out";
    }
    v << "\n);\n\n";

    v << "    localparam [" << w - 1 << ":0]\n";
    for (std::size_t i = 0; i < n; ++i) {
        v << "        " << code(i) << " = " << w << "'d" << i << (i + 1 < n ? "," : ";") << " // "
          << fsm.states()[i] << '\n';
    }
    v << "\n    reg [" << w - 1 << ":0] state;\n"
      << "    reg [" << w - 1 << ":0] next_state;\n\n";

    v << "    always @(posedge clk) begin\n"
      << "        if (rst)\n"
      << "            state <= " << code(fsm.reset_index()) << ";\n"
      << "        else\n"
      << "            state <= next_state;\n"
      << "    end\n\n";

    auto assign = [&](const Transition &tr) {
        std::string s = "next_state = " + code(fsm.index_of(tr.dst)) + ";";
        if (ow > 0) {
            s += " out = " + verilog_bits(tr.output, false) + ";";
        }
        return s;
    };

    v << "    always @(*) begin\n"
      << "        next_state = state;\n";
    if (ow > 0) {
        v << "        out = " << ow << "'b0;\n";
    }
    v << "        case (state)\n";
    for (std::size_t i = 0; i < n; ++i) {
        const auto &edges = fsm.outgoing(i);
        v << "        " << code(i) << ": begin\n";
        if (!edges.empty()) {
            if (iw == 0) {
                v << "            " << assign(fsm.transitions()[edges.front()]) << '\n';
            } else {
                v << "            casez (in)\n";
                for (std::size_t t : edges) {
                    const Transition &tr = fsm.transitions()[t];
                    v << "            " << verilog_bits(tr.input, true) << ": begin " << assign(tr) << " end\n";
                }
                v << "            default: ;\n"
                  << "            endcase\n";
            }
        }
        v << "        end\n";
    }
    v << "        default: next_state = " << code(fsm.reset_index()) << ";\n"
      << "        endcase\n"
      << "    end\n\n"
      << "endmodule\n";
    return v.str();
}

} // namespace fsmlock
