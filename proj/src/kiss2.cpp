#include "fsmlock/kiss2.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_set>

#include "fsmlock/error.hpp"

namespace fsmlock {

namespace {

struct Token {
    std::string_view text;
    std::size_t column; // 1-based
};

std::vector<Token> tokenize(std::string_view line)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') {
            break;
        }
        if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#') {
            ++i;
        }
        out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

std::size_t parse_count(const Token &tok, std::size_t line)
{
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
    if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size()) {
        throw ParseError("expected a non-negative integer, got '" + std::string(tok.text) + "'", line, tok.column);
    }
    return value;
}

TernaryPattern parse_pattern(const Token &tok, std::size_t width, std::size_t line, const char *what)
{
    for (std::size_t k = 0; k < tok.text.size(); ++k) {
        char c = tok.text[k];
        if (c != '0' && c != '1' && c != '-') {
            throw ParseError(std::string(what) + " pattern contains '" + std::string(1, c) + "'", line,
                             tok.column + k);
        }
    }
    if (tok.text.size() != width) {
        throw ParseError(std::string(what) + " pattern '" + std::string(tok.text) + "' has width " +
                             std::to_string(tok.text.size()) + ", expected " + std::to_string(width),
                         line, tok.column);
    }
    return TernaryPattern(std::string(tok.text));
}

} // namespace

Fsm parse_kiss2(std::string_view text)
{
    std::optional<std::size_t> inputs, outputs, declared_p, declared_s;
    std::optional<std::string> reset;
    std::vector<std::string> states;
    std::unordered_set<std::string> seen;
    std::vector<Transition> transitions;

    auto note_state = [&](std::string_view name) {
        if (seen.emplace(name).second) {
            states.emplace_back(name);
        }
    };

    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool ended = false;
    while (pos <= text.size() && !ended) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) {
            eol = text.size();
        }
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;

        std::vector<Token> toks = tokenize(line);
        if (toks.empty()) {
            continue;
        }
        const Token &head = toks[0];
        if (head.text.starts_with('.')) {
            auto want_args = [&](std::size_t n) {
                if (toks.size() != n + 1) {
                    throw ParseError("directive " + std::string(head.text) + " takes " + std::to_string(n) +
                                         " argument(s)",
                                     line_no, head.column);
                }
            };
            if (head.text == ".i") {
                want_args(1);
                inputs = parse_count(toks[1], line_no);
            } else if (head.text == ".o") {
                want_args(1);
                outputs = parse_count(toks[1], line_no);
            } else if (head.text == ".p") {
                want_args(1);
                declared_p = parse_count(toks[1], line_no);
            } else if (head.text == ".s") {
                want_args(1);
                declared_s = parse_count(toks[1], line_no);
            } else if (head.text == ".r") {
                want_args(1);
                reset = std::string(toks[1].text);
            } else if (head.text == ".e") {
                want_args(0);
                ended = true;
            } else {
                throw ParseError("unknown directive '" + std::string(head.text) + "'", line_no, head.column);
            }
            continue;
        }

        if (!inputs || !outputs) {
            throw ParseError("transition before .i/.o header", line_no, head.column);
        }
        // Zero-width patterns have no token of their own.
        const std::size_t expected = 2 + (*inputs > 0 ? 1 : 0) + (*outputs > 0 ? 1 : 0);
        if (toks.size() != expected) {
            std::size_t col = toks.size() < expected ? line.size() + 1 : toks[expected].column;
            throw ParseError("transition line needs " + std::to_string(expected) + " fields, found " +
                                 std::to_string(toks.size()),
                             line_no, col);
        }
        std::size_t k = 0;
        Transition tr;
        tr.input = *inputs > 0 ? parse_pattern(toks[k++], *inputs, line_no, "input") : TernaryPattern();
        tr.src = std::string(toks[k++].text);
        tr.dst = std::string(toks[k++].text);
        tr.output = *outputs > 0 ? parse_pattern(toks[k++], *outputs, line_no, "output") : TernaryPattern();
        note_state(tr.src);
        note_state(tr.dst);
        transitions.push_back(std::move(tr));
    }

    if (!inputs || !outputs) {
        throw ParseError("missing .i or .o header", line_no);
    }
    if (transitions.empty()) {
        throw ParseError("no transitions", line_no);
    }
    if (reset && !seen.contains(*reset)) {
        states.push_back(*reset);
    }
    if (declared_p && *declared_p != transitions.size()) {
        throw ParseError(".p declares " + std::to_string(*declared_p) + " transitions, found " +
                             std::to_string(transitions.size()),
                         0);
    }
    if (declared_s && *declared_s != states.size()) {
        throw ParseError(".s declares " + std::to_string(*declared_s) + " states, found " +
                             std::to_string(states.size()),
                         0);
    }
    std::string reset_state = reset ? *reset : transitions.front().src;
    return Fsm(*inputs, *outputs, std::move(states), std::move(reset_state), std::move(transitions));
}

Fsm read_kiss2_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_kiss2(buf.str());
}

std::string emit_kiss2(const Fsm &fsm)
{
    // Isolated non-reset states have no textual representation in KISS2.
    std::unordered_set<std::string> carried{fsm.reset_state()};
    for (const Transition &tr : fsm.transitions()) {
        carried.insert(tr.src);
        carried.insert(tr.dst);
    }
    std::ostringstream out;
    out << ".i " << fsm.inputs_width() << '\n'
        << ".o " << fsm.outputs_width() << '\n'
        << ".p " << fsm.transitions().size() << '\n'
        << ".s " << carried.size() << '\n'
        << ".r " << fsm.reset_state() << '\n';
    for (const Transition &tr : fsm.transitions()) {
        if (fsm.inputs_width() > 0) {
            out << tr.input.str() << ' ';
        }
        out << tr.src << ' ' << tr.dst;
        if (fsm.outputs_width() > 0) {
            out << ' ' << tr.output.str();
        }
        out << '\n';
    }
    out << ".e\n";
    return out.str();
}

} // namespace fsmlock
