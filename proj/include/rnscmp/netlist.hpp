#pragma once

// Combinational gate netlists: a small data model, a line-based text
// format, and a topological-order simulator.
//
// Text format, one directive per line, '#' starts a comment:
//
//   INPUT <name> [<name>...]
//   GATE <id> <KIND> <in1> [<in2>]
//   OUTPUT <name> [<name>...]
//
// KIND is one of AND OR XOR NAND NOR NOT BUF; NOT and BUF take one input,
// the rest take two. Identifiers match [A-Za-z_][A-Za-z0-9_]*. A gate may
// only read wires defined on earlier lines, which keeps every parsed
// netlist acyclic by construction.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <rnscmp/error.hpp>

namespace rnscmp {

enum class GateKind { AND, OR, XOR, NAND, NOR, NOT, BUF };

inline int gate_arity(GateKind k) {
    return (k == GateKind::NOT || k == GateKind::BUF) ? 1 : 2;
}

inline const char* to_string(GateKind k) {
    switch (k) {
        case GateKind::AND: return "AND";
        case GateKind::OR: return "OR";
        case GateKind::XOR: return "XOR";
        case GateKind::NAND: return "NAND";
        case GateKind::NOR: return "NOR";
        case GateKind::NOT: return "NOT";
        case GateKind::BUF: return "BUF";
    }
    return "?";
}

inline std::optional<GateKind> gate_kind_from(std::string_view s) {
    if (s == "AND") return GateKind::AND;
    if (s == "OR") return GateKind::OR;
    if (s == "XOR") return GateKind::XOR;
    if (s == "NAND") return GateKind::NAND;
    if (s == "NOR") return GateKind::NOR;
    if (s == "NOT") return GateKind::NOT;
    if (s == "BUF") return GateKind::BUF;
    return std::nullopt;
}

struct Gate {
    std::string name;
    GateKind kind;
    std::array<std::uint32_t, 2> fanin{};  // wire ids; fanin[1] unused for unary kinds

    friend bool operator==(const Gate&, const Gate&) = default;
};

// Wire ids: inputs occupy [0, inputs.size()), gate g drives wire
// inputs.size() + g. Gates are stored in definition order, which is a
// valid evaluation order.
class Netlist {
  public:
    std::uint32_t add_input(const std::string& name) {
        std::uint32_t id = check_new_wire(name);
        inputs_.push_back(name);
        return id;
    }

    std::uint32_t add_gate(const std::string& name, GateKind kind, const std::string& a) {
        return add_gate_ids(name, kind, {wire_id_or_throw(a), 0});
    }

    std::uint32_t add_gate(const std::string& name, GateKind kind, const std::string& a,
                           const std::string& b) {
        return add_gate_ids(name, kind, {wire_id_or_throw(a), wire_id_or_throw(b)});
    }

    std::uint32_t add_gate_ids(const std::string& name, GateKind kind,
                               std::array<std::uint32_t, 2> fanin) {
        for (int i = 0; i < gate_arity(kind); ++i)
            if (fanin[i] >= wire_count())
                throw Error(Errc::unknown_wire, "gate fan-in references undefined wire");
        std::uint32_t id = check_new_wire(name);
        gates_.push_back({name, kind, fanin});
        return id;
    }

    void add_output(const std::string& name) {
        auto id = wire_id(name);
        if (!id)
            throw Error(Errc::unknown_wire, "output '" + name + "' names no defined wire");
        outputs_.push_back(name);
        output_ids_.push_back(*id);
    }

    const std::vector<std::string>& inputs() const noexcept { return inputs_; }
    const std::vector<Gate>& gates() const noexcept { return gates_; }
    const std::vector<std::string>& outputs() const noexcept { return outputs_; }
    const std::vector<std::uint32_t>& output_ids() const noexcept { return output_ids_; }

    std::uint32_t wire_count() const noexcept {
        return static_cast<std::uint32_t>(inputs_.size() + gates_.size());
    }

    std::optional<std::uint32_t> wire_id(const std::string& name) const {
        auto it = ids_.find(name);
        if (it == ids_.end()) return std::nullopt;
        return it->second;
    }

    bool is_input_id(std::uint32_t id) const noexcept { return id < inputs_.size(); }

    friend bool operator==(const Netlist& a, const Netlist& b) noexcept {
        return a.inputs_ == b.inputs_ && a.gates_ == b.gates_ && a.outputs_ == b.outputs_;
    }

  private:
    std::uint32_t check_new_wire(const std::string& name) {
        auto [it, fresh] = ids_.emplace(name, wire_count());
        if (!fresh)
            throw Error(Errc::syntax, "wire '" + name + "' is defined twice");
        return it->second;
    }

    std::uint32_t wire_id_or_throw(const std::string& name) const {
        auto id = wire_id(name);
        if (!id)
            throw Error(Errc::unknown_wire, "wire '" + name + "' is not defined");
        return *id;
    }

    std::vector<std::string> inputs_;
    std::vector<Gate> gates_;
    std::vector<std::string> outputs_;
    std::vector<std::uint32_t> output_ids_;
    std::unordered_map<std::string, std::uint32_t> ids_;
};

namespace detail {

inline bool is_ident_start(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

inline bool is_ident_char(char c) {
    return is_ident_start(c) || (c >= '0' && c <= '9');
}

inline bool is_identifier(std::string_view s) {
    if (s.empty() || !is_ident_start(s[0])) return false;
    for (char c : s.substr(1))
        if (!is_ident_char(c)) return false;
    return true;
}

struct Token {
    std::string text;
    std::size_t column;  // 1-based
};

inline std::vector<Token> tokenize_line(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') break;
        if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' &&
               line[i] != '#')
            ++i;
        out.push_back({std::string(line.substr(start, i - start)), start + 1});
    }
    return out;
}

} // namespace detail

// Parses the line-based format above. Syntax problems report a 1-based
// line and column; references to wires defined on a *later* line are
// cycle errors, references to wires never defined at all are unknown-wire
// errors.
inline Netlist parse_netlist(std::string_view text) {
    using detail::Token;

    // First pass: the set of lines on which each wire is defined, so a
    // forward reference can be told apart from a missing one.
    std::map<std::string, std::size_t> defined_on_line;
    {
        std::size_t lineno = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t eol = text.find('\n', pos);
            std::string_view line =
                text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
            ++lineno;
            auto toks = detail::tokenize_line(line);
            if (!toks.empty()) {
                if (toks[0].text == "INPUT")
                    for (std::size_t i = 1; i < toks.size(); ++i)
                        defined_on_line.emplace(toks[i].text, lineno);
                else if (toks[0].text == "GATE" && toks.size() >= 2)
                    defined_on_line.emplace(toks[1].text, lineno);
            }
            if (eol == std::string_view::npos) break;
            pos = eol + 1;
        }
    }

    Netlist net;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    auto syntax = [&](std::size_t col, const std::string& msg) -> Error {
        return Error(Errc::syntax,
                     "line " + std::to_string(lineno) + ", column " + std::to_string(col) + ": " +
                         msg,
                     lineno, col);
    };
    auto check_ident = [&](const Token& t) {
        if (!detail::is_identifier(t.text))
            throw syntax(t.column, "'" + t.text + "' is not a valid identifier");
    };
    auto resolve_fanin = [&](const Token& t) -> std::uint32_t {
        check_ident(t);
        if (auto id = net.wire_id(t.text)) return *id;
        auto later = defined_on_line.find(t.text);
        if (later != defined_on_line.end())
            throw Error(Errc::cycle,
                        "line " + std::to_string(lineno) + ", column " +
                            std::to_string(t.column) + ": wire '" + t.text +
                            "' is used before its definition on line " +
                            std::to_string(later->second),
                        lineno, t.column);
        throw Error(Errc::unknown_wire,
                    "line " + std::to_string(lineno) + ", column " + std::to_string(t.column) +
                        ": wire '" + t.text + "' is never defined",
                    lineno, t.column);
    };

    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        ++lineno;
        auto toks = detail::tokenize_line(line);
        if (!toks.empty()) {
            const std::string& directive = toks[0].text;
            if (directive == "INPUT") {
                if (toks.size() < 2) throw syntax(toks[0].column, "INPUT needs at least one name");
                for (std::size_t i = 1; i < toks.size(); ++i) {
                    check_ident(toks[i]);
                    if (net.wire_id(toks[i].text))
                        throw syntax(toks[i].column, "wire '" + toks[i].text + "' is defined twice");
                    net.add_input(toks[i].text);
                }
            } else if (directive == "GATE") {
                if (toks.size() < 3) throw syntax(toks[0].column, "GATE needs an id and a kind");
                check_ident(toks[1]);
                auto k = gate_kind_from(toks[2].text);
                if (!k) throw syntax(toks[2].column, "unknown gate kind '" + toks[2].text + "'");
                std::size_t want = static_cast<std::size_t>(gate_arity(*k));
                if (toks.size() - 3 != want)
                    throw Error(Errc::arity,
                                "line " + std::to_string(lineno) + ": " + toks[2].text +
                                    " takes " + std::to_string(want) + " input(s), got " +
                                    std::to_string(toks.size() - 3),
                                lineno, toks[2].column);
                if (net.wire_id(toks[1].text))
                    throw syntax(toks[1].column, "wire '" + toks[1].text + "' is defined twice");
                std::array<std::uint32_t, 2> fanin{0, 0};
                for (std::size_t i = 0; i < want; ++i) fanin[i] = resolve_fanin(toks[3 + i]);
                net.add_gate_ids(toks[1].text, *k, fanin);
            } else if (directive == "OUTPUT") {
                if (toks.size() < 2)
                    throw syntax(toks[0].column, "OUTPUT needs at least one name");
                for (std::size_t i = 1; i < toks.size(); ++i) {
                    check_ident(toks[i]);
                    if (!net.wire_id(toks[i].text)) {
                        auto later = defined_on_line.find(toks[i].text);
                        if (later != defined_on_line.end())
                            throw Error(Errc::cycle,
                                        "line " + std::to_string(lineno) + ": output '" +
                                            toks[i].text + "' is used before its definition",
                                        lineno, toks[i].column);
                        throw Error(Errc::unknown_wire,
                                    "line " + std::to_string(lineno) + ": output '" +
                                        toks[i].text + "' is never defined",
                                    lineno, toks[i].column);
                    }
                    net.add_output(toks[i].text);
                }
            } else {
                throw syntax(toks[0].column, "unknown directive '" + directive + "'");
            }
        }
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    if (net.inputs().empty() && net.gates().empty())
        throw Error(Errc::syntax, "netlist is empty", lineno, 1);
    return net;
}

// Canonical text form; parse_netlist(print_netlist(n)) reproduces n.
inline std::string print_netlist(const Netlist& net) {
    std::ostringstream out;
    auto wire_name = [&](std::uint32_t id) -> const std::string& {
        if (id < net.inputs().size()) return net.inputs()[id];
        return net.gates()[id - net.inputs().size()].name;
    };
    if (!net.inputs().empty()) {
        out << "INPUT";
        for (const auto& name : net.inputs()) out << ' ' << name;
        out << '\n';
    }
    for (const auto& g : net.gates()) {
        out << "GATE " << g.name << ' ' << to_string(g.kind);
        for (int i = 0; i < gate_arity(g.kind); ++i) out << ' ' << wire_name(g.fanin[i]);
        out << '\n';
    }
    if (!net.outputs().empty()) {
        out << "OUTPUT";
        for (const auto& name : net.outputs()) out << ' ' << name;
        out << '\n';
    }
    return out.str();
}

inline bool eval_gate(GateKind k, bool a, bool b) {
    switch (k) {
        case GateKind::AND: return a && b;
        case GateKind::OR: return a || b;
        case GateKind::XOR: return a != b;
        case GateKind::NAND: return !(a && b);
        case GateKind::NOR: return !(a || b);
        case GateKind::NOT: return !a;
        case GateKind::BUF: return a;
    }
    return false;
}

// Single-pass evaluation; `bits` holds one value per input wire, in input
// order, and the returned vector holds one value per output, in output
// order.
inline std::vector<std::uint8_t> simulate_bits(const Netlist& net,
                                               std::span<const std::uint8_t> bits) {
    if (bits.size() != net.inputs().size())
        throw Error(Errc::missing_input,
                    "expected " + std::to_string(net.inputs().size()) + " input bits, got " +
                        std::to_string(bits.size()));
    std::vector<std::uint8_t> value(net.wire_count());
    for (std::size_t i = 0; i < bits.size(); ++i) value[i] = bits[i] ? 1 : 0;
    std::size_t base = net.inputs().size();
    for (std::size_t g = 0; g < net.gates().size(); ++g) {
        const Gate& gate = net.gates()[g];
        value[base + g] =
            eval_gate(gate.kind, value[gate.fanin[0]] != 0, value[gate.fanin[1]] != 0) ? 1 : 0;
    }
    std::vector<std::uint8_t> out;
    out.reserve(net.output_ids().size());
    for (auto id : net.output_ids()) out.push_back(value[id]);
    return out;
}

// Name-keyed convenience wrapper. Every input must be assigned; assigning
// a name that is not an input is rejected.
inline std::map<std::string, bool> simulate(const Netlist& net,
                                            const std::map<std::string, bool>& assignment) {
    std::vector<std::uint8_t> bits(net.inputs().size(), 0);
    std::size_t used = 0;
    for (const auto& [name, bit] : assignment) {
        auto id = net.wire_id(name);
        if (!id || !net.is_input_id(*id))
            throw Error(Errc::unknown_wire, "'" + name + "' is not an input wire");
        bits[*id] = bit ? 1 : 0;
        ++used;
    }
    if (used != net.inputs().size())
        for (const auto& name : net.inputs())
            if (!assignment.count(name))
                throw Error(Errc::missing_input, "input '" + name + "' is unassigned");
    auto out_bits = simulate_bits(net, bits);
    std::map<std::string, bool> out;
    for (std::size_t i = 0; i < net.outputs().size(); ++i)
        out[net.outputs()[i]] = out_bits[i] != 0;
    return out;
}

} // namespace rnscmp
