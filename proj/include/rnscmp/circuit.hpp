#pragma once

// Gate-level realization of the cluster finder.
//
// A BitLayout fixes how the three residues map onto a netlist's input
// wires: wire -> (residue index, bit position). Valid encodings are the
// bit patterns produced by actual values n in [0, M); residue fields may
// carry pad bits above ceil(log2 p_i), which are always zero for valid
// encodings. Bit patterns that are not valid encodings are don't-cares:
// synthesis leaves them unconstrained and equivalence checking never
// scores them.
//
// paper_circuit_235() embeds the published hand-drawn comparator circuit
// for moduli (2,3,5), transcribed exactly as drawn, including the N21
// input no gate reads. Its bit labeling is ambiguous in the source
// figure, so search_bit_layouts() scores it under every candidate layout
// instead of assuming one.

#include <algorithm>
#include <cstdint>
#include <bit>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <rnscmp/cluster.hpp>
#include <rnscmp/moduli.hpp>
#include <rnscmp/netlist.hpp>

namespace rnscmp {

struct BitRef {
    int residue = 1;  // 1, 2 or 3
    int bit = 0;      // power-of-two exponent within the residue's code

    friend auto operator<=>(const BitRef&, const BitRef&) = default;
};

// Bits per residue needed to hold values in [0, p).
inline int residue_bit_width(std::uint64_t p) {
    return std::max(1, static_cast<int>(std::bit_width(p - 1)));
}

struct BitLayout {
    std::map<std::string, BitRef> assignment;  // input wire -> residue bit
    std::array<int, 3> widths{};               // ceil(log2 p_i) per residue

    friend bool operator==(const BitLayout&, const BitLayout&) = default;
};

// Checks the layout against a moduli set: every real bit position
// (residue i, bit < width_i) must be covered by exactly one wire, no two
// wires may share a position, and widths must match the moduli.
inline void validate_layout(const ModuliSet& ms, const BitLayout& layout) {
    for (int i = 0; i < 3; ++i)
        if (layout.widths[i] != residue_bit_width(ms.moduli()[i]))
            throw Error(Errc::layout_mismatch,
                        "layout width " + std::to_string(layout.widths[i]) + " for residue " +
                            std::to_string(i + 1) + " does not match modulus " +
                            std::to_string(ms.moduli()[i]));
    std::vector<BitRef> seen;
    for (const auto& [wire, ref] : layout.assignment) {
        if (ref.residue < 1 || ref.residue > 3 || ref.bit < 0 || ref.bit > 62)
            throw Error(Errc::layout_mismatch, "wire '" + wire + "' has an invalid bit reference");
        seen.push_back(ref);
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        throw Error(Errc::layout_mismatch, "two wires map to the same residue bit");
    for (int i = 0; i < 3; ++i)
        for (int b = 0; b < layout.widths[i]; ++b)
            if (!std::binary_search(seen.begin(), seen.end(), BitRef{i + 1, b}))
                throw Error(Errc::layout_mismatch,
                            "no wire carries bit " + std::to_string(b) + " of residue " +
                                std::to_string(i + 1));
}

// The default layout used by synthesis: wires x<i>_<b> for bit b of
// residue i, least significant bit first, no pad bits.
inline BitLayout canonical_layout(const ModuliSet& ms) {
    BitLayout layout;
    for (int i = 0; i < 3; ++i) {
        layout.widths[i] = residue_bit_width(ms.moduli()[i]);
        for (int b = 0; b < layout.widths[i]; ++b)
            layout.assignment["x" + std::to_string(i + 1) + "_" + std::to_string(b)] =
                BitRef{i + 1, b};
    }
    return layout;
}

// Layout text form: semicolon-separated residue fields, each listing its
// wires least significant bit first, e.g.
//   1=N11,N12;2=N21,N22;3=N13,N23,N33
inline std::string layout_to_string(const BitLayout& layout) {
    std::ostringstream out;
    for (int i = 0; i < 3; ++i) {
        std::vector<std::pair<int, std::string>> wires;
        for (const auto& [wire, ref] : layout.assignment)
            if (ref.residue == i + 1) wires.emplace_back(ref.bit, wire);
        std::sort(wires.begin(), wires.end());
        if (i) out << ';';
        out << (i + 1) << '=';
        for (std::size_t k = 0; k < wires.size(); ++k) {
            if (k) out << ',';
            out << wires[k].second;
        }
    }
    return out.str();
}

inline BitLayout parse_layout(std::string_view text, const ModuliSet& ms) {
    BitLayout layout;
    for (int i = 0; i < 3; ++i) layout.widths[i] = residue_bit_width(ms.moduli()[i]);
    std::string field;
    std::istringstream fields{std::string(text)};
    bool saw[3] = {false, false, false};
    while (std::getline(fields, field, ';')) {
        auto eq = field.find('=');
        if (eq == std::string::npos)
            throw Error(Errc::layout_mismatch, "layout field '" + field + "' lacks '='");
        std::string lhs = field.substr(0, eq);
        if (lhs != "1" && lhs != "2" && lhs != "3")
            throw Error(Errc::layout_mismatch, "layout residue must be 1, 2 or 3, got '" + lhs + "'");
        int residue = lhs[0] - '0';
        if (saw[residue - 1])
            throw Error(Errc::layout_mismatch, "residue " + lhs + " appears twice in layout");
        saw[residue - 1] = true;
        std::istringstream wires{field.substr(eq + 1)};
        std::string wire;
        int bit = 0;
        while (std::getline(wires, wire, ',')) {
            if (wire.empty())
                throw Error(Errc::layout_mismatch, "empty wire name in layout");
            if (layout.assignment.count(wire))
                throw Error(Errc::layout_mismatch, "wire '" + wire + "' appears twice in layout");
            layout.assignment[wire] = BitRef{residue, bit++};
        }
    }
    validate_layout(ms, layout);
    return layout;
}

// Input bit vector for value n under a layout: wire w mapped to
// (i, b) carries bit b of n mod p_i; unmapped wires read zero.
inline std::vector<std::uint8_t> encode_bits(const Netlist& net, const ModuliSet& ms,
                                             const BitLayout& layout, std::uint64_t n) {
    std::vector<std::uint8_t> bits(net.inputs().size(), 0);
    for (const auto& [wire, ref] : layout.assignment) {
        auto id = net.wire_id(wire);
        if (!id || !net.is_input_id(*id))
            throw Error(Errc::layout_mismatch, "layout wire '" + wire + "' is not a net input");
        std::uint64_t residue = n % ms.moduli()[ref.residue - 1];
        bits[*id] = static_cast<std::uint8_t>((residue >> ref.bit) & 1);
    }
    return bits;
}

// The published comparator circuit for moduli (2,3,5): eleven gates, one
// output, cluster 1 encoded as OUT=0 and cluster 2 as OUT=1. N21 is
// declared but feeds nothing, exactly as in the source figure.
inline Netlist paper_circuit_235() {
    Netlist net;
    for (const char* name : {"N11", "N12", "N21", "N22", "N13", "N23", "N33"})
        net.add_input(name);
    net.add_gate("nand1", GateKind::NAND, "N13", "N23");
    net.add_gate("not1", GateKind::NOT, "N33");
    net.add_gate("myand1", GateKind::AND, "N13", "nand1");
    net.add_gate("myand2", GateKind::AND, "nand1", "N23");
    net.add_gate("myor", GateKind::OR, "N33", "myand1");
    net.add_gate("myand3", GateKind::AND, "myand2", "not1");
    net.add_gate("xor2", GateKind::XOR, "myor", "N12");
    net.add_gate("xor1", GateKind::XOR, "N22", "myand3");
    net.add_gate("xor4", GateKind::XOR, "N11", "N13");
    net.add_gate("myand4", GateKind::AND, "xor2", "xor1");
    net.add_gate("OUT", GateKind::XOR, "myand4", "xor4");
    net.add_output("OUT");
    return net;
}

// Wire-name groups of the published circuit, used to seed the layout
// search: (N11,N12), (N21,N22) and (N13,N23,N33).
inline std::vector<std::vector<std::string>> paper_input_groups_235() {
    return {{"N11", "N12"}, {"N21", "N22"}, {"N13", "N23", "N33"}};
}

// Plain sum-of-products synthesis of the cluster finder over the valid
// encodings of a layout. Output wires OUT0, OUT1, ... carry the binary
// code of (m - 1), least significant first. No minimization is applied.
inline Netlist synthesize_cluster_circuit(const ModuliSet& ms, const BitLayout& layout) {
    validate_layout(ms, layout);
    // Input order: residue-major, bit order within residue, pads included.
    std::vector<std::pair<BitRef, std::string>> ordered;
    for (const auto& [wire, ref] : layout.assignment) ordered.emplace_back(ref, wire);
    std::sort(ordered.begin(), ordered.end());

    Netlist net;
    for (const auto& [ref, wire] : ordered) net.add_input(wire);

    int out_width = residue_bit_width(ms.p1());
    std::uint64_t m_count = ms.range();

    // Truth table rows: input pattern per valid encoding plus the target
    // cluster code.
    std::vector<std::vector<std::uint8_t>> pattern(static_cast<std::size_t>(m_count));
    std::vector<std::uint64_t> target(static_cast<std::size_t>(m_count));
    for (std::uint64_t n = 0; n < m_count; ++n) {
        pattern[n] = encode_bits(net, ms, layout, n);
        target[n] = cluster_of(ms.encode(n)).value - 1;
    }

    // Shared literal wires: inverters built once per input on demand.
    std::vector<std::string> inverted(net.inputs().size());
    auto literal = [&](std::size_t in, bool positive) -> std::string {
        if (positive) return net.inputs()[in];
        if (inverted[in].empty()) {
            inverted[in] = "inv_" + net.inputs()[in];
            net.add_gate(inverted[in], GateKind::NOT, net.inputs()[in]);
        }
        return inverted[in];
    };

    int serial = 0;
    for (int k = 0; k < out_width; ++k) {
        std::vector<std::string> terms;
        for (std::uint64_t n = 0; n < m_count; ++n) {
            if (((target[n] >> k) & 1) == 0) continue;
            std::string acc = literal(0, pattern[n][0] != 0);
            for (std::size_t in = 1; in < pattern[n].size(); ++in) {
                std::string next = "t" + std::to_string(serial++);
                net.add_gate(next, GateKind::AND, acc, literal(in, pattern[n][in] != 0));
                acc = next;
            }
            terms.push_back(acc);
        }
        std::string out_name = "OUT" + std::to_string(k);
        if (terms.empty()) {
            // Cluster codes sweep every value below p1, so each output bit
            // has at least one minterm; guard anyway with a constant zero.
            net.add_gate(out_name, GateKind::XOR, net.inputs()[0], net.inputs()[0]);
        } else if (terms.size() == 1) {
            net.add_gate(out_name, GateKind::BUF, terms[0]);
        } else {
            std::string acc = terms[0];
            for (std::size_t t = 1; t + 1 < terms.size(); ++t) {
                std::string next = "t" + std::to_string(serial++);
                net.add_gate(next, GateKind::OR, acc, terms[t]);
                acc = next;
            }
            net.add_gate(out_name, GateKind::OR, acc, terms.back());
        }
        net.add_output(out_name);
    }
    return net;
}

struct EquivalenceMismatch {
    std::uint64_t n = 0;
    std::uint64_t expected_cluster = 0;
    std::uint64_t circuit_cluster = 0;

    friend bool operator==(const EquivalenceMismatch&, const EquivalenceMismatch&) = default;
};

struct EquivalenceReport {
    std::uint64_t total = 0;  // valid encodings scored
    std::uint64_t agree = 0;
    std::vector<EquivalenceMismatch> mismatches;

    bool full_agreement() const noexcept { return agree == total; }
};

// Simulates the net on every valid encoding of [0, M) and scores it
// against cluster_of. The net must expose ceil(log2 p1) outputs, read as
// the binary code of (m - 1), least significant output first.
inline EquivalenceReport check_equivalence(const Netlist& net, const ModuliSet& ms,
                                           const BitLayout& layout) {
    validate_layout(ms, layout);
    int out_width = residue_bit_width(ms.p1());
    if (net.outputs().size() != static_cast<std::size_t>(out_width))
        throw Error(Errc::layout_mismatch,
                    "net has " + std::to_string(net.outputs().size()) + " outputs, expected " +
                        std::to_string(out_width));
    for (const auto& [wire, ref] : layout.assignment) {
        auto id = net.wire_id(wire);
        if (!id || !net.is_input_id(*id))
            throw Error(Errc::layout_mismatch, "layout wire '" + wire + "' is not a net input");
    }

    EquivalenceReport report;
    report.total = ms.range();
    for (std::uint64_t n = 0; n < ms.range(); ++n) {
        auto bits = encode_bits(net, ms, layout, n);
        auto out = simulate_bits(net, bits);
        std::uint64_t got = 1;
        for (int k = 0; k < out_width; ++k)
            if (out[k]) got += std::uint64_t{1} << k;
        std::uint64_t expected = cluster_of(ms.encode(n)).value;
        if (got == expected)
            ++report.agree;
        else
            report.mismatches.push_back({n, expected, got});
    }
    return report;
}

struct LayoutSearchResult {
    BitLayout layout;
    EquivalenceReport report;
};

// Enumerates candidate layouts for a netlist whose input wires fall into
// named groups, one group per residue: every assignment of groups to
// residues that leaves enough wires for the residue's bits, times both
// bit orders per group. Results come back sorted by agreement, best
// first.
inline std::vector<LayoutSearchResult> search_bit_layouts(
    const Netlist& net, const ModuliSet& ms, const std::vector<std::vector<std::string>>& groups,
    std::size_t max_layouts = 4096) {
    if (groups.size() != 3)
        throw Error(Errc::layout_mismatch, "layout search needs exactly three wire groups");
    for (const auto& group : groups)
        for (const auto& wire : group) {
            auto id = net.wire_id(wire);
            if (!id || !net.is_input_id(*id))
                throw Error(Errc::layout_mismatch,
                            "group wire '" + wire + "' is not a net input");
        }

    std::array<int, 3> widths{};
    for (int i = 0; i < 3; ++i) widths[i] = residue_bit_width(ms.moduli()[i]);

    std::vector<BitLayout> candidates;
    std::array<int, 3> perm{0, 1, 2};  // group g encodes residue perm[g]+1
    std::sort(perm.begin(), perm.end());
    do {
        bool fits = true;
        for (int g = 0; g < 3; ++g)
            if (groups[g].size() < static_cast<std::size_t>(widths[perm[g]])) fits = false;
        if (!fits) continue;
        int order_choices[3];
        for (int g = 0; g < 3; ++g) order_choices[g] = groups[g].size() > 1 ? 2 : 1;
        for (int o0 = 0; o0 < order_choices[0]; ++o0)
            for (int o1 = 0; o1 < order_choices[1]; ++o1)
                for (int o2 = 0; o2 < order_choices[2]; ++o2) {
                    int reversed[3] = {o0, o1, o2};
                    BitLayout layout;
                    layout.widths = widths;
                    for (int g = 0; g < 3; ++g) {
                        std::vector<std::string> wires = groups[g];
                        if (reversed[g]) std::reverse(wires.begin(), wires.end());
                        for (std::size_t b = 0; b < wires.size(); ++b)
                            layout.assignment[wires[b]] =
                                BitRef{perm[g] + 1, static_cast<int>(b)};
                    }
                    candidates.push_back(std::move(layout));
                    if (candidates.size() > max_layouts)
                        throw Error(Errc::search_too_large,
                                    "layout search exceeds cap of " +
                                        std::to_string(max_layouts) + " candidates");
                }
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::vector<LayoutSearchResult> results;
    results.reserve(candidates.size());
    for (auto& layout : candidates) {
        auto report = check_equivalence(net, ms, layout);
        results.push_back({std::move(layout), std::move(report)});
    }
    std::stable_sort(results.begin(), results.end(),
                     [](const LayoutSearchResult& a, const LayoutSearchResult& b) {
                         return a.report.agree > b.report.agree;
                     });
    return results;
}

} // namespace rnscmp
