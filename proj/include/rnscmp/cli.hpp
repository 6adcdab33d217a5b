#pragma once

// Command-line surface. Every subcommand is a thin adapter over the
// library; run_cli exists so tests can drive the exact argv surface
// without spawning a process.
//
// Exit codes: 0 success, 1 domain error or mismatch found, 2 usage error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <rnscmp/rnscmp.hpp>

namespace rnscmp::cli {

// Flag-level problems that are not CLI11 parse errors (bad --moduli
// syntax, malformed config, conflicting flags). Mapped to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::uint64_t parse_u64(const std::string& text, const std::string& what) {
    std::uint64_t value = 0;
    std::size_t used = 0;
    try {
        value = std::stoull(text, &used);
    } catch (const std::exception&) {
        throw UsageError(what + ": '" + text + "' is not an unsigned integer");
    }
    if (used != text.size())
        throw UsageError(what + ": '" + text + "' is not an unsigned integer");
    return value;
}

inline std::array<std::uint64_t, 3> parse_triple(const std::string& text,
                                                 const std::string& what) {
    std::array<std::uint64_t, 3> out{};
    std::istringstream in(text);
    std::string part;
    int k = 0;
    while (std::getline(in, part, ',')) {
        if (k == 3) throw UsageError(what + " wants exactly three comma-separated values");
        out[k++] = parse_u64(part, what);
    }
    if (k != 3) throw UsageError(what + " wants exactly three comma-separated values");
    return out;
}

struct Config {
    std::optional<std::array<std::uint64_t, 3>> moduli;
    std::optional<std::uint64_t> exhaustive_ceiling;
};

inline Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    Config cfg;
    try {
        if (j.contains("moduli")) {
            auto v = j["moduli"].get<std::vector<std::uint64_t>>();
            if (v.size() != 3) throw UsageError("config 'moduli' wants three entries");
            cfg.moduli = std::array<std::uint64_t, 3>{v[0], v[1], v[2]};
        }
        if (j.contains("exhaustive_ceiling"))
            cfg.exhaustive_ceiling = j["exhaustive_ceiling"].get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("config file '" + path + "' has a bad schema: " + e.what());
    }
    return cfg;
}

// Shared --moduli/--config pair. Inline flags override config values.
struct ModuliArgs {
    std::string moduli_text;
    std::string config_path;

    void attach(CLI::App* cmd) {
        cmd->add_option("--moduli", moduli_text, "moduli set as p1,p2,p3");
        cmd->add_option("--config", config_path, "JSON config file with {\"moduli\": [p1,p2,p3]}");
    }

    Config config() const {
        return config_path.empty() ? Config{} : load_config(config_path);
    }

    std::array<std::uint64_t, 3> triple() const {
        if (!moduli_text.empty()) return parse_triple(moduli_text, "--moduli");
        if (auto cfg = config(); cfg.moduli) return *cfg.moduli;
        throw UsageError("no moduli given; pass --moduli p1,p2,p3 or --config file.json");
    }

    ModuliSet resolve() const {
        auto t = triple();
        return ModuliSet(t[0], t[1], t[2]);
    }
};

inline RnsNumber number_from_flag(const ModuliSet& ms, const std::string& text,
                                  const std::string& what) {
    auto t = parse_triple(text, what);
    return ms.number(t[0], t[1], t[2]);
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error(Errc::io, "cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw Error(Errc::io, "failed writing '" + path + "'");
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using detail::ModuliArgs;

    CLI::App app{"Magnitude comparison for 3-moduli residue number systems"};
    app.name("rnscmp");
    app.require_subcommand(1);

    // encode / decode / cluster / compare -------------------------------
    auto* cmd_encode = app.add_subcommand("encode", "encode an integer to residues");
    ModuliArgs encode_ms;
    encode_ms.attach(cmd_encode);
    std::string encode_value;
    cmd_encode->add_option("--value", encode_value, "integer in [0, M)")->required();

    auto* cmd_decode = app.add_subcommand("decode", "decode residues to an integer");
    ModuliArgs decode_ms;
    decode_ms.attach(cmd_decode);
    std::string decode_residues;
    cmd_decode->add_option("--residues", decode_residues, "residues x1,x2,x3")->required();

    auto* cmd_cluster = app.add_subcommand("cluster", "cluster index of a residue triple");
    ModuliArgs cluster_ms;
    cluster_ms.attach(cmd_cluster);
    std::string cluster_residues;
    cmd_cluster->add_option("--residues", cluster_residues, "residues x1,x2,x3")->required();

    auto* cmd_compare = app.add_subcommand("compare", "compare two residue triples");
    ModuliArgs compare_ms;
    compare_ms.attach(cmd_compare);
    std::string compare_x, compare_y;
    cmd_compare->add_option("--x", compare_x, "left operand x1,x2,x3")->required();
    cmd_compare->add_option("--y", compare_y, "right operand y1,y2,y3")->required();

    // verify ------------------------------------------------------------
    auto* cmd_verify = app.add_subcommand("verify", "sweep solvers against positional oracles");
    ModuliArgs verify_ms;
    verify_ms.attach(cmd_verify);
    bool verify_grid = false;
    std::string verify_mode = "exhaustive";
    std::uint64_t verify_seed = 12345;
    std::uint64_t verify_samples = 100000;
    std::uint64_t verify_ceiling = 0;  // 0: config or default
    std::string verify_json;
    cmd_verify->add_flag("--grid", verify_grid, "verify the default moduli grid");
    cmd_verify->add_option("--mode", verify_mode, "exhaustive or random")
        ->check(CLI::IsMember({"exhaustive", "random"}));
    cmd_verify->add_option("--seed", verify_seed, "seed for sampled sweeps");
    cmd_verify->add_option("--samples", verify_samples, "sample count in random mode");
    cmd_verify->add_option("--ceiling", verify_ceiling, "max M for exhaustive mode");
    cmd_verify->add_option("--json", verify_json, "write a machine-readable report here");

    // bench -------------------------------------------------------------
    auto* cmd_bench = app.add_subcommand("bench", "time the three comparators");
    ModuliArgs bench_ms;
    bench_ms.attach(cmd_bench);
    std::uint64_t bench_pairs = 100000;
    std::uint64_t bench_seed = 42;
    std::string bench_out;
    cmd_bench->add_option("--pairs", bench_pairs, "operand pairs per method");
    cmd_bench->add_option("--seed", bench_seed, "operand stream seed");
    cmd_bench->add_option("--out", bench_out, "CSV output path (stdout when absent)");

    // circuit -----------------------------------------------------------
    auto* cmd_circuit = app.add_subcommand("circuit", "gate-level cluster finder tools");
    cmd_circuit->require_subcommand(1);

    auto* cmd_synth = cmd_circuit->add_subcommand("synth", "synthesize a cluster circuit");
    ModuliArgs synth_ms;
    synth_ms.attach(cmd_synth);
    std::string synth_layout, synth_out;
    cmd_synth->add_option("--layout", synth_layout, "bit layout (default: canonical)");
    cmd_synth->add_option("--out", synth_out, "netlist output path (stdout when absent)");

    auto* cmd_sim = cmd_circuit->add_subcommand("sim", "simulate a netlist once");
    std::string sim_net, sim_vector, sim_assign;
    bool sim_paper = false;
    cmd_sim->add_option("--net", sim_net, "netlist file");
    cmd_sim->add_flag("--paper-235", sim_paper, "use the built-in published (2,3,5) circuit");
    cmd_sim->add_option("--vector", sim_vector, "input bits in input order, e.g. 0101011");
    cmd_sim->add_option("--assign", sim_assign, "named bits, e.g. a=1,b=0");

    auto* cmd_check = cmd_circuit->add_subcommand("check", "score a netlist against cluster_of");
    ModuliArgs check_ms;
    check_ms.attach(cmd_check);
    std::string check_net, check_layout;
    bool check_paper = false;
    cmd_check->add_option("--net", check_net, "netlist file");
    cmd_check->add_flag("--paper-235", check_paper, "use the built-in published (2,3,5) circuit");
    cmd_check->add_option("--layout", check_layout, "bit layout (default: canonical)");

    auto* cmd_search = cmd_circuit->add_subcommand("search", "rank all candidate bit layouts");
    ModuliArgs search_ms;
    search_ms.attach(cmd_search);
    std::string search_net, search_groups;
    bool search_paper = false;
    std::size_t search_max = 4096;
    cmd_search->add_option("--net", search_net, "netlist file");
    cmd_search->add_flag("--paper-235", search_paper,
                         "use the built-in published (2,3,5) circuit");
    cmd_search->add_option("--groups", search_groups,
                           "wire groups, e.g. N11,N12;N21,N22;N13,N23,N33");
    cmd_search->add_option("--max-layouts", search_max, "candidate cap");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_encode->parsed()) {
            ModuliSet ms = encode_ms.resolve();
            std::uint64_t n = detail::parse_u64(encode_value, "--value");
            RnsNumber x = ms.encode(n);
            out << x.r1() << ',' << x.r2() << ',' << x.r3() << '\n';
            return 0;
        }

        if (cmd_decode->parsed()) {
            ModuliSet ms = decode_ms.resolve();
            out << decode(detail::number_from_flag(ms, decode_residues, "--residues")) << '\n';
            return 0;
        }

        if (cmd_cluster->parsed()) {
            ModuliSet ms = cluster_ms.resolve();
            out << cluster_of(detail::number_from_flag(ms, cluster_residues, "--residues")).value
                << '\n';
            return 0;
        }

        if (cmd_compare->parsed()) {
            ModuliSet ms = compare_ms.resolve();
            RnsNumber x = detail::number_from_flag(ms, compare_x, "--x");
            RnsNumber y = detail::number_from_flag(ms, compare_y, "--y");
            out << to_string(compare(x, y)) << '\n';
            return 0;
        }

        if (cmd_verify->parsed()) {
            if (verify_grid && !verify_ms.moduli_text.empty())
                throw UsageError("--grid and --moduli are mutually exclusive");
            VerifyOptions opts;
            opts.mode = verify_mode == "random" ? VerifyMode::random : VerifyMode::exhaustive;
            opts.seed = verify_seed;
            opts.samples = verify_samples;
            if (auto cfg = verify_ms.config(); cfg.exhaustive_ceiling)
                opts.exhaustive_ceiling = *cfg.exhaustive_ceiling;
            if (verify_ceiling != 0) opts.exhaustive_ceiling = verify_ceiling;

            std::vector<std::array<std::uint64_t, 3>> sets;
            if (verify_grid)
                sets = default_verify_grid();
            else
                sets.push_back(verify_ms.triple());

            nlohmann::json reports = nlohmann::json::array();
            bool all_ok = true;
            for (const auto& t : sets) {
                ModuliSet ms(t[0], t[1], t[2]);
                VerifyReport report = run_verify(ms, opts);
                out << verify_report_text(report) << '\n';
                reports.push_back(verify_report_json(report));
                all_ok = all_ok && report.ok();
            }
            out << (all_ok ? "verify: OK" : "verify: FAIL") << '\n';
            if (!verify_json.empty())
                detail::write_text_file(verify_json,
                                        (sets.size() == 1 ? reports[0] : reports).dump(2) + "\n");
            return all_ok ? 0 : 1;
        }

        if (cmd_bench->parsed()) {
            ModuliSet ms = bench_ms.resolve();
            auto records = run_bench(ms, bench_pairs, bench_seed);
            std::string csv = bench_csv(records);
            if (bench_out.empty())
                out << csv;
            else
                detail::write_text_file(bench_out, csv);
            bool agree = records[0].outcome_hash == records[1].outcome_hash &&
                         records[1].outcome_hash == records[2].outcome_hash;
            if (!agree) {
                err << "error: methods disagreed on the operand stream\n";
                return 1;
            }
            return 0;
        }

        auto load_net = [&](const std::string& path, bool paper,
                            const char* flag_hint) -> Netlist {
            if (paper && !path.empty())
                throw UsageError(std::string(flag_hint) + ": --net and --paper-235 are mutually exclusive");
            if (paper) return paper_circuit_235();
            if (path.empty())
                throw UsageError(std::string(flag_hint) + ": pass --net FILE or --paper-235");
            return parse_netlist(detail::read_text_file(path));
        };

        if (cmd_synth->parsed()) {
            ModuliSet ms = synth_ms.resolve();
            BitLayout layout = synth_layout.empty() ? canonical_layout(ms)
                                                    : parse_layout(synth_layout, ms);
            Netlist net = synthesize_cluster_circuit(ms, layout);
            std::ostringstream text;
            text << "# cluster circuit for moduli " << ms.p1() << ',' << ms.p2() << ','
                 << ms.p3() << '\n'
                 << "# layout: " << layout_to_string(layout) << '\n'
                 << print_netlist(net);
            if (synth_out.empty())
                out << text.str();
            else
                detail::write_text_file(synth_out, text.str());
            return 0;
        }

        if (cmd_sim->parsed()) {
            Netlist net = load_net(sim_net, sim_paper, "circuit sim");
            std::map<std::string, bool> assignment;
            if (!sim_vector.empty() && !sim_assign.empty())
                throw UsageError("circuit sim: --vector and --assign are mutually exclusive");
            if (!sim_vector.empty()) {
                if (sim_vector.size() != net.inputs().size())
                    throw UsageError("--vector wants exactly " +
                                     std::to_string(net.inputs().size()) + " bits");
                for (std::size_t i = 0; i < sim_vector.size(); ++i) {
                    if (sim_vector[i] != '0' && sim_vector[i] != '1')
                        throw UsageError("--vector bits must be 0 or 1");
                    assignment[net.inputs()[i]] = sim_vector[i] == '1';
                }
            } else if (!sim_assign.empty()) {
                std::istringstream in(sim_assign);
                std::string item;
                while (std::getline(in, item, ',')) {
                    auto eq = item.find('=');
                    if (eq == std::string::npos || eq + 2 != item.size() ||
                        (item[eq + 1] != '0' && item[eq + 1] != '1'))
                        throw UsageError("--assign entries look like wire=0 or wire=1");
                    assignment[item.substr(0, eq)] = item[eq + 1] == '1';
                }
            } else {
                throw UsageError("circuit sim: pass --vector or --assign");
            }
            auto result = simulate(net, assignment);
            for (const auto& name : net.outputs())
                out << name << '=' << (result.at(name) ? 1 : 0) << '\n';
            return 0;
        }

        if (cmd_check->parsed()) {
            ModuliSet ms = check_ms.resolve();
            Netlist net = load_net(check_net, check_paper, "circuit check");
            BitLayout layout = check_layout.empty() ? canonical_layout(ms)
                                                    : parse_layout(check_layout, ms);
            EquivalenceReport report = check_equivalence(net, ms, layout);
            out << "layout: " << layout_to_string(layout) << '\n';
            out << "agreement: " << report.agree << '/' << report.total << '\n';
            std::size_t shown = 0;
            for (const auto& m : report.mismatches) {
                if (shown == 32) {
                    out << "... and " << (report.mismatches.size() - shown) << " more\n";
                    break;
                }
                out << "mismatch n=" << m.n << " expected=" << m.expected_cluster
                    << " got=" << m.circuit_cluster << '\n';
                ++shown;
            }
            return report.full_agreement() ? 0 : 1;
        }

        if (cmd_search->parsed()) {
            ModuliSet ms = search_ms.resolve();
            Netlist net = load_net(search_net, search_paper, "circuit search");
            std::vector<std::vector<std::string>> groups;
            if (!search_groups.empty()) {
                std::istringstream in(search_groups);
                std::string group;
                while (std::getline(in, group, ';')) {
                    std::vector<std::string> wires;
                    std::istringstream win(group);
                    std::string wire;
                    while (std::getline(win, wire, ',')) wires.push_back(wire);
                    if (wires.empty()) throw UsageError("--groups has an empty group");
                    groups.push_back(std::move(wires));
                }
            } else if (search_paper) {
                groups = paper_input_groups_235();
            } else {
                throw UsageError("circuit search: pass --groups for a custom netlist");
            }
            auto results = search_bit_layouts(net, ms, groups, search_max);
            out << "searched " << results.size() << " layouts over moduli (" << ms.p1() << ','
                << ms.p2() << ',' << ms.p3() << ")\n";
            std::size_t rank = 1;
            std::size_t full = 0;
            for (const auto& r : results) {
                out << rank++ << ". " << r.report.agree << '/' << r.report.total << "  "
                    << layout_to_string(r.layout) << '\n';
                if (r.report.full_agreement()) ++full;
            }
            if (full)
                out << "full agreement: " << full << " layout(s)\n";
            else
                out << "full agreement: none\n";
            return 0;
        }

        err << "error: no subcommand selected\n";
        return 2;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace rnscmp::cli
