#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "matchroid/error.hpp"
#include "matchroid/io.hpp"
#include "matchroid/solver.hpp"

namespace matchroid::cli {

// Exit codes: 0 = positive outcome (injection found, verification passed,
// axioms hold), 1 = negative mathematical outcome (kernel witness,
// verification failure, axiom violation, non-base input), 2 = usage or
// input error. Mathematical outcomes never map to 2.

enum class Format { json, text };

struct CliConfig {
    std::string command;
    std::vector<std::string> inputs;
    std::optional<FieldSpec> field_override;
    std::string field_name; // for gen
    std::size_t rows = 0, cols = 0;
    double density = 1.0;
    std::uint64_t seed = 0;
    std::size_t axiom_cap = 10;
    std::string b0_text, b1_text;
    std::string out_path;
    Format format = Format::json;
};

namespace detail {

inline std::string read_input(const std::string& path, std::istream& in) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) throw parse_error("cannot open input file '" + path + "'");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

inline SparseMatrix load_matrix(const CliConfig& cfg, const std::string& path, std::istream& in) {
    io::ojson j = io::detail::parse_json(read_input(path, in));
    if (cfg.field_override) {
        if (!j.is_object()) throw parse_error("matrix must be a JSON object");
        j["field"] = io::field_spec_to_json(*cfg.field_override);
    }
    return io::matrix_from_json(j);
}

inline void emit(const CliConfig& cfg, std::ostream& out, const io::ojson& payload,
                 const std::string& text_form) {
    if (cfg.format == Format::json)
        out << payload.dump() << "\n";
    else
        out << text_form;
}

inline std::string map_as_text(const std::string& result,
                               const std::vector<std::pair<std::string, std::string>>& pairs,
                               const char* arrow = "->") {
    std::size_t width = 0;
    for (const auto& [s, t] : pairs) width = std::max(width, s.size());
    std::ostringstream out;
    out << "result: " << result << "\n";
    for (const auto& [s, t] : pairs)
        out << "  " << std::left << std::setw(static_cast<int>(width)) << s << " " << arrow << " " << t
            << "\n";
    return out.str();
}

inline int emit_injection(const CliConfig& cfg, std::ostream& out, const char* result,
                          const InjectionMap& phi) {
    io::ojson payload;
    payload["result"] = result;
    payload["map"] = io::injection_to_json(phi);
    emit(cfg, out, payload, map_as_text(result, phi.pairs()));
    return 0;
}

inline int emit_witness(const CliConfig& cfg, std::ostream& out, const KernelWitness& w) {
    io::ojson payload;
    payload["result"] = "kernel_witness";
    payload["assignment"] = io::witness_to_json(w);
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t c = 0; c < w.col_ids().size(); ++c)
        pairs.emplace_back(w.col_ids()[c], w.values()[c].str());
    emit(cfg, out, payload, map_as_text("kernel_witness", pairs, "="));
    return 1;
}

inline io::ojson violation_to_json(const AxiomViolation& v) {
    static const char* roman[] = {"I", "II", "III", "IV"};
    io::ojson out;
    out["axiom"] = roman[v.axiom - 1];
    switch (v.axiom) {
    case 2:
        out["S"] = v.set_a;
        out["subset"] = v.set_b;
        break;
    case 3:
        out["J"] = v.set_a;
        out["I"] = v.set_b;
        break;
    case 4:
        out["X"] = v.set_a;
        out["I"] = v.set_b;
        break;
    default:
        break;
    }
    out["detail"] = v.detail;
    return out;
}

inline std::string join_ids(const std::vector<std::string>& ids) {
    std::string out = "{";
    for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? "," : "") + ids[i];
    return out + "}";
}

inline int run_solve(const CliConfig& cfg, std::istream& in, std::ostream& out) {
    const SparseMatrix m = load_matrix(cfg, cfg.inputs.at(0), in);
    const SolveOutcome outcome = solve_variable_equation_matching(m);
    if (outcome.found_injection()) return emit_injection(cfg, out, "injection", *outcome.injection);
    return emit_witness(cfg, out, *outcome.witness);
}

inline int run_verify(const CliConfig& cfg, std::istream& in, std::ostream& out) {
    const SparseMatrix m = load_matrix(cfg, cfg.inputs.at(0), in);
    const InjectionMap phi = io::parse_injection(read_input(cfg.inputs.at(1), in));
    if (verify_injection(m, phi)) {
        emit(cfg, out, io::ojson{{"result", "verified"}}, "result: verified\n");
        return 0;
    }
    emit(cfg, out, io::ojson{{"result", "verification_failed"}}, "result: verification_failed\n");
    return 1;
}

inline int run_rank(const CliConfig& cfg, std::istream& in, std::ostream& out) {
    const SparseMatrix m = load_matrix(cfg, cfg.inputs.at(0), in);
    const std::size_t r = rank(m);
    emit(cfg, out, io::ojson{{"result", "rank"}, {"value", r}},
         "result: rank\n  value = " + std::to_string(r) + "\n");
    return 0;
}

inline int run_kernel(const CliConfig& cfg, std::istream& in, std::ostream& out) {
    const SparseMatrix m = load_matrix(cfg, cfg.inputs.at(0), in);
    if (const auto w = kernel_witness(m)) return emit_witness(cfg, out, *w);
    emit(cfg, out, io::ojson{{"result", "trivial_kernel"}}, "result: trivial_kernel\n");
    return 0;
}

inline int run_exchange(const CliConfig& cfg, std::istream& in, std::ostream& out, bool dual_route) {
    const io::MatroidFile file = io::parse_matroid(read_input(cfg.inputs.at(0), in));
    const auto b0 = io::parse_id_array(cfg.b0_text);
    const auto b1 = io::parse_id_array(cfg.b1_text);
    const InjectionMap f = dual_route ? dual_base_exchange(file.matroid, b0, b1)
                                      : base_exchange_bijection(file.matroid, b0, b1);
    return emit_injection(cfg, out, "bijection", f);
}

inline int run_axioms(const CliConfig& cfg, std::istream& in, std::ostream& out) {
    const io::MatroidFile file = io::parse_matroid(read_input(cfg.inputs.at(0), in));
    const AxiomReport report = check_axioms(file.matroid, cfg.axiom_cap);
    if (report.all_hold()) {
        emit(cfg, out, io::ojson{{"result", "axioms_hold"}}, "result: axioms_hold\n");
        return 0;
    }
    io::ojson payload;
    payload["result"] = "axiom_violation";
    io::ojson list = io::ojson::array();
    std::ostringstream text;
    text << "result: axiom_violation\n";
    static const char* roman[] = {"I", "II", "III", "IV"};
    for (const auto& v : report.violations) {
        list.push_back(violation_to_json(v));
        text << "  axiom " << roman[v.axiom - 1];
        if (v.axiom == 3) text << ": J=" << join_ids(v.set_a) << " I=" << join_ids(v.set_b);
        if (v.axiom == 2) text << ": S=" << join_ids(v.set_a) << " subset=" << join_ids(v.set_b);
        if (v.axiom == 4) text << ": X=" << join_ids(v.set_a) << " I=" << join_ids(v.set_b);
        text << " (" << v.detail << ")\n";
    }
    payload["violations"] = std::move(list);
    if (report.truncated) payload["truncated"] = true;
    emit(cfg, out, payload, text.str());
    return 1;
}

inline int run_gen(const CliConfig& cfg, std::ostream& out) {
    const FieldSpec field = io::parse_field_name(cfg.field_name);
    const SparseMatrix m = generate_instance(field, cfg.rows, cfg.cols, cfg.density, cfg.seed);
    const std::string rendered = io::render_matrix(m);
    if (cfg.out_path.empty() || cfg.out_path == "-") {
        out << rendered;
    } else {
        std::ofstream file(cfg.out_path, std::ios::binary);
        if (!file) throw parse_error("cannot open output file '" + cfg.out_path + "'");
        file << rendered;
    }
    return 0;
}

inline int dispatch(const CliConfig& cfg, std::istream& in, std::ostream& out) {
    if (cfg.command == "solve") return run_solve(cfg, in, out);
    if (cfg.command == "verify") return run_verify(cfg, in, out);
    if (cfg.command == "rank") return run_rank(cfg, in, out);
    if (cfg.command == "kernel") return run_kernel(cfg, in, out);
    if (cfg.command == "exchange") return run_exchange(cfg, in, out, false);
    if (cfg.command == "dual-exchange") return run_exchange(cfg, in, out, true);
    if (cfg.command == "axioms") return run_axioms(cfg, in, out);
    if (cfg.command == "gen") return run_gen(cfg, out);
    throw parameter_error("unknown command '" + cfg.command + "'");
}

} // namespace detail

/// Runs one command. `args` excludes the program name. Returns the exit code.
inline int run(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact matroid and matching toolkit"};
    app.require_subcommand(1);

    CliConfig cfg;
    std::string field_override_text;

    const auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", [&cfg](const std::vector<std::string>& vals) {
               if (vals[0] == "json")
                   cfg.format = Format::json;
               else if (vals[0] == "text")
                   cfg.format = Format::text;
               else
                   return false;
               return true;
           },
           "output format: json (default) or text");
    };
    const auto add_field_override = [&](CLI::App* sub) {
        sub->add_option("--field", field_override_text, "reinterpret the matrix over this field (Q, GF<p>)");
    };
    const auto add_matrix_input = [&](CLI::App* sub) {
        sub->add_option("input", cfg.inputs, "matrix file (\"-\" for stdin)")->required()->expected(1);
    };

    CLI::App* solve = app.add_subcommand("solve", "decide the system and build the injection");
    add_matrix_input(solve);
    add_field_override(solve);
    add_format(solve);

    CLI::App* verify = app.add_subcommand("verify", "check an injection against a matrix");
    verify->add_option("input", cfg.inputs, "matrix file then injection file")->required()->expected(2);
    add_field_override(verify);
    add_format(verify);

    CLI::App* rank_cmd = app.add_subcommand("rank", "exact rank of a matrix");
    add_matrix_input(rank_cmd);
    add_field_override(rank_cmd);
    add_format(rank_cmd);

    CLI::App* kernel_cmd = app.add_subcommand("kernel", "kernel witness of a matrix, if any");
    add_matrix_input(kernel_cmd);
    add_field_override(kernel_cmd);
    add_format(kernel_cmd);

    CLI::App* exchange_cmd = app.add_subcommand("exchange", "base exchange bijection");
    exchange_cmd->add_option("input", cfg.inputs, "matroid file")->required()->expected(1);
    exchange_cmd->add_option("--b0", cfg.b0_text, "first base, JSON id array")->required();
    exchange_cmd->add_option("--b1", cfg.b1_text, "second base, JSON id array")->required();
    add_format(exchange_cmd);

    CLI::App* dual_exchange_cmd =
        app.add_subcommand("dual-exchange", "base exchange through the contract/delete/dual pipeline");
    dual_exchange_cmd->add_option("input", cfg.inputs, "matroid file")->required()->expected(1);
    dual_exchange_cmd->add_option("--b0", cfg.b0_text, "first base, JSON id array")->required();
    dual_exchange_cmd->add_option("--b1", cfg.b1_text, "second base, JSON id array")->required();
    add_format(dual_exchange_cmd);

    CLI::App* axioms_cmd = app.add_subcommand("axioms", "exhaustive matroid axiom check");
    axioms_cmd->add_option("input", cfg.inputs, "matroid file")->required()->expected(1);
    axioms_cmd->add_option("--cap", cfg.axiom_cap, "largest ground size accepted (default 10, max 16)");
    add_format(axioms_cmd);

    CLI::App* gen_cmd = app.add_subcommand("gen", "generate a trivial-kernel instance");
    gen_cmd->add_option("--field", cfg.field_name, "Q, GF<p> or GF(<p>)")->required();
    gen_cmd->add_option("--rows", cfg.rows, "number of rows")->required();
    gen_cmd->add_option("--cols", cfg.cols, "number of columns")->required();
    gen_cmd->add_option("--density", cfg.density, "target nonzero density in (0, 1], default 1");
    gen_cmd->add_option("--seed", cfg.seed, "RNG seed, default 0");
    gen_cmd->add_option("--out", cfg.out_path, "output path (default stdout)");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    for (CLI::App* sub : app.get_subcommands()) cfg.command = sub->get_name();

    try {
        if (!field_override_text.empty()) cfg.field_override = io::parse_field_name(field_override_text);
        return detail::dispatch(cfg, in, out);
    } catch (const not_a_base& e) {
        io::ojson payload{{"result", "not_a_base"}, {"input", e.input()}, {"detail", e.what()}};
        detail::emit(cfg, out, payload,
                     "result: not_a_base\n  input = " + e.input() + "\n  " + std::string(e.what()) + "\n");
        return 1;
    } catch (const not_independent& e) {
        io::ojson payload{{"result", "not_independent"}, {"detail", e.what()}};
        detail::emit(cfg, out, payload, "result: not_independent\n  " + std::string(e.what()) + "\n");
        return 1;
    } catch (const internal_contract_violation& e) {
        io::ojson payload{{"result", "internal_contract_violation"}, {"detail", e.what()}};
        detail::emit(cfg, out, payload,
                     "result: internal_contract_violation\n  " + std::string(e.what()) + "\n");
        return 1;
    } catch (const error& e) {
        // parse, parameter, subset, element, cap and field errors
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace matchroid::cli
