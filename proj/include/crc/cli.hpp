/**
 * @file cli.hpp
 * @brief The crc command-line front end: analyze, classify, feasibility,
 * coset and generate.
 *
 * Exit status: 0 on success, 1 when the verdict is "not completely regular"
 * or "infeasible", 2 on bad input or any library error.
 */
#pragma once

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "crc/analysis.hpp"
#include "crc/atlas.hpp"
#include "crc/coset.hpp"
#include "crc/error.hpp"
#include "crc/io.hpp"

namespace crc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdict = 1;
inline constexpr int kExitInput = 2;

struct Request {
    std::string command;
    std::string graph;        ///< graph spec text
    std::string array;        ///< intersection array text (feasibility only)
    std::string code_file;
    std::string code_gen;     ///< named construction
    std::string generators;   ///< additive generator file
    int q = 2;
    std::string format = "table";
    std::string ordering = "search";
    std::string out;
    std::string sstar, spectrum, quotient;  ///< feasibility candidates
    std::vector<std::string> generate_args;
    Tolerances tol;
};

namespace detail {

inline std::vector<std::string> split_list(const std::string& text, char sep = ',') {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text + sep) {
        if (ch == sep) {
            const auto t = crc::detail::trim(cur);
            if (!t.empty()) out.push_back(t);
            cur.clear();
        } else if (ch != '{' && ch != '}' && ch != '[' && ch != ']') {
            cur.push_back(ch);
        }
    }
    return out;
}

inline long long parse_int(const std::string& s) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty()) throw InvalidArgument("'" + s + "' is not an integer");
    return v;
}

/// Dense tridiagonal rows "0,7;1,6" -> quotient matrix.
inline QuotientMatrix parse_quotient(const std::string& text) {
    const auto rows = split_list(text, ';');
    const std::size_t n = rows.size();
    if (n == 0) throw InvalidArgument("empty quotient matrix");
    std::vector<long long> g(n, 0), a(n, 0), b(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        auto entries = split_list(rows[i], ',');
        if (entries.size() == 1) entries = split_list(rows[i], ' ');
        if (entries.size() != n) throw InvalidArgument("quotient matrix row " + std::to_string(i) + " needs " + std::to_string(n) + " entries");
        for (std::size_t j = 0; j < n; ++j) {
            const long long v = parse_int(entries[j]);
            if (j + 1 == i) g[i] = v;
            else if (j == i) a[i] = v;
            else if (j == i + 1) b[i] = v;
            else if (v != 0) throw InvalidArgument("quotient matrix is not tridiagonal");
        }
    }
    return QuotientMatrix(g, a, b);
}

inline void row(std::ostream& os, const std::string& key, const std::string& value) {
    os << std::left << std::setw(18) << key << value << '\n';
}

inline AmbientData ambient_for(const Graph& g, const Request& r) {
    return ambient_data(g, r.ordering == "natural" ? OrderingMode::natural : OrderingMode::search, r.tol);
}

struct LoadedCode {
    Code code;
    std::string source;
};

inline LoadedCode load_code(const Request& r) {
    std::optional<Graph> graph;
    if (!r.graph.empty()) graph = generate(r.graph);
    if (!r.code_gen.empty()) return {named_code(r.code_gen, graph), r.code_gen};
    if (r.code_file.empty()) throw InvalidArgument("give --code FILE or --code-gen NAME");
    std::ifstream in(r.code_file);
    if (!in) throw FileFormatError("cannot open code file '" + r.code_file + "'");
    const auto file = parse_code_file(in);
    if (!graph) {
        if (!file.graph) throw FileFormatError("code file has no 'graph:' line and no --graph was given");
        graph = generate(resolve_graph_path(*file.graph, r.code_file));
    }
    return {code_from_tokens(*graph, file), r.code_file};
}

inline void print_analysis_table(std::ostream& os, const Json& j) {
    row(os, "graph", j["graph"]["spec"].get<std::string>() + "  " + j["graph"]["array"].get<std::string>());
    row(os, "code", j["code"]["source"].get<std::string>() + " (" + std::to_string(j["code"]["size"].get<std::size_t>()) + " words)");
    row(os, "completely reg.", j["cr"].get<bool>() ? "yes" : "no");
    row(os, "covering radius", std::to_string(j["rho"].get<std::size_t>()));
    if (!j["cr"].get<bool>()) {
        const auto& w = j["witness"];
        row(os, "witness", "cell " + std::to_string(w["cell"].get<std::size_t>()) + ": " + w["first"].get<std::string>() + " " +
                               w["first_counts"].dump() + " vs " + w["second"].get<std::string>() + " " + w["second_counts"].dump());
        return;
    }
    row(os, "U", j["quotient_matrix"].dump());
    row(os, "Spec(C)", j["spectrum"].dump());
    row(os, "S*(C)", j["sstar"].dump());
    row(os, "strength", j["strength"].is_null() ? "n/a" : j["strength"].dump());
}

inline void print_classification_table(std::ostream& os, const Json& j) {
    print_analysis_table(os, j);
    row(os, "Q-polynomial", std::string(j["qpoly"]["flag"].get<bool>() ? "yes " : "no ") + j["qpoly"]["orderings"].dump());
    row(os, "Leonard", std::string(j["leonard"]["flag"].get<bool>() ? "yes, theta in " : "no ") + j["leonard"]["thetas"].dump());
    row(os, "harmonic t", j["harmonic_t"].is_null() ? "absent" : j["harmonic_t"].dump());
    row(os, "arithmetic t", j["arithmetic_t"].is_null() ? "absent" : j["arithmetic_t"].dump());
    const auto& f = j["filters"];
    auto text = [](const Json& v) { return v.is_null() ? std::string("n/a") : (v.get<bool>() ? "pass" : "FAIL"); };
    row(os, "filters", "lloyd " + text(f["lloyd"]) + ", gap " + text(f["gap"]) + ", parity " + text(f["parity"]));
    row(os, "lambda", j["expansions"]["lambda"].dump());
    row(os, "tau", j["expansions"]["tau"].dump());
}

inline void emit(const Request& r, const Json& j, void (*table)(std::ostream&, const Json&), std::ostream& out) {
    std::ofstream file;
    std::ostream* os = &out;
    if (!r.out.empty()) {
        file.open(r.out);
        if (!file) throw InvalidArgument("cannot write '" + r.out + "'");
        os = &file;
    }
    if (r.format == "json") *os << j.dump(2) << '\n';
    else table(*os, j);
}

inline int do_analyze(const Request& r, bool full, std::ostream& out) {
    const auto [code, source] = load_code(r);
    const auto ambient = ambient_for(code.graph(), r);
    const auto an = analyze(code, ambient, r.tol);
    Json j = analysis_json(code.graph(), code, source, ambient, an);
    if (!an.is_completely_regular()) {
        emit(r, j, print_analysis_table, out);
        return kExitVerdict;
    }
    if (!full) {
        emit(r, j, print_analysis_table, out);
        return kExitOk;
    }
    j = classification_json(std::move(j), classify(code, an, ambient, r.tol));
    emit(r, j, print_classification_table, out);
    return kExitOk;
}

inline void print_feasibility_table(std::ostream& os, const Json& j) {
    row(os, "graph", j["graph"].get<std::string>());
    row(os, "S*(C)", j["sstar"].dump());
    const auto& f = j["filters"];
    auto text = [](const Json& v) { return v.is_null() ? std::string("n/a") : (v.get<bool>() ? "pass" : "FAIL"); };
    row(os, "lloyd", text(f["lloyd"]));
    row(os, "gap", text(f["gap"]));
    row(os, "parity", text(f["parity"]));
    row(os, "feasible", j["feasible"].get<bool>() ? "yes" : "no");
    for (const auto& n : j["notes"]) row(os, "note", n.get<std::string>());
}

inline int do_feasibility(const Request& r, std::ostream& out) {
    std::optional<IntersectionArray> ia;
    std::string label;
    if (!r.array.empty()) {
        ia = IntersectionArray::parse(r.array, false);
        label = ia->to_string();
    } else if (!r.graph.empty()) {
        const auto spec = parse_graph_spec(r.graph);
        ia = family_intersection_array(spec);
        if (!ia) ia = ambient_array(generate(spec));
        label = spec.to_string();
    } else {
        throw InvalidArgument("feasibility needs --graph or --array");
    }
    const auto ambient = ambient_data(*ia, r.ordering == "natural" ? OrderingMode::natural : OrderingMode::search, r.tol);
    const int given = !r.sstar.empty() + !r.spectrum.empty() + !r.quotient.empty();
    if (given != 1) throw InvalidArgument("give exactly one of --sstar, --spectrum, --quotient");
    FeasibilityCandidate cand = std::vector<std::size_t>{};
    if (!r.sstar.empty()) {
        std::vector<std::size_t> idx;
        for (const auto& s : split_list(r.sstar)) {
            const long long v = parse_int(s);
            if (v < 0) throw InvalidArgument("negative index in --sstar");
            idx.push_back(static_cast<std::size_t>(v));
        }
        cand = idx;
    } else if (!r.spectrum.empty()) {
        std::vector<Scalar> vals;
        for (const auto& s : split_list(r.spectrum)) vals.emplace_back(parse_rational(s));
        cand = vals;
    } else {
        cand = parse_quotient(r.quotient);
    }
    const auto rep = feasibility(ambient, cand, r.tol);
    Json j;
    j["graph"] = label + (label == ia->to_string() ? "" : "  " + ia->to_string());
    j["sstar"] = rep.sstar;
    j["filters"] = filters_json(rep.filters);
    j["feasible"] = rep.feasible();
    j["notes"] = rep.notes;
    emit(r, j, print_feasibility_table, out);
    return rep.feasible() ? kExitOk : kExitVerdict;
}

inline void print_coset_table(std::ostream& os, const Json& j) {
    row(os, "code", "length " + j["length"].dump() + ", dimension " + j["dimension"].dump() + ", q = " + j["q"].dump());
    row(os, "cosets", j["cosets"].dump());
    row(os, "CR partition", j["cr_partition"].get<bool>() ? "yes" : "no");
    if (!j["cr_partition"].get<bool>()) return;
    row(os, "U", j["quotient_matrix"].dump());
    row(os, "multiplicity", j["multiplicity"].dump());
    row(os, "coset graph", j["coset_graph"]["array"].is_null() ? "not distance-regular" : j["coset_graph"]["array"].get<std::string>());
    row(os, "L = (U-a0 I)/g1", j["quotient_relation"].is_null() ? "n/a" : (j["quotient_relation"].get<bool>() ? "holds" : "FAILS"));
    row(os, "Q-polynomial", j["coset_graph"]["qpoly"].is_null() ? "n/a" : j["coset_graph"]["qpoly"].dump());
    if (j.contains("graph_file")) row(os, "graph file", j["graph_file"].get<std::string>());
}

inline int do_coset(const Request& r, std::ostream& out) {
    std::optional<AdditiveCode> c;
    if (!r.generators.empty()) c = read_additive_code(r.generators, r.q);
    else if (r.code_gen.rfind("rifa-zinoviev", 0) == 0) {
        const auto parts = split_list(r.code_gen, ' ');
        if (parts.size() != 3) throw InvalidArgument("use --code-gen 'rifa-zinoviev M L'");
        c = rifa_zinoviev(static_cast<int>(parse_int(parts[1])), static_cast<int>(parse_int(parts[2])));
    } else {
        throw InvalidArgument("coset needs --generators FILE or --code-gen 'rifa-zinoviev M L'");
    }
    const Graph g = hamming(c->n(), c->q());
    const auto part = coset_partition(*c);
    const auto common = completely_regular_partition_quotient(g, part.cells);
    Json j;
    j["length"] = c->n();
    j["dimension"] = c->dimension();
    j["q"] = c->q();
    j["cosets"] = part.cells.size();
    j["cr_partition"] = common.has_value();
    if (!common) {
        emit(r, j, print_coset_table, out);
        return kExitVerdict;
    }
    const auto cg = coset_graph(g, *c);
    j["quotient_matrix"] = to_json(*common);
    j["multiplicity"] = cg.multiplicity ? Json(*cg.multiplicity) : Json(nullptr);
    Json graph_part;
    graph_part["vertices"] = cg.graph.order();
    const auto dr = is_distance_regular(cg.graph);
    if (const auto* ia = std::get_if<IntersectionArray>(&dr)) {
        graph_part["array"] = ia->to_string();
        j["quotient_relation"] = quotient_relation_check(*common, *ia);
        graph_part["qpoly"] = ia->satisfies_standing_assumption() && ia->diameter() <= kMaxOrderingSearchDiameter
                                  ? Json(qpoly_orderings(*ia, r.tol))
                                  : Json(nullptr);
    } else {
        graph_part["array"] = nullptr;
        j["quotient_relation"] = nullptr;
        graph_part["qpoly"] = nullptr;
    }
    j["coset_graph"] = graph_part;
    if (!r.out.empty()) {
        // the report goes to stdout, the coset graph to --out
        std::ofstream gf(r.out);
        if (!gf) throw InvalidArgument("cannot write '" + r.out + "'");
        write_graph(gf, cg.graph);
        j["graph_file"] = r.out;
        Request to_stdout = r;
        to_stdout.out.clear();
        emit(to_stdout, j, print_coset_table, out);
    } else {
        emit(r, j, print_coset_table, out);
    }
    return kExitOk;
}

inline int do_generate(const Request& r, std::ostream& out) {
    const auto& a = r.generate_args;
    if (a.empty()) throw InvalidArgument("generate needs 'graph SPEC...' or 'rifa-zinoviev M L'");
    std::ofstream file;
    std::ostream* os = &out;
    if (!r.out.empty()) {
        file.open(r.out);
        if (!file) throw InvalidArgument("cannot write '" + r.out + "'");
        os = &file;
    }
    if (a[0] == "rifa-zinoviev") {
        if (a.size() != 3) throw InvalidArgument("generate rifa-zinoviev M L");
        write_generators(*os, rifa_zinoviev(static_cast<int>(parse_int(a[1])), static_cast<int>(parse_int(a[2]))));
    } else if (a[0] == "graph") {
        std::string spec;
        for (std::size_t i = 1; i < a.size(); ++i) spec += (i > 1 ? " " : "") + a[i];
        write_graph(*os, generate(spec));
    } else if (a[0] == "code") {
        if (a.size() < 2) throw InvalidArgument("generate code NAME [PARAMS] --graph SPEC");
        std::string name;
        for (std::size_t i = 1; i < a.size(); ++i) name += (i > 1 ? " " : "") + a[i];
        std::optional<Graph> g;
        if (!r.graph.empty()) g = generate(r.graph);
        write_code_file(*os, named_code(name, g));
    } else {
        throw InvalidArgument("unknown generate target '" + a[0] + "'");
    }
    return kExitOk;
}

}  // namespace detail

inline int execute(const Request& r, std::ostream& out) {
    if (r.command == "analyze") return detail::do_analyze(r, false, out);
    if (r.command == "classify") return detail::do_analyze(r, true, out);
    if (r.command == "feasibility") return detail::do_feasibility(r, out);
    if (r.command == "coset") return detail::do_coset(r, out);
    if (r.command == "generate") return detail::do_generate(r, out);
    throw InvalidArgument("unknown command '" + r.command + "'");
}

/// Parses argv and runs; never throws.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Completely regular codes in distance-regular graphs"};
    app.require_subcommand(1);
    Request r;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--graph", r.graph, "graph spec, e.g. 'hamming 7 2' or 'file path'");
        sub->add_option("--format", r.format, "table or json")->check(CLI::IsMember({"table", "json"}));
        sub->add_option("--tolerance-eigen", r.tol.eigen, "eigenvalue matching tolerance");
        sub->add_option("--tolerance-zero", r.tol.expansion_zero, "relative zero threshold for coefficients");
        sub->add_option("--ordering", r.ordering, "natural or search")->check(CLI::IsMember({"natural", "search"}));
        sub->add_option("--out", r.out, "write output here");
    };
    for (const char* name : {"analyze", "classify"}) {
        auto* sub = app.add_subcommand(name, std::string(name) == "analyze" ? "distance partition and quotient matrix"
                                                                           : "full algebraic classification");
        common(sub);
        sub->add_option("--code", r.code_file, "code file");
        sub->add_option("--code-gen", r.code_gen, "named construction, e.g. 'repetition' or 'rifa-zinoviev 4 2'");
    }
    auto* feas = app.add_subcommand("feasibility", "Lloyd, gap and parity filters on parameters");
    common(feas);
    feas->add_option("--array", r.array, "intersection array {b0,...;c1,...}");
    feas->add_option("--sstar", r.sstar, "candidate S*(C) as indices, e.g. 1,3");
    feas->add_option("--spectrum", r.spectrum, "candidate eigenvalues, e.g. 7,-1");
    feas->add_option("--quotient", r.quotient, "candidate U as rows, e.g. '0,7;1,6'");
    auto* coset = app.add_subcommand("coset", "coset graph of an additive code in a Hamming graph");
    common(coset);
    coset->add_option("--generators", r.generators, "generator file, one word per line");
    coset->add_option("--q", r.q, "alphabet size (prime)");
    coset->add_option("--code-gen", r.code_gen, "'rifa-zinoviev M L'");
    auto* gen = app.add_subcommand("generate", "write a graph, code or generator file");
    gen->add_option("target", r.generate_args, "graph SPEC... | rifa-zinoviev M L | code NAME...")->required();
    gen->add_option("--graph", r.graph, "ambient graph for 'code'");
    gen->add_option("--out", r.out, "write output here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }
    r.command = app.get_subcommands().front()->get_name();
    try {
        return execute(r, out);
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInput;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"crc"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace crc::cli
