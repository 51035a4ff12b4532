/**
 * @file io.hpp
 * @brief Code files, named code constructions, and JSON encodings of reports.
 *
 * Code file format:
 *
 *     # comment
 *     graph: hamming 7 2
 *     0000000
 *     1101000
 *     ...
 *
 * One codeword per line, written as the vertex label of the graph (digit
 * strings for Hamming graphs, binary words for halved and folded cubes,
 * subsets such as {0,2} or 0,2 or a 0/1 indicator for Johnson and doubled
 * Odd graphs) or as a plain vertex number.
 */
#pragma once

#include <bit>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "crc/analysis.hpp"
#include "crc/atlas.hpp"
#include "crc/code.hpp"
#include "crc/coset.hpp"
#include "crc/error.hpp"

namespace crc {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline bool uses_subset_labels(const GraphSpec& spec) {
    return spec.kind == GraphSpec::Kind::johnson || spec.kind == GraphSpec::Kind::doubled_odd;
}

/// Ground set size of a subset-labelled family.
inline int ground_set(const GraphSpec& spec) {
    return spec.kind == GraphSpec::Kind::johnson ? static_cast<int>(spec.params[0])
                                                 : static_cast<int>(2 * spec.params[0] - 1);
}

/// Canonical "{a,b,...}" label of a subset token, or nullopt if it is not one.
inline std::optional<std::string> subset_token(const std::string& tok, int ground) {
    std::string body = tok;
    if (!body.empty() && body.front() == '{') {
        if (body.back() != '}') return std::nullopt;
        body = body.substr(1, body.size() - 2);
    }
    std::uint64_t mask = 0;
    const bool indicator = static_cast<int>(body.size()) == ground &&
                           body.find_first_not_of("01") == std::string::npos && tok.front() != '{';
    if (indicator) {
        for (int i = 0; i < ground; ++i)
            if (body[static_cast<std::size_t>(i)] == '1') mask |= std::uint64_t{1} << i;
        return subset_label(mask);
    }
    std::stringstream ss(body);
    std::string part;
    while (std::getline(ss, part, ',')) {
        part = trim(part);
        if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
        const int e = std::stoi(part);
        if (e >= ground) return std::nullopt;
        mask |= std::uint64_t{1} << e;
    }
    return subset_label(mask);
}

}  // namespace detail

/// Resolves one codeword token against a graph's labels, falling back to vertex numbers.
class VertexResolver {
public:
    explicit VertexResolver(const Graph& g) : g_(g) {
        if (g.has_labels())
            for (Vertex v = 0; v < g.order(); ++v) by_label_.emplace(g.label(v), v);
    }

    std::optional<Vertex> operator()(const std::string& token) const {
        std::string key = token;
        if (detail::uses_subset_labels(g_.spec())) {
            if (auto s = detail::subset_token(token, detail::ground_set(g_.spec()))) key = *s;
        }
        if (auto it = by_label_.find(key); it != by_label_.end()) return it->second;
        if (!token.empty() && token.find_first_not_of("0123456789") == std::string::npos && token.size() < 10) {
            const auto v = std::stoull(token);
            if (v < g_.order()) return static_cast<Vertex>(v);
        }
        return std::nullopt;
    }

private:
    Graph g_;
    std::map<std::string, Vertex> by_label_;
};

struct CodeFile {
    std::optional<GraphSpec> graph;
    std::vector<std::pair<std::string, std::size_t>> tokens;  ///< codeword and its line
};

inline CodeFile parse_code_file(std::istream& is) {
    CodeFile f;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const auto t = detail::trim(line);
        if (t.empty() || t.front() == '#') continue;
        if (t.rfind("graph:", 0) == 0) {
            if (f.graph) throw FileFormatError("second graph line", line_no);
            if (!f.tokens.empty()) throw FileFormatError("graph line after codewords", line_no);
            try {
                f.graph = parse_graph_spec(detail::trim(t.substr(6)));
            } catch (const InvalidArgument& e) {
                throw FileFormatError(e.what(), line_no);
            }
            continue;
        }
        std::string word;
        for (char ch : t)
            if (ch != ' ' && ch != '\t') word.push_back(ch);
        f.tokens.emplace_back(word, line_no);
    }
    if (f.tokens.empty()) throw FileFormatError("code file lists no codewords");
    return f;
}

/// A relative "file" graph path is tried as given, then next to the code file.
inline GraphSpec resolve_graph_path(GraphSpec spec, const std::string& code_path) {
    namespace fs = std::filesystem;
    if (spec.kind == GraphSpec::Kind::explicit_file && fs::path(spec.path).is_relative() && !fs::exists(spec.path)) {
        const auto alt = fs::path(code_path).parent_path() / spec.path;
        if (fs::exists(alt)) spec.path = alt.string();
    }
    return spec;
}

inline Code code_from_tokens(const Graph& g, const CodeFile& f) {
    VertexResolver resolve(g);
    std::vector<Vertex> vs;
    for (const auto& [tok, line] : f.tokens) {
        const auto v = resolve(tok);
        if (!v) throw FileFormatError("'" + tok + "' is not a vertex of " + g.spec().to_string(), line);
        vs.push_back(*v);
    }
    return Code(g, std::move(vs));
}

inline void write_code_file(std::ostream& os, const Code& c) {
    os << "graph: " << c.graph().spec().to_string() << '\n';
    for (Vertex v : c.vertices()) os << c.graph().label(v) << '\n';
}

/**
 * Named constructions, each given with its parameters:
 *   singleton, antipodal-pair, repetition, even-weight, rifa-zinoviev M L,
 *   fixed-subset S (Johnson graphs: k-subsets inside {0..S-1}),
 *   containing-subset S (Johnson graphs: k-subsets containing {0..S-1}).
 * rifa-zinoviev carries its own graph (hamming C(M,L) 2); the rest live in
 * the supplied graph.
 */
inline Code named_code(const std::string& text, const std::optional<Graph>& graph) {
    std::istringstream is(text);
    std::string name;
    is >> name;
    std::vector<long long> params;
    for (long long p; is >> p;) params.push_back(p);
    if (!is.eof()) throw InvalidArgument("bad parameters in code construction '" + text + "'");
    auto need_graph = [&]() -> const Graph& {
        if (!graph) throw InvalidArgument("code construction '" + name + "' needs --graph");
        return *graph;
    };
    auto need_hamming = [&]() -> const Graph& {
        const Graph& g = need_graph();
        if (g.spec().kind != GraphSpec::Kind::hamming) throw InvalidArgument("'" + name + "' needs a Hamming graph");
        return g;
    };
    if (name == "singleton" && params.empty()) return Code(need_graph(), {0});
    if (name == "antipodal-pair" && params.empty()) {
        const Graph& g = need_graph();
        auto pi = antipodal_map(g, ambient_array(g));
        if (auto* bad = std::get_if<NotAntipodal>(&pi)) throw InvalidArgument("graph is not an antipodal 2-cover: " + bad->reason);
        return Code(g, {0, std::get<AntipodalMap>(pi)(0)});
    }
    if (name == "repetition" && params.empty()) {
        const Graph& g = need_hamming();
        const int n = static_cast<int>(g.spec().params[0]), q = static_cast<int>(g.spec().params[1]);
        std::vector<Vertex> vs;
        for (int s = 0; s < q; ++s) vs.push_back(word_to_vertex(Word(static_cast<std::size_t>(n), s), q));
        return Code(g, vs);
    }
    if (name == "even-weight" && params.empty()) {
        const Graph& g = need_hamming();
        if (g.spec().params[1] != 2) throw InvalidArgument("even-weight needs a binary Hamming graph");
        std::vector<Vertex> vs;
        for (Vertex v = 0; v < g.order(); ++v)
            if (std::popcount(v) % 2 == 0) vs.push_back(v);
        return Code(g, vs);
    }
    if (name == "rifa-zinoviev" && params.size() == 2) {
        const auto c = rifa_zinoviev(static_cast<int>(params[0]), static_cast<int>(params[1]));
        return c.as_code(hamming(c.n(), 2));
    }
    if (name == "fixed-subset" && params.size() == 1) {
        const Graph& g = need_graph();
        if (g.spec().kind != GraphSpec::Kind::johnson) throw InvalidArgument("fixed-subset needs a Johnson graph");
        const int k = static_cast<int>(g.spec().params[1]);
        const auto inside = detail::masks_of_weight(static_cast<int>(params[0]), k);
        VertexResolver resolve(g);
        std::vector<Vertex> vs;
        for (auto m : inside) vs.push_back(*resolve(detail::subset_label(m)));
        return Code(g, vs);
    }
    if (name == "containing-subset" && params.size() == 1) {
        const Graph& g = need_graph();
        if (g.spec().kind != GraphSpec::Kind::johnson) throw InvalidArgument("containing-subset needs a Johnson graph");
        const int v = static_cast<int>(g.spec().params[0]), k = static_cast<int>(g.spec().params[1]);
        if (params[0] < 1 || params[0] > k) throw InvalidArgument("containing-subset S needs 1 <= S <= k");
        const std::uint64_t fixed = (std::uint64_t{1} << params[0]) - 1;
        VertexResolver resolve(g);
        std::vector<Vertex> vs;
        for (auto m : detail::masks_of_weight(v, k))
            if ((m & fixed) == fixed) vs.push_back(*resolve(detail::subset_label(m)));
        return Code(g, vs);
    }
    throw InvalidArgument("unknown code construction '" + text + "'");
}

// ---- JSON encodings ----

/// Exact integers as numbers, other exact values as "p/q" strings, approximations as numbers.
inline Json to_json(const Scalar& s) {
    if (s.is_exact()) {
        const auto& r = s.exact();
        if (is_integral(r)) {
            const Integer n = boost::multiprecision::numerator(r);
            if (n <= Integer(std::numeric_limits<long long>::max()) && n >= Integer(std::numeric_limits<long long>::min()))
                return n.convert_to<long long>();
        }
        return to_string(r);
    }
    return s.value();
}

inline Json to_json(const std::vector<Scalar>& v) {
    Json out = Json::array();
    for (const auto& s : v) out.push_back(to_json(s));
    return out;
}

inline Json to_json(const QuotientMatrix& u) {
    Json rows = Json::array();
    const auto d = u.dense();
    for (std::size_t i = 0; i < d.rows(); ++i) rows.push_back(d.row(i));
    return rows;
}

inline Json filters_json(const FilterReport& f) {
    Json j = Json::object();
    auto opt = [](const std::optional<bool>& b) -> Json { return b ? Json(*b) : Json(nullptr); };
    j["lloyd"] = opt(f.lloyd);
    j["gap"] = opt(f.gap);
    j["parity"] = opt(f.parity);
    if (f.antipodal_image)
        j["antipodal_image"] = *f.antipodal_image == AntipodalImage::code ? "code" : "last_cell";
    return j;
}

inline Json graph_json(const Graph& g, const AmbientData& a) {
    return Json{{"spec", g.spec().to_string()}, {"vertices", g.order()}, {"array", a.array.to_string()}};
}

inline Json code_json(const Code& c, const std::string& source) {
    return Json{{"source", source}, {"size", c.size()}};
}

/// Keys shared by analyze and classify.
inline Json analysis_json(const Graph& g, const Code& c, const std::string& source, const AmbientData& a,
                          const CodeAnalysis& an) {
    Json j;
    j["graph"] = graph_json(g, a);
    j["code"] = code_json(c, source);
    j["cr"] = an.is_completely_regular();
    j["rho"] = an.partition.rho;
    if (!an.is_completely_regular()) {
        const auto& w = an.regularity.witness();
        j["witness"] = Json{{"cell", w.cell},
                            {"first", g.label(w.first)},
                            {"second", g.label(w.second)},
                            {"first_counts", w.first_counts},
                            {"second_counts", w.second_counts}};
        return j;
    }
    j["quotient_matrix"] = to_json(an.regularity.quotient());
    j["spectrum"] = to_json(an.spectrum->etas);
    j["sstar"] = an.spectrum->sstar;
    j["strength"] = an.strength ? Json(*an.strength) : Json(nullptr);
    return j;
}

inline Json classification_json(Json j, const ClassificationReport& r) {
    j["qpoly"] = Json{{"flag", r.qpoly.flag}, {"orderings", r.qpoly.orderings}};
    j["leonard"] = Json{{"flag", r.leonard.flag}, {"thetas", to_json(r.leonard.thetas)}};
    j["harmonic_t"] = r.harmonic_t ? Json(*r.harmonic_t) : Json(nullptr);
    j["arithmetic_t"] = r.arithmetic_t ? to_json(*r.arithmetic_t) : Json(nullptr);
    j["filters"] = filters_json(r.filters);
    j["expansions"] = Json{{"lambda", to_json(r.expansion.lambdas)}, {"tau", to_json(r.expansion.taus)}};
    j["nondegenerate"] = r.nondegenerate;
    return j;
}

}  // namespace crc
