/**
 * @file analysis.hpp
 * @brief End-to-end analysis and classification of a code in a
 * distance-regular graph, plus parameter-level feasibility checks.
 */
#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "crc/atlas.hpp"
#include "crc/code.hpp"
#include "crc/error.hpp"
#include "crc/leonard.hpp"
#include "crc/spectral.hpp"

namespace crc {

enum class OrderingMode { natural, search };

/// Parameters of the ambient graph needed by every later stage.
struct AmbientData {
    IntersectionArray array;
    Spectrum spectrum;
    KreinTensor krein;
    /// Q-polynomial orderings of the graph, natural first when valid.
    std::vector<Ordering> orderings;
    /// False when only the natural ordering was checked.
    bool orderings_exhaustive = false;

    bool natural_is_qpoly() const {
        const auto nat = natural_ordering(array.diameter());
        return std::find(orderings.begin(), orderings.end(), nat) != orderings.end();
    }
};

/// Closed form for generated families, a full distance-regularity pass otherwise.
inline IntersectionArray ambient_array(const Graph& g) {
    if (auto ia = family_intersection_array(g.spec())) return *ia;
    auto dr = is_distance_regular(g);
    if (auto* bad = std::get_if<NotDistanceRegular>(&dr))
        throw InvalidArgument("graph is not distance-regular (vertices " + std::to_string(bad->x) + ", " +
                              std::to_string(bad->y) + " at distance " + std::to_string(bad->distance) + ")");
    return std::get<IntersectionArray>(dr);
}

inline AmbientData ambient_data(const IntersectionArray& ia, OrderingMode mode = OrderingMode::search,
                                const Tolerances& tol = {}) {
    auto spectrum = compute_spectrum(ia, tol);
    auto krein = krein_parameters(spectrum, tol);
    AmbientData a{ia, std::move(spectrum), std::move(krein), {}, false};
    if (mode == OrderingMode::search && ia.diameter() <= kMaxOrderingSearchDiameter) {
        a.orderings = qpoly_orderings(a.krein);
        a.orderings_exhaustive = true;
    } else {
        const auto nat = natural_ordering(ia.diameter());
        if (is_qpoly_ordering(a.krein, nat)) a.orderings.push_back(nat);
    }
    return a;
}

inline AmbientData ambient_data(const Graph& g, OrderingMode mode = OrderingMode::search, const Tolerances& tol = {}) {
    return ambient_data(ambient_array(g), mode, tol);
}

struct CodeAnalysis {
    DistancePartition partition;
    CompleteRegularity regularity;
    std::optional<CodeSpectrum> spectrum;
    /// With respect to the first Q-polynomial ordering of the graph.
    std::optional<std::size_t> strength;

    bool is_completely_regular() const { return regularity.is_completely_regular(); }
};

inline CodeAnalysis analyze(const Code& code, const AmbientData& ambient, const Tolerances& tol = {},
                            RegularityOptions options = {}) {
    CodeAnalysis a{distance_partition(code), {EquitabilityWitness{}, 0, 0}, std::nullopt, std::nullopt};
    a.regularity = is_completely_regular(code, a.partition, options);
    if (!a.is_completely_regular()) return a;
    a.spectrum = code_spectrum(a.regularity.quotient(), ambient.spectrum, tol);
    if (a.spectrum->rho() > 0 && !ambient.orderings.empty()) a.strength = strength(*a.spectrum, ambient.orderings.front());
    return a;
}

struct FilterReport {
    std::optional<bool> lloyd;
    std::optional<bool> gap;     ///< absent unless the natural ordering is Q-polynomial
    std::optional<bool> parity;  ///< absent unless the graph is an antipodal 2-cover
    std::optional<AntipodalImage> antipodal_image;

    bool all_pass() const { return lloyd.value_or(true) && gap.value_or(true) && parity.value_or(true); }
};

struct LeonardReport {
    bool flag = false;
    std::vector<Scalar> thetas;  ///< every theta for which the code is Leonard
    std::vector<Ordering> orderings;
    Matrix<Scalar> coefficients;  ///< M for the first witnessing theta
};

struct ClassificationReport {
    QuotientMatrix quotient;
    CodeSpectrum spectrum;
    EigenExpansion expansion;
    std::vector<bool> nondegenerate;  ///< per position in spectrum.etas
    QPolyResult qpoly;
    LeonardReport leonard;
    std::optional<std::size_t> harmonic_t;
    std::optional<Scalar> arithmetic_t;
    std::optional<std::size_t> strength;
    FilterReport filters;
    std::optional<bool> krein_support;
};

/**
 * Full algebraic classification. Aborts with InternalError if the
 * Q-polynomial and Leonard verdicts (or their orderings) ever disagree.
 */
inline ClassificationReport classify(const Code& code, const CodeAnalysis& analysis, const AmbientData& ambient,
                                     const Tolerances& tol = {}) {
    if (!analysis.is_completely_regular()) throw InvalidArgument("classification needs a completely regular code");
    const auto& u = analysis.regularity.quotient();
    const auto& cs = *analysis.spectrum;
    if (cs.rho() == 0) throw TrivialCode("code is the whole vertex set");

    ClassificationReport r{u, cs, eigen_expansion(u, cs, tol), {}, {}, {}, {}, {}, analysis.strength, {}, {}};
    for (const auto& v : cs.stdvecs) r.nondegenerate.push_back(is_nondegenerate(v, tol.eigen));
    r.qpoly = qpoly_test(u, cs, tol);

    std::set<Ordering> leonard_orderings;
    for (std::size_t j = 1; j <= cs.rho(); ++j) {
        auto lt = leonard_test(u, cs, cs.etas[j], tol);
        if (!lt.flag) continue;
        if (!r.leonard.flag) r.leonard.coefficients = lt.coefficients;
        r.leonard.flag = true;
        r.leonard.thetas.push_back(cs.etas[j]);
        leonard_orderings.insert(lt.orderings.begin(), lt.orderings.end());
    }
    r.leonard.orderings.assign(leonard_orderings.begin(), leonard_orderings.end());
    if (r.qpoly.flag != r.leonard.flag || r.qpoly.orderings != r.leonard.orderings)
        throw InternalError("Q-polynomial and Leonard verdicts disagree for U = " +
                            [&] { std::ostringstream os; os << u; return os.str(); }());

    for (const auto& o : ambient.orderings)
        if ((r.harmonic_t = harmonic_test(cs, o))) break;
    r.arithmetic_t = arithmetic_test(cs, tol);

    r.filters.lloyd = true;  // code_spectrum matched every eigenvalue
    if (ambient.natural_is_qpoly()) r.filters.gap = gap_filter(cs.sstar);
    auto pi = antipodal_map(code.graph(), ambient.array);
    if (auto* map = std::get_if<AntipodalMap>(&pi)) {
        const auto outcome = antipodal_parity_filter(cs.sstar, *map, code, analysis.partition);
        r.filters.parity = outcome.pass;
        r.filters.antipodal_image = outcome.image;
    }

    std::vector<std::size_t> indices(cs.graph_index.begin(), cs.graph_index.end());
    r.krein_support = krein_support_check(r.expansion, ambient.krein, indices).ok;
    return r;
}

inline ClassificationReport classify(const Code& code, const AmbientData& ambient, const Tolerances& tol = {}) {
    return classify(code, analyze(code, ambient, tol), ambient, tol);
}

/// A candidate for feasibility screening, given without any vertex-level code.
using FeasibilityCandidate = std::variant<QuotientMatrix, std::vector<Scalar>, std::vector<std::size_t>>;

struct FeasibilityReport {
    FilterReport filters;
    std::vector<std::size_t> sstar;
    std::vector<std::string> notes;

    bool feasible() const { return filters.all_pass(); }
};

/**
 * Lloyd, gap and antipodal parity conditions on parameters alone. A
 * candidate is a quotient matrix, a list of eigenvalues (k may be omitted),
 * or S*(C) as eigenvalue indices.
 */
inline FeasibilityReport feasibility(const AmbientData& ambient, const FeasibilityCandidate& candidate,
                                     const Tolerances& tol = {}) {
    FeasibilityReport r;
    const std::size_t d = ambient.array.diameter();
    if (const auto* u = std::get_if<QuotientMatrix>(&candidate)) {
        if (u->k() != ambient.array.k()) throw InvalidArgument("quotient matrix row sums differ from the graph valency");
        try {
            r.sstar = code_spectrum(*u, ambient.spectrum, tol).sstar;
            r.filters.lloyd = true;
        } catch (const LloydViolation& e) {
            r.filters.lloyd = false;
            r.notes.emplace_back(e.what());
            return r;
        }
    } else if (const auto* values = std::get_if<std::vector<Scalar>>(&candidate)) {
        r.filters.lloyd = true;
        std::set<std::size_t> idx;
        for (const auto& v : *values) {
            const auto at = ambient.spectrum.index_of(v, tol);
            if (!at) {
                r.filters.lloyd = false;
                r.notes.push_back(v.to_string() + " is not an eigenvalue of the graph");
            } else if (*at != 0) {
                idx.insert(*at);
            }
        }
        if (!*r.filters.lloyd) return r;
        r.sstar.assign(idx.begin(), idx.end());
    } else {
        const auto& s = std::get<std::vector<std::size_t>>(candidate);
        std::set<std::size_t> idx(s.begin(), s.end());
        if (idx.size() != s.size()) throw InvalidArgument("repeated index in S*");
        for (std::size_t i : idx)
            if (i == 0 || i > d) throw InvalidArgument("S* index " + std::to_string(i) + " outside 1.." + std::to_string(d));
        r.sstar.assign(idx.begin(), idx.end());
    }
    if (r.sstar.empty()) throw InvalidArgument("candidate has no nontrivial eigenvalue");
    if (ambient.natural_is_qpoly()) {
        r.filters.gap = gap_filter(r.sstar);
        if (!*r.filters.gap) r.notes.emplace_back("gap condition violated");
    } else {
        r.notes.emplace_back("gap condition skipped: natural ordering is not Q-polynomial");
    }
    if (valencies(ambient.array).back() == 1) {
        r.filters.parity = antipodal_parity_possible(r.sstar);
        if (!*r.filters.parity) r.notes.emplace_back("antipodal parity pattern violated");
    }
    return r;
}

}  // namespace crc
