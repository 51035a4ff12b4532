// Completely regular codes shared by the unit tests and the acceptance run.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "crc/crc.hpp"

namespace corpus {

struct Entry {
    std::string name;
    std::function<crc::Code()> make;
    /// Set for additive codes in Hamming graphs.
    std::function<crc::AdditiveCode()> additive;
};

inline crc::AdditiveCode hamming_7_4() {
    return crc::AdditiveCode(2, 7, {{1, 1, 0, 1, 0, 0, 0}, {0, 1, 1, 0, 1, 0, 0}, {0, 0, 1, 1, 0, 1, 0}, {0, 0, 0, 1, 1, 0, 1}});
}

inline crc::AdditiveCode ternary_hamming_4_2() { return crc::AdditiveCode(3, 4, {{1, 0, 1, 1}, {0, 1, 1, 2}}); }

inline crc::AdditiveCode repetition(int n, int q) { return crc::AdditiveCode(q, n, {crc::Word(static_cast<std::size_t>(n), 1)}); }

inline crc::AdditiveCode even_weight(int n) {
    std::vector<crc::Word> gens;
    for (int i = 0; i + 1 < n; ++i) {
        crc::Word w(static_cast<std::size_t>(n), 0);
        w[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i + 1)] = 1;
        gens.push_back(w);
    }
    return crc::AdditiveCode(2, n, gens);
}

inline crc::Code in_hamming(const crc::AdditiveCode& c) { return c.as_code(crc::hamming(c.n(), c.q())); }

inline crc::Code named(const std::string& graph, const std::string& code) {
    return crc::named_code(code, crc::generate(graph));
}

/// Additive codes: every one is completely regular in its Hamming graph.
inline std::vector<Entry> additive_codes() {
    std::vector<Entry> out;
    auto add = [&](std::string name, std::function<crc::AdditiveCode()> f) {
        out.push_back({std::move(name), [f] { return in_hamming(f()); }, f});
    };
    add("[7,4] Hamming code", hamming_7_4);
    for (int m = 4; m <= 6; ++m) add("Rifa-Zinoviev (" + std::to_string(m) + ",2)", [m] { return crc::rifa_zinoviev(m, 2); });
    for (int n = 2; n <= 8; ++n) add("repetition in H(" + std::to_string(n) + ",2)", [n] { return repetition(n, 2); });
    for (int n = 3; n <= 6; ++n) add("even weight in H(" + std::to_string(n) + ",2)", [n] { return even_weight(n); });
    add("ternary [4,2] Hamming code", ternary_hamming_4_2);
    add("repetition in H(3,3)", [] { return repetition(3, 3); });
    return out;
}

inline std::vector<Entry> all_codes() {
    auto out = additive_codes();
    auto add = [&](std::string graph, std::string code) {
        out.push_back({code + " in " + graph, [graph, code] { return named(graph, code); }, {}});
    };
    for (const char* g : {"hamming 4 2", "hamming 5 2", "johnson 5 2", "johnson 6 3", "halved-cube 5", "halved-cube 6",
                          "folded-cube 5", "folded-cube 7", "doubled-odd 3", "doubled-odd 4"})
        add(g, "singleton");
    add("johnson 5 2", "fixed-subset 4");
    add("johnson 6 3", "fixed-subset 5");
    add("johnson 5 2", "containing-subset 1");
    add("johnson 6 3", "containing-subset 1");
    add("johnson 6 3", "containing-subset 2");
    for (const char* g : {"doubled-odd 3", "doubled-odd 4", "halved-cube 6", "hamming 5 2"}) add(g, "antipodal-pair");
    return out;
}

}  // namespace corpus
