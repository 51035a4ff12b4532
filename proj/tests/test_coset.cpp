#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "corpus.hpp"
#include "crc/crc.hpp"

using namespace crc;

TEST(Words, BaseQRoundTrip) {
    EXPECT_EQ(word_to_vertex({1, 0, 2}, 3), 11u);
    EXPECT_EQ(vertex_to_word(11, 3, 3), (Word{1, 0, 2}));
    std::mt19937 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const int q = trial % 2 ? 3 : 5, n = 4;
        std::uniform_int_distribution<int> sym(0, q - 1);
        Word w(n);
        for (auto& s : w) s = sym(rng);
        EXPECT_EQ(vertex_to_word(word_to_vertex(w, q), n, q), w);
    }
}

TEST(AdditiveCode, ClosureAndDimension) {
    const auto h = corpus::hamming_7_4();
    EXPECT_EQ(h.size(), 16u);
    EXPECT_EQ(h.dimension(), 4);
    EXPECT_TRUE(h.contains(0));
    const auto t = corpus::ternary_hamming_4_2();
    EXPECT_EQ(t.size(), 9u);
    EXPECT_EQ(t.dimension(), 2);
    // dependent generators do not grow the code
    const AdditiveCode dup(2, 3, {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});
    EXPECT_EQ(dup.size(), 4u);
}

TEST(AdditiveCode, ClosedUnderAddition) {
    for (const auto& e : corpus::additive_codes()) {
        const auto c = e.additive();
        for (Vertex a : c.closure())
            for (Vertex b : c.closure()) ASSERT_TRUE(c.contains(c.add(a, b))) << e.name;
    }
}

TEST(AdditiveCode, RejectsBadInput) {
    EXPECT_THROW(AdditiveCode(4, 3, {{1, 1, 0}}), Error);
    EXPECT_THROW(AdditiveCode(2, 3, {{1, 2, 0}}), Error);
    EXPECT_THROW(AdditiveCode(2, 3, {{1, 1}}), Error);
    EXPECT_THROW(AdditiveCode(2, 21, {Word(21, 1)}), Error);
}

TEST(RifaZinoviev, CheckMatrixColumns) {
    const auto h = rifa_zinoviev_check_matrix(4, 2);
    ASSERT_EQ(h.size(), 4u);
    ASSERT_EQ(h.front().size(), 6u);
    // lexicographic 2-subsets: 01 02 03 12 13 23
    EXPECT_EQ(h[0], (Word{1, 1, 1, 0, 0, 0}));
    EXPECT_EQ(h[3], (Word{0, 0, 1, 0, 1, 1}));
    EXPECT_THROW(rifa_zinoviev_check_matrix(7, 2), ParameterOutOfRange);
    EXPECT_THROW(rifa_zinoviev_check_matrix(4, 4), ParameterOutOfRange);
}

TEST(RifaZinoviev, Dimensions) {
    // length C(m,2); H spans the even-weight words, rank m - 1
    EXPECT_EQ(rifa_zinoviev(4, 2).dimension(), 3);
    EXPECT_EQ(rifa_zinoviev(5, 2).dimension(), 6);
    EXPECT_EQ(rifa_zinoviev(6, 2).dimension(), 10);
}

TEST(NullSpace, OrthogonalToRows) {
    std::mt19937 rng(5);
    for (int p : {2, 3, 5}) {
        std::uniform_int_distribution<int> sym(0, p - 1);
        for (int trial = 0; trial < 30; ++trial) {
            std::vector<Word> rows(3, Word(6));
            for (auto& r : rows)
                for (auto& s : r) s = sym(rng);
            for (const auto& v : null_space_mod_p(rows, 6, p))
                for (const auto& r : rows) {
                    int dot = 0;
                    for (std::size_t i = 0; i < 6; ++i) dot += r[i] * v[i];
                    EXPECT_EQ(dot % p, 0);
                }
        }
    }
}

TEST(CosetPartition, Counts) {
    const auto p = coset_partition(rifa_zinoviev(4, 2));
    EXPECT_EQ(p.cells.size(), 8u);
    for (const auto& c : p.cells) EXPECT_EQ(c.size(), 8u);
    const auto whole = coset_partition(AdditiveCode(3, 2, {{1, 0}, {0, 1}}));
    EXPECT_EQ(whole.cells.size(), 1u);
    const auto e = coset_partition(corpus::even_weight(4));
    EXPECT_EQ(e.cells.size(), 2u);
    const auto h = coset_partition(corpus::hamming_7_4());
    EXPECT_EQ(h.cells.size(), 8u);
    for (const auto& c : h.cells) EXPECT_EQ(c.size(), 16u);
}

TEST(CosetGraph, SmallCases) {
    {
        // Hamming code: 8 cosets, any two adjacent
        const auto h = corpus::hamming_7_4();
        const auto cg = coset_graph(hamming(7, 2), h);
        EXPECT_EQ(cg.graph.order(), 8u);
        for (Vertex v = 0; v < 8; ++v) EXPECT_EQ(cg.graph.degree(v), 7u);
        EXPECT_EQ(cg.multiplicity, std::optional<long long>(1));
    }
    {
        // {00, 11}: two cosets joined by an edge
        const AdditiveCode c(2, 2, {{1, 1}});
        const auto cg = coset_graph(hamming(2, 2), c);
        EXPECT_EQ(cg.graph.order(), 2u);
        EXPECT_EQ(cg.graph.degree(0), 1u);
        EXPECT_EQ(cg.multiplicity, std::optional<long long>(2));
    }
    {
        // RZ(5,2): 2^10 / 2^6 = 16 cosets, the halved 5-cube
        const auto rz = rifa_zinoviev(5, 2);
        const auto cg = coset_graph(hamming(10, 2), rz);
        EXPECT_EQ(cg.graph.order(), 16u);
        const auto dr = is_distance_regular(cg.graph);
        ASSERT_TRUE(std::holds_alternative<IntersectionArray>(dr));
        EXPECT_EQ(std::get<IntersectionArray>(dr), *family_intersection_array(parse_graph_spec("halved-cube 5")));
    }
}

TEST(CosetGraph, PartitionIsCompletelyRegularForCorpus) {
    for (const auto& e : corpus::additive_codes()) {
        const auto c = e.additive();
        const Graph g = hamming(c.n(), c.q());
        const auto p = coset_partition(c);
        const auto u = completely_regular_partition_quotient(g, p.cells);
        ASSERT_TRUE(u.has_value()) << e.name;
        EXPECT_EQ(*u, is_completely_regular(c.as_code(g)).quotient()) << e.name;
    }
}

TEST(CosetGraph, RelationFailsForWrongArray) {
    const QuotientMatrix u({0, 1, 6}, {0, 4, 0}, {6, 1, 0});
    EXPECT_TRUE(quotient_relation_check(u, IntersectionArray::relaxed({6, 1}, {1, 6})));
    EXPECT_FALSE(quotient_relation_check(u, IntersectionArray::relaxed({6, 2}, {1, 6})));
    EXPECT_FALSE(quotient_relation_check(u, IntersectionArray::relaxed({6}, {1})));
}

TEST(CompletelyRegularPartition, RejectsNonPartitions) {
    const Graph g = hamming(2, 2);
    EXPECT_THROW(completely_regular_partition_quotient(g, {{0, 1}, {1, 2, 3}}), InvalidArgument);
    EXPECT_THROW(completely_regular_partition_quotient(g, {{0, 1}}), InvalidArgument);
    EXPECT_FALSE(is_completely_regular_partition(g, {{0}, {1, 2, 3}}));
}

TEST(GeneratorFiles, ReadAndWrite) {
    std::istringstream in("# comment\n110\n\n0 1 1\n");
    const auto gens = read_generators(in, 2);
    EXPECT_EQ(gens, (std::vector<Word>{{1, 1, 0}, {0, 1, 1}}));
    std::ostringstream out;
    write_generators(out, AdditiveCode(2, 3, gens));
    EXPECT_EQ(out.str(), "110\n011\n");
}

TEST(GeneratorFiles, ErrorsCarryLineNumbers) {
    auto line_of = [](const std::string& text, int q) -> std::size_t {
        std::istringstream in(text);
        try {
            read_generators(in, q);
        } catch (const FileFormatError& e) {
            return e.line();
        }
        return 0;
    };
    EXPECT_EQ(line_of("110\n012\n", 2), 2u);
    EXPECT_EQ(line_of("110\n\n0110\n", 2), 3u);
    EXPECT_EQ(line_of("1 x 0\n", 2), 1u);
    std::istringstream empty("# nothing\n");
    EXPECT_THROW(read_generators(empty, 2), FileFormatError);
}

TEST(CosetGraph, QPolynomialAndSpectrumMatchTheCode) {
    for (const auto& e : corpus::additive_codes()) {
        const auto c = e.additive();
        const Code code = corpus::in_hamming(c);
        const auto ambient = ambient_data(code.graph());
        const auto an = analyze(code, ambient);
        ASSERT_TRUE(an.is_completely_regular()) << e.name;
        const auto& u = an.regularity.quotient();
        const auto cg = coset_graph(code.graph(), c);
        EXPECT_EQ(cg.multiplicity, std::optional<long long>(u.gamma(1))) << e.name;
        const auto dr = is_distance_regular(cg.graph);
        ASSERT_TRUE(std::holds_alternative<IntersectionArray>(dr)) << e.name;
        const auto& ia = std::get<IntersectionArray>(dr);
        // eigenvalues of the quotient are (eta - alpha_0) / gamma_1
        const auto quotient_eigs = tridiagonal_eigenvalues(ia.tridiagonal());
        std::vector<Scalar> mapped;
        for (const auto& eta : an.spectrum->etas) mapped.push_back((eta - Scalar(u.alpha(0))) / Scalar(u.gamma(1)));
        EXPECT_EQ(mapped, quotient_eigs) << e.name;
        if (ia.satisfies_standing_assumption()) {
            const bool code_qpoly = qpoly_test(u, *an.spectrum).flag;
            EXPECT_EQ(code_qpoly, !qpoly_orderings(ia).empty()) << e.name;
        }
    }
}
