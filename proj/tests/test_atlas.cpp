#include <gtest/gtest.h>

#include <sstream>

#include "crc/crc.hpp"

using namespace crc;

namespace {

IntersectionArray array_of(const Graph& g) {
    auto dr = is_distance_regular(g);
    EXPECT_TRUE(std::holds_alternative<IntersectionArray>(dr)) << g.spec().to_string();
    return std::get<IntersectionArray>(dr);
}

}  // namespace

TEST(Atlas, OrdersAndValencies) {
    struct Case {
        const char* spec;
        std::size_t order;
        std::size_t degree;
    };
    for (const Case& c : {Case{"hamming 4 3", 81, 8}, Case{"johnson 7 3", 35, 12}, Case{"halved-cube 6", 32, 15},
                          Case{"folded-cube 6", 32, 6}, Case{"doubled-odd 3", 20, 3}, Case{"cycle 9", 9, 2}}) {
        const Graph g = generate(c.spec);
        EXPECT_EQ(g.order(), c.order) << c.spec;
        for (Vertex v = 0; v < g.order(); ++v) ASSERT_EQ(g.degree(v), c.degree) << c.spec;
    }
}

TEST(Atlas, ClosedFormsMatchBruteForce) {
    for (const char* spec : {"hamming 3 2", "hamming 5 2", "hamming 3 3", "hamming 2 4", "johnson 5 2", "johnson 7 3",
                             "johnson 8 4", "halved-cube 4", "halved-cube 5", "halved-cube 7", "folded-cube 4",
                             "folded-cube 5", "folded-cube 7", "doubled-odd 2", "doubled-odd 3", "doubled-odd 4"}) {
        const Graph g = generate(spec);
        const auto closed = family_intersection_array(g.spec());
        ASSERT_TRUE(closed.has_value()) << spec;
        EXPECT_EQ(array_of(g), *closed) << spec;
        EXPECT_EQ(static_cast<std::size_t>(g.diameter()), closed->diameter()) << spec;
    }
}

TEST(Atlas, KnownArrays) {
    EXPECT_EQ(*family_intersection_array(parse_graph_spec("doubled-odd 3")),
              IntersectionArray::parse("{3,2,2,1,1;1,1,2,2,3}"));
    EXPECT_EQ(*family_intersection_array(parse_graph_spec("johnson 5 2")), IntersectionArray::parse("{6,2;1,4}"));
    EXPECT_EQ(*family_intersection_array(parse_graph_spec("folded-cube 5")), IntersectionArray::parse("{5,4;1,2}"));
    EXPECT_EQ(*family_intersection_array(parse_graph_spec("halved-cube 6")), IntersectionArray::parse("{15,6,1;1,6,15}"));
}

TEST(Atlas, RejectsBadParameters) {
    EXPECT_THROW(generate("hamming 0 2"), Error);
    EXPECT_THROW(generate("johnson 4 5"), Error);
    EXPECT_THROW(generate("nonsense 3"), InvalidArgument);
    EXPECT_THROW(generate("hamming 30 2"), ParameterOutOfRange);
}

TEST(Atlas, Labels) {
    const Graph h = hamming(3, 2);
    EXPECT_EQ(h.label(5), "101");
    const Graph j = johnson(5, 2);
    EXPECT_EQ(j.label(0), "{0,1}");
}

TEST(DistanceRegularity, WitnessOnNonRegularGraph) {
    // path on 4 vertices: the ends and the middle vertices differ
    const Graph p = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
    const auto dr = is_distance_regular(p);
    ASSERT_TRUE(std::holds_alternative<NotDistanceRegular>(dr));
    EXPECT_THROW(ambient_array(p), InvalidArgument);
}

TEST(DistanceRegularity, Petersen) {
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex i = 0; i < 5; ++i) {
        e.emplace_back(i, (i + 1) % 5);
        e.emplace_back(i, i + 5);
        e.emplace_back(i + 5, (i + 2) % 5 + 5);
    }
    EXPECT_EQ(array_of(Graph::from_edges(10, e)), IntersectionArray::parse("{3,2;1,1}"));
}

TEST(Antipodal, MapOnCubeAndDoubledOdd) {
    for (const char* spec : {"hamming 4 2", "doubled-odd 3", "halved-cube 6"}) {
        const Graph g = generate(spec);
        const auto ia = ambient_array(g);
        auto pi = antipodal_map(g, ia);
        ASSERT_TRUE(std::holds_alternative<AntipodalMap>(pi)) << spec;
        const auto& m = std::get<AntipodalMap>(pi);
        for (Vertex v = 0; v < g.order(); ++v) {
            EXPECT_EQ(g.distance(v, m(v)), static_cast<int>(ia.diameter()));
            EXPECT_EQ(m(m(v)), v);
        }
    }
    const Graph j = generate("johnson 7 3");
    EXPECT_TRUE(std::holds_alternative<NotAntipodal>(antipodal_map(j, ambient_array(j))));
}

TEST(GraphIo, RoundTrip) {
    const Graph g = generate("johnson 5 2");
    std::stringstream ss;
    write_graph(ss, g);
    const Graph back = read_graph(ss);
    ASSERT_EQ(back.order(), g.order());
    for (Vertex v = 0; v < g.order(); ++v) EXPECT_EQ(back.neighbors(v), g.neighbors(v));
}

TEST(GraphIo, RejectsBrokenInput) {
    std::istringstream loop("2 1\n0 0\n");
    EXPECT_THROW(read_graph(loop), Error);
    std::istringstream disconnected("4 2\n0 1\n2 3\n");
    EXPECT_THROW(read_graph(disconnected), Error);
    std::istringstream truncated("3 3\n0 1\n1 2\n");
    EXPECT_THROW(read_graph(truncated), Error);
}

TEST(GraphSpecText, RoundTrip) {
    for (const char* spec : {"hamming 7 2", "johnson 6 3", "halved-cube 5", "folded-cube 7", "doubled-odd 4", "cycle 5"})
        EXPECT_EQ(parse_graph_spec(spec).to_string(), spec);
}
