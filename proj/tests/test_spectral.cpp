#include <gtest/gtest.h>

#include <random>

#include "crc/crc.hpp"
#include "oracles.hpp"

using namespace crc;

namespace {

Rational r(long long p, long long q = 1) { return Rational(p, q); }

}  // namespace

TEST(IntersectionArray, ParseAndPrint) {
    const auto ia = IntersectionArray::parse("{3,2,1;1,2,3}");
    EXPECT_EQ(ia.diameter(), 3u);
    EXPECT_EQ(ia.k(), 3);
    EXPECT_EQ(ia.b(0), 3);
    EXPECT_EQ(ia.c(3), 3);
    EXPECT_EQ(ia.a(1), 0);
    EXPECT_EQ(IntersectionArray::parse(ia.to_string()), ia);
}

TEST(IntersectionArray, RejectsMalformedText) {
    EXPECT_THROW(IntersectionArray::parse("{3,2,1;1,2}"), InvalidArgument);
    EXPECT_THROW(IntersectionArray::parse("3,2;1,x"), InvalidArgument);
    EXPECT_THROW(IntersectionArray::parse("{3,4;1,1}"), InvalidArgument);
}

TEST(Tridiagonal, CharacteristicPolynomialOfCube) {
    const auto t = IntersectionArray::parse("{3,2,1;1,2,3}").tridiagonal();
    const auto p = characteristic_polynomial(t);
    for (long long x : {3, 1, -1, -3}) EXPECT_EQ(evaluate(p, x), 0) << x;
    EXPECT_NE(evaluate(p, 0), 0);
}

TEST(Spectrum, CubeIsExact) {
    const auto s = compute_spectrum(IntersectionArray::parse("{3,2,1;1,2,3}"));
    ASSERT_EQ(s.thetas.size(), 4u);
    const std::vector<long long> thetas{3, 1, -1, -3}, mults{1, 3, 3, 1};
    for (std::size_t j = 0; j < 4; ++j) {
        ASSERT_TRUE(s.thetas[j].is_exact());
        EXPECT_EQ(s.thetas[j].exact(), thetas[j]);
        EXPECT_EQ(s.multiplicities[j].exact(), mults[j]);
    }
    EXPECT_EQ(s.n, 8);
    EXPECT_TRUE(s.integral_multiplicities);
}

TEST(Spectrum, PetersenAndJohnson) {
    const auto p = compute_spectrum(IntersectionArray::parse("{3,2;1,1}"));
    EXPECT_EQ(p.thetas[1].exact(), 1);
    EXPECT_EQ(p.thetas[2].exact(), -2);
    EXPECT_EQ(p.multiplicities[1].exact(), 5);
    EXPECT_EQ(p.multiplicities[2].exact(), 4);
    // J(6,3): k - i(i+1) with multiplicities C(6,i) - C(6,i-1)
    const auto j = compute_spectrum(*family_intersection_array(parse_graph_spec("johnson 6 3")));
    const std::vector<long long> thetas{9, 3, -1, -3}, mults{1, 5, 9, 5};
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(j.thetas[i].exact(), thetas[i]);
        EXPECT_EQ(j.multiplicities[i].exact(), mults[i]);
    }
}

TEST(Spectrum, IrrationalEigenvaluesFallBackToDoubles) {
    // the heptagon: 2 cos(2 pi j / 7)
    const auto s = compute_spectrum(IntersectionArray::parse("{2,1,1;1,1,1}"));
    ASSERT_EQ(s.thetas.size(), 4u);
    EXPECT_TRUE(s.thetas[0].is_exact());
    for (std::size_t j = 1; j < 4; ++j) {
        EXPECT_FALSE(s.thetas[j].is_exact());
        EXPECT_NEAR(s.thetas[j].value(), 2 * std::cos(2 * M_PI * static_cast<double>(j) / 7), 1e-10);
        EXPECT_NEAR(s.multiplicities[j].value(), 2.0, 1e-8);
    }
}

TEST(Spectrum, StandardEigenvectorSatisfiesRecurrence) {
    const auto ia = IntersectionArray::parse("{7,6,5,4,3,2,1;1,2,3,4,5,6,7}");
    const auto s = compute_spectrum(ia);
    for (std::size_t j = 0; j < s.thetas.size(); ++j) {
        const auto& u = s.stdvecs[j];
        EXPECT_EQ(u[0].exact(), 1);
        for (std::size_t i = 0; i + 1 < u.size(); ++i) {
            Scalar lhs = Scalar(ia.a(i)) * u[i] + Scalar(ia.b(i)) * u[i + 1];
            if (i > 0) lhs += Scalar(ia.c(i)) * u[i - 1];
            EXPECT_EQ(lhs, s.thetas[j] * u[i]);
        }
    }
}

TEST(Spectrum, ValenciesAndVertexCount) {
    const auto ia = *family_intersection_array(parse_graph_spec("hamming 4 3"));
    const auto k = valencies(ia);
    const std::vector<long long> expected{1, 8, 24, 32, 16};
    for (std::size_t i = 0; i < k.size(); ++i) EXPECT_EQ(k[i], expected[i]);
    EXPECT_EQ(vertex_count(ia), 81);
}

TEST(Krein, HammingEqualsIntersectionNumbers) {
    const Graph g = hamming(4, 2);
    const auto q = krein_parameters(*family_intersection_array(g.spec()));
    const auto p = oracle::intersection_numbers(g);
    for (std::size_t i = 0; i <= 4; ++i)
        for (std::size_t j = 0; j <= 4; ++j)
            for (std::size_t l = 0; l <= 4; ++l) EXPECT_EQ(q(i, j, l).exact(), p[(i * 5 + j) * 5 + l]);
}

TEST(Krein, MatchesBruteForceOnJohnsonAndHalvedCube) {
    for (const char* spec : {"johnson 6 3", "halved-cube 5", "folded-cube 5", "doubled-odd 3"}) {
        const Graph g = generate(spec);
        const auto s = compute_spectrum(ambient_array(g));
        const auto q = krein_parameters(s);
        const auto es = oracle::eigenspaces(oracle::adjacency(g));
        const std::size_t d = s.diameter() + 1;
        ASSERT_EQ(es.values.size(), d) << spec;
        const auto bq = oracle::krein(es);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                for (std::size_t l = 0; l < d; ++l)
                    EXPECT_NEAR(q(i, j, l).value(), bq[(i * d + j) * d + l], 1e-8) << spec;
        EXPECT_LT(krein_residual(s, q), 1e-8);
    }
}

TEST(QPolyOrderings, Families) {
    // in the 3-cube p_22^1 = 0, so only the natural ordering survives; the 4-cube also admits 0,3,2,1,4
    EXPECT_EQ(qpoly_orderings(IntersectionArray::parse("{3,2,1;1,2,3}")), (std::vector<Ordering>{{1, 2, 3}}));
    EXPECT_EQ(qpoly_orderings(IntersectionArray::parse("{4,3,2,1;1,2,3,4}")),
              (std::vector<Ordering>{{1, 2, 3, 4}, {3, 2, 1, 4}}));
    EXPECT_EQ(qpoly_orderings(IntersectionArray::parse("{3,2;1,1}")).size(), 2u);
    EXPECT_TRUE(qpoly_orderings(IntersectionArray::parse("{3,2,2,1,1;1,1,2,2,3}")).empty());
    const auto jo = qpoly_orderings(*family_intersection_array(parse_graph_spec("johnson 7 3")));
    ASSERT_FALSE(jo.empty());
    EXPECT_EQ(jo.front(), natural_ordering(3));
}

TEST(QPolyOrderings, EveryReportedOrderingPassesTheDirectCheck) {
    for (const char* spec : {"hamming 5 2", "hamming 3 3", "johnson 8 4", "halved-cube 7", "folded-cube 7", "doubled-odd 4"}) {
        const auto ia = ambient_array(generate(spec));
        const auto q = krein_parameters(ia);
        for (const auto& o : qpoly_orderings(q)) EXPECT_TRUE(is_qpoly_ordering(q, o)) << spec;
    }
}

TEST(Scalar, RationalArithmetic) {
    const Scalar a(r(1, 3)), b(r(1, 6));
    EXPECT_EQ((a + b).exact(), r(1, 2));
    EXPECT_EQ((a / b).exact(), 2);
    EXPECT_FALSE(Scalar::approx(0.5).is_exact());
    EXPECT_TRUE(approx_equal(Scalar::approx(0.5), a + b, 1e-12));
    EXPECT_EQ(to_string(r(-3, 4)), "-3/4");
    EXPECT_EQ(parse_rational("-3/4"), r(-3, 4));
}

// random tridiagonal integer matrices: every exact eigenvalue is a root of the characteristic polynomial
TEST(Tridiagonal, RandomEigenvaluesAreRoots) {
    std::mt19937 rng(20261019);
    std::uniform_int_distribution<int> off(1, 6), diag(-4, 4), size(1, 6);
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = static_cast<std::size_t>(size(rng));
        Tridiagonal t;
        t.diag.resize(n);
        t.lower.resize(n);
        t.upper.resize(n);
        for (std::size_t i = 0; i < n; ++i) t.diag[i] = diag(rng);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            t.upper[i] = off(rng);
            t.lower[i + 1] = off(rng);
        }
        const auto eig = tridiagonal_eigenvalues(t);
        ASSERT_EQ(eig.size(), n);
        const auto p = characteristic_polynomial(t);
        for (std::size_t i = 0; i < n; ++i) {
            if (i > 0) EXPECT_GT(eig[i - 1].value(), eig[i].value());
            if (eig[i].is_exact()) {
                ASSERT_TRUE(is_integral(eig[i].exact()));
                EXPECT_EQ(evaluate(p, eig[i].round()), 0);
            }
        }
    }
}
