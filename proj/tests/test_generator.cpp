#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "ultrawalks/errors.hpp"
#include "ultrawalks/generator.hpp"

using namespace ultrawalks;

TEST_SUITE("generator") {

TEST_CASE("two-state generator") {
    for (double alpha : {0.5, 1.2, 3.0}) {
        const auto g = build_generator(bessel_profile(GroupSpec(2, 1), alpha));
        const double q = oracle::two_state_rate(alpha);
        CHECK(g.entries()(0, 1) == doctest::Approx(q).epsilon(1e-14));
        CHECK(g.entries()(1, 0) == doctest::Approx(q).epsilon(1e-14));
        CHECK(g.entries()(0, 0) == doctest::Approx(-q).epsilon(1e-14));
        CHECK(g.entries()(1, 1) == doctest::Approx(-q).epsilon(1e-14));
    }
}

TEST_CASE("kernel generator equals the entrywise oracle and validates") {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (std::uint32_t l : {1u, 2u, 3u}) {
            for (double alpha : {0.5, 1.0, 1.2, 2.0, 4.0}) {
                const GroupSpec s(p, l);
                const auto prof = bessel_profile(s, alpha);
                const auto g = build_generator(prof);
                const Eigen::MatrixXd ref = oracle::generator(p, l, alpha);
                CHECK((g.entries() - ref).cwiseAbs().maxCoeff() < 1e-13);
                const auto rep = validate_generator(g);
                CHECK(rep.passed());
                CHECK(rep.max_row_sum_deviation < 1e-12);
                CHECK(rep.ultrametric.value_or(false));
                CHECK(generator_diagonal_from_tail(prof) ==
                      doctest::Approx(generator_diagonal_from_rows(prof)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("32-state block structure") {
    const auto g = build_generator(bessel_profile(GroupSpec(2, 5), 1.2)).entries();
    // entries depend only on the lowest differing binary digit
    CHECK(g(0, 1) == g(0, 31));
    CHECK(g(0, 2) == g(0, 6));
    CHECK(g(0, 16) == g(3, 19));
    // for alpha > 1 the rate grows as states get closer
    CHECK(g(0, 1) < g(0, 2));
    CHECK(g(0, 2) < g(0, 4));
    CHECK((g - g.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("fault injection is caught with a witness") {
    const auto good = build_generator(bessel_profile(GroupSpec(2, 3), 2.0));
    Eigen::MatrixXd bad = good.entries();
    bad(1, 4) += 1e-6;
    const auto rep = validate_generator(GeneratorMatrix(good.spec(), bad, GeneratorOrigin::kernel));
    CHECK_FALSE(rep.passed());
    CHECK_FALSE(rep.symmetric);
    REQUIRE_FALSE(rep.witnesses.empty());
    CHECK_FALSE(rep.summary().empty());
}

TEST_CASE("adjacency generators") {
    {
        const GroupSpec s(2, 1);
        const auto adj = AdjacencySpec::from_edges(s, {{0}, {1}}, {{{0}, {1}}});
        const auto g = build_adjacency_generator(s, adj).entries();
        Eigen::Matrix2d expect;
        expect << -0.5, 0.5, 0.5, -0.5;
        CHECK((g - expect).cwiseAbs().maxCoeff() == 0.0);
    }
    {
        const GroupSpec s(2, 2);
        const auto empty = AdjacencySpec::from_edges(s, {{0}, {1}, {2}, {3}}, {});
        CHECK(build_adjacency_generator(s, empty).entries().isZero(0.0));
        const auto path = AdjacencySpec::from_edges(s, {{0}, {1}, {2}, {3}}, {{{0}, {1}}, {{1}, {2}}});
        const auto g = build_adjacency_generator(s, path);
        const Eigen::Vector4d diag(-0.25, -0.5, -0.25, 0.0);
        CHECK((g.entries().diagonal() - diag).cwiseAbs().maxCoeff() == 0.0);
        const auto rep = validate_generator(g);
        CHECK(rep.passed());
        CHECK_FALSE(rep.ultrametric.has_value());
    }
    const GroupSpec s(2, 2);
    CHECK_THROWS_AS(AdjacencySpec::from_edges(s, {{0}, {1}}, {{{0}, {0}}}), DomainError);
    CHECK_THROWS_AS(AdjacencySpec::from_edges(s, {{0}, {1}}, {{{0}, {2}}}), DomainError);
    AdjacencySpec lopsided{{{0}, {1}}, Eigen::MatrixXi::Zero(4, 4)};
    lopsided.adjacency(0, 1) = 1;
    CHECK_THROWS_AS(build_adjacency_generator(s, lopsided), DomainError);
}

TEST_CASE("property: random graphs give symmetric zero-row-sum generators") {
    auto gen = oracle::rng(4242);
    std::bernoulli_distribution coin(0.35);
    for (int trial = 0; trial < 30; ++trial) {
        const GroupSpec s(trial % 3 == 0 ? 3 : 2, 3);
        std::vector<StateIndex> vertices;
        for (std::uint32_t v = 0; v < s.size(); ++v) vertices.push_back({v});
        std::vector<std::pair<StateIndex, StateIndex>> edges;
        for (std::uint32_t a = 0; a < s.size(); ++a) {
            for (std::uint32_t b = a + 1; b < s.size(); ++b) {
                if (coin(gen)) edges.push_back({{a}, {b}});
            }
        }
        const auto g = build_adjacency_generator(s, AdjacencySpec::from_edges(s, vertices, edges));
        CHECK(validate_generator(g).passed());
        CHECK(g.entries().rowwise().sum().cwiseAbs().maxCoeff() < 1e-15);
    }
}

}
