#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "ultrawalks/errors.hpp"
#include "ultrawalks/spectral.hpp"

using namespace ultrawalks;

TEST_SUITE("spectral") {

TEST_CASE("two-state spectrum") {
    const auto prof = bessel_profile(GroupSpec(2, 1), 2.0);
    const auto s = eigendecompose(build_generator(prof));
    CHECK(s.eigenvalues(0) == doctest::Approx(std::pow(2.0, -2.0) - 1.0).epsilon(1e-14));
    CHECK(std::abs(s.eigenvalues(1)) < 1e-15);
    CHECK(s.groups.clusters.size() == 2);
    const auto f = closed_form_spectrum(prof);
    REQUIRE(f.levels.size() == 2);
    CHECK(f.levels[0] == std::pair<double, std::size_t>{0.0, 1});
    CHECK(f.levels[1].first == doctest::Approx(-0.75));
}

TEST_CASE("forecast multiplicities") {
    const auto f = closed_form_spectrum(bessel_profile(GroupSpec(2, 5), 1.2));
    std::vector<std::size_t> mult;
    for (auto [v, m] : f.levels) mult.push_back(m);
    CHECK(mult == std::vector<std::size_t>{1, 1, 2, 4, 8, 16});
    CHECK(f.total_multiplicity() == 32);
    CHECK(f.distinct_count() == 6);

    const auto g = closed_form_spectrum(bessel_profile(GroupSpec(3, 2), 2.0));
    REQUIRE(g.levels.size() == 3);
    CHECK(g.levels[1].first == doctest::Approx(1.0 / 9 - 1.0));
    CHECK(g.levels[1].second == 2);
    CHECK(g.levels[2].first == doctest::Approx(1.0 / 81 - 1.0));
    CHECK(g.levels[2].second == 6);
}

TEST_CASE("numeric spectrum matches the forecast with multiplicities") {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (std::uint32_t l : {1u, 2u, 3u}) {
            for (double alpha : {0.5, 1.0, 1.2, 2.0, 4.0}) {
                const auto prof = bessel_profile(GroupSpec(p, l), alpha);
                const auto s = eigendecompose(build_generator(prof));
                auto expect = closed_form_spectrum(prof).expanded();
                REQUIRE(expect.size() == static_cast<std::size_t>(s.dim()));
                for (std::size_t i = 0; i < expect.size(); ++i) CHECK(std::abs(s.eigenvalues(i) - expect[i]) < 1e-9);
                // orthonormal eigenbasis
                const Eigen::MatrixXd vtv = s.vectors.transpose() * s.vectors;
                CHECK((vtv - Eigen::MatrixXd::Identity(s.dim(), s.dim())).cwiseAbs().maxCoeff() < 1e-12);
            }
        }
    }
}

TEST_CASE("clusters and projectors on 32 states") {
    const auto s = eigendecompose(build_generator(bessel_profile(GroupSpec(2, 5), 1.2)));
    std::vector<Eigen::Index> sizes;
    for (const auto& c : s.groups.clusters) sizes.push_back(c.size());
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<Eigen::Index>{1, 1, 2, 4, 8, 16});
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(32, 32);
    for (const auto& c : s.groups.clusters) {
        const Eigen::MatrixXd pr = s.projector(c);
        CHECK((pr * pr - pr).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((pr - pr.transpose()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(pr.trace() == doctest::Approx(double(c.size())).epsilon(1e-12));
        sum += pr;
    }
    CHECK((sum - Eigen::MatrixXd::Identity(32, 32)).cwiseAbs().maxCoeff() < 1e-12);

    // projectors are circulant in the difference: (P_j)_{IK} = p^-l S_j(I - K)
    // with S_j the brute-force character integral
    for (const auto& c : s.groups.clusters) {
        const Eigen::MatrixXd pr = s.projector(c);
        const double lambda = c.value;
        std::uint32_t j = 0;
        for (std::uint32_t jj = 1; jj <= 5; ++jj) {
            if (std::abs(lambda - (std::pow(2.0, -1.2 * jj) - 1.0)) < 1e-8) j = jj;
        }
        for (std::uint32_t k = 0; k < 32; ++k) {
            CHECK(pr(0, k) == doctest::Approx(oracle::character_integral(2, j, k) / 32.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("zero matrix and tolerance") {
    const GroupSpec spec(2, 2);
    const GeneratorMatrix zero(spec, Eigen::MatrixXd::Zero(4, 4), GeneratorOrigin::adjacency);
    const auto s = eigendecompose(zero);
    CHECK(s.eigenvalues.cwiseAbs().maxCoeff() == 0.0);
    REQUIRE(s.groups.clusters.size() == 1);
    CHECK((s.projector(s.groups.clusters[0]) - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK_THROWS_AS(group_eigenvalues(s, 0.0), DomainError);
    CHECK_THROWS_AS(group_eigenvalues(s, -1.0), DomainError);
}

TEST_CASE("a coarse tolerance collapses clusters and says so") {
    const auto s = eigendecompose(build_generator(bessel_profile(GroupSpec(2, 5), 5.0)));
    const auto tight = group_eigenvalues(s, 1e-8, 6);
    CHECK(tight.clusters.size() == 6);
    CHECK_FALSE(tight.collapsed);
    const auto coarse = group_eigenvalues(s, 1e-2, 6);
    CHECK(coarse.clusters.size() < 6);
    CHECK(coarse.collapsed);
}

TEST_CASE("property: random orthogonal conjugation keeps the spectrum") {
    auto gen = oracle::rng(99);
    std::normal_distribution<double> normal;
    const auto g = build_generator(bessel_profile(GroupSpec(3, 2), 1.7));
    const auto base = eigendecompose(g);
    for (int trial = 0; trial < 5; ++trial) {
        Eigen::MatrixXd a(9, 9);
        for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = normal(gen);
        const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(a).householderQ();
        Eigen::MatrixXd m = q * g.entries() * q.transpose();
        m = 0.5 * (m + m.transpose());
        const auto s = eigendecompose(GeneratorMatrix(g.spec(), m, GeneratorOrigin::adjacency));
        CHECK((s.eigenvalues - base.eigenvalues).cwiseAbs().maxCoeff() < 1e-12);
    }
}

}
