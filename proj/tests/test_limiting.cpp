#include <doctest.h>

#include "oracles.hpp"
#include "ultrawalks/dynamics.hpp"
#include "ultrawalks/errors.hpp"
#include "ultrawalks/limiting.hpp"

using namespace ultrawalks;

namespace {

SpectralData spectral_for(std::uint32_t p, std::uint32_t l, double alpha) {
    return eigendecompose(build_generator(bessel_profile(GroupSpec(p, l), alpha)));
}

}  // namespace

TEST_SUITE("limiting") {

TEST_CASE("default grid") {
    CHECK(default_quadrature_steps(10000.0) == 100001);
    CHECK(default_quadrature_steps(1.0) == 11);
}

TEST_CASE("two-state limits") {
    const auto s = spectral_for(2, 1, 1.2);
    const auto spec_chi = limiting_spectral(s);
    CHECK((spec_chi.chi.array() - 0.5).abs().maxCoeff() < 1e-10);
    const auto quad = limiting_quadrature(s, 10000.0, 100000);
    CHECK((quad.chi.array() - 0.5).abs().maxCoeff() < 1e-3);
    const auto rep = compare(spec_chi);
    CHECK(rep.chi_min == doctest::Approx(0.5));
    CHECK(rep.chi_max == doctest::Approx(0.5));
    CHECK_FALSE(rep.dominance);
}

TEST_CASE("trapezoid average against a hand-rolled rule on a short window") {
    const auto s = spectral_for(3, 2, 0.9);
    const double horizon = 7.0;
    const std::size_t steps = 141;
    Eigen::MatrixXd ref = Eigen::MatrixXd::Zero(9, 9);
    for (std::size_t k = 0; k < steps; ++k) {
        const double t = horizon * double(k) / double(steps - 1);
        const double w = (k == 0 || k + 1 == steps) ? 0.5 : 1.0;
        ref += w * quantum_transition(s, t).matrix;
    }
    ref /= double(steps - 1);
    const auto quad = limiting_quadrature(s, horizon, steps);
    CHECK((quad.chi - ref).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("quadrature is independent of the worker count") {
    const auto s = spectral_for(2, 4, 1.2);
    const auto one = limiting_quadrature(s, 300.0, 3001, 1);
    const auto four = limiting_quadrature(s, 300.0, 3001, 4);
    CHECK((one.chi - four.chi).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("near-zero horizon is the identity") {
    const auto s = spectral_for(2, 3, 1.2);
    const auto quad = limiting_quadrature(s, 1e-9, 2);
    CHECK((quad.chi - Eigen::MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK_THROWS_AS(limiting_quadrature(s, 0.0, 10), DomainError);
    CHECK_THROWS_AS(limiting_quadrature(s, 1.0, 1), DomainError);
}

TEST_CASE("zero generator has chi = identity") {
    const GeneratorMatrix zero(GroupSpec(2, 2), Eigen::MatrixXd::Zero(4, 4), GeneratorOrigin::adjacency);
    const auto chi = limiting_spectral(eigendecompose(zero));
    CHECK((chi.chi - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("32-state limit: methods agree and both are doubly stochastic") {
    const auto s = spectral_for(2, 5, 1.2);
    const auto spec_chi = limiting_spectral(s, kDefaultClusterTolerance, 6);
    CHECK(spec_chi.warnings.empty());
    CHECK(doubly_stochastic(spec_chi.chi, 1e-10));
    const auto quad = limiting_quadrature(s, 10000.0, default_quadrature_steps(10000.0));
    CHECK(doubly_stochastic(quad.chi, 1e-8));
    CHECK((quad.chi - spec_chi.chi).cwiseAbs().maxCoeff() < 1e-2);
}

TEST_CASE("comparison against the stationary value") {
    const auto rep = compare(limiting_spectral(spectral_for(2, 5, 1.2)));
    CHECK(rep.p_sta == 1.0 / 32);
    // rows of a doubly stochastic 32 x 32 matrix average to 1/32, so the
    // minimum can never exceed the stationary value
    CHECK(rep.chi_min <= rep.p_sta);
    CHECK(rep.chi_max >= rep.p_sta);
    CHECK_FALSE(rep.dominance);
    CHECK(rep.chi_min == doctest::Approx(2.0 / 1024).epsilon(1e-9));
    CHECK(rep.chi_diag_mean > 5.0 * rep.chi_offdiag_mean);
}

TEST_CASE("collapsed clusters leave a warning") {
    const auto s = spectral_for(2, 5, 5.0);
    const auto chi = limiting_spectral(s, 1e-2, 6);
    CHECK_FALSE(chi.warnings.empty());
}

TEST_CASE("property: spectral chi equals sum of squared projector entries") {
    for (double alpha : {0.5, 2.0, 4.5}) {
        const auto s = spectral_for(3, 2, alpha);
        Eigen::MatrixXd ref = Eigen::MatrixXd::Zero(9, 9);
        for (const auto& c : s.groups.clusters) ref += s.projector(c).cwiseAbs2();
        CHECK((limiting_spectral(s).chi - ref).cwiseAbs().maxCoeff() < 1e-14);
    }
}

}
