// limiting.hpp - long-time average chi of the quantum transition matrix
//
//   chi_{I,J} = lim_{T->inf} (1/T) int_0^T pi_{I,J}(t) dt
//
// Averaging kills every cross term e^{it(lambda - mu)} with lambda != mu, so
// chi = sum over distinct eigenvalues of |P_lambda|^2 (entrywise). The
// quadrature route evaluates the defining integral directly and exists to
// check that identity.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ultrawalks/spectral.hpp"

namespace ultrawalks {

enum class LimitingMethod { quadrature, spectral };

const char* to_string(LimitingMethod method) noexcept;

struct LimitingDistribution {
    GroupSpec spec;
    Eigen::MatrixXd chi;
    LimitingMethod method{LimitingMethod::spectral};
    double horizon{0.0};    // T (quadrature)
    std::size_t steps{0};   // grid points (quadrature)
    double tolerance{0.0};  // tau_cluster (spectral)
    std::vector<std::string> warnings;
};

// Grid with spacing 0.1 on [0, T]: round(10 T) + 1 points.
std::size_t default_quadrature_steps(double horizon);

// Composite trapezoid average of pi(t) over `steps` uniform points on [0, T].
// Partial sums over fixed sub-intervals run on `workers` threads (0 = hardware
// concurrency) and are reduced in sub-interval order, so the result does not
// depend on the thread count.
LimitingDistribution limiting_quadrature(const SpectralData& s, double horizon, std::size_t steps,
                                         unsigned workers = 0);

// Exact average from spectral projectors. Collapsed clusters (fewer than
// expected_clusters) attach a warning to the result.
LimitingDistribution limiting_spectral(const SpectralData& s, double tau = kDefaultClusterTolerance,
                                       std::optional<std::size_t> expected_clusters = std::nullopt);

struct ComparisonReport {
    double p_sta{0.0};  // p^-l
    double chi_min{0.0};
    double chi_max{0.0};  // ||chi||_max
    double chi_diag_mean{0.0};
    double chi_offdiag_mean{0.0};
    // chi_min > p^-l, strictly.
    bool dominance{false};
};

ComparisonReport compare(const LimitingDistribution& chi);

// Row and column sums of chi within tol of 1.
bool doubly_stochastic(const Eigen::MatrixXd& m, double tol);

}  // namespace ultrawalks
