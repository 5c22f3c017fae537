// spectral.hpp - eigendecomposition of generators, eigenspace clustering, closed-form spectra
#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ultrawalks/generator.hpp"
#include "ultrawalks/kernel.hpp"

namespace ultrawalks {

inline constexpr double kDefaultClusterTolerance = 1e-8;

// Contiguous run [begin, end) of sorted eigenvalues treated as one eigenspace.
struct EigenCluster {
    Eigen::Index begin{0};
    Eigen::Index end{0};
    double value{0.0};  // mean eigenvalue of the run

    Eigen::Index size() const noexcept { return end - begin; }
};

struct EigenPartition {
    double tolerance{kDefaultClusterTolerance};
    std::vector<EigenCluster> clusters;
    // Set when fewer clusters were found than the caller expected.
    bool collapsed{false};
};

struct SpectralData {
    GroupSpec spec;
    Eigen::VectorXd eigenvalues;  // ascending
    Eigen::MatrixXd vectors;      // orthonormal columns
    EigenPartition groups;

    Eigen::Index dim() const noexcept { return eigenvalues.size(); }
    // Orthogonal projector onto one cluster's eigenspace.
    Eigen::MatrixXd projector(const EigenCluster& c) const;
};

// (eigenvalue, multiplicity) pairs.
struct SpectrumForecast {
    std::vector<std::pair<double, std::size_t>> levels;

    std::size_t total_multiplicity() const noexcept;
    // Eigenvalues repeated by multiplicity, ascending.
    std::vector<double> expanded() const;
    // Distinct eigenvalue count after merging levels closer than tol.
    std::size_t distinct_count(double tol = kDefaultClusterTolerance) const;
};

// Dense symmetric eigensolve (Eigen's self-adjoint QR algorithm); groups use the default tolerance.
SpectralData eigendecompose(const GeneratorMatrix& g);

// {0 : 1} plus {J^(p^j) - 1 : (p - 1) p^(j-1)} for j = 1..l.
SpectrumForecast closed_form_spectrum(const KernelProfile& profile);

// Single-linkage clustering of the sorted eigenvalues with gap threshold tau.
EigenPartition group_eigenvalues(const SpectralData& s, double tau,
                                 std::optional<std::size_t> expected_clusters = std::nullopt);

}  // namespace ultrawalks
