#include "ultrawalks/spectral.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "ultrawalks/errors.hpp"

namespace ultrawalks {

Eigen::MatrixXd SpectralData::projector(const EigenCluster& c) const {
    const auto block = vectors.middleCols(c.begin, c.size());
    return block * block.transpose();
}

std::size_t SpectrumForecast::total_multiplicity() const noexcept {
    std::size_t n = 0;
    for (const auto& [value, mult] : levels) n += mult;
    return n;
}

std::vector<double> SpectrumForecast::expanded() const {
    std::vector<double> out;
    out.reserve(total_multiplicity());
    for (const auto& [value, mult] : levels) out.insert(out.end(), mult, value);
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t SpectrumForecast::distinct_count(double tol) const {
    std::vector<double> values;
    for (const auto& [value, mult] : levels) values.push_back(value);
    std::sort(values.begin(), values.end());
    std::size_t count = values.empty() ? 0 : 1;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] - values[i - 1] > tol) ++count;
    }
    return count;
}

SpectralData eigendecompose(const GeneratorMatrix& g) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g.entries(), Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw NumericError("eigendecompose: symmetric eigensolver did not converge");
    }
    SpectralData s{g.spec(), solver.eigenvalues(), solver.eigenvectors(), {}};
    s.groups = group_eigenvalues(s, kDefaultClusterTolerance);
    return s;
}

SpectrumForecast closed_form_spectrum(const KernelProfile& profile) {
    const auto& spec = profile.spec();
    SpectrumForecast f;
    f.levels.emplace_back(0.0, 1);
    std::size_t mult = spec.p() - 1;
    for (std::uint32_t j = 1; j <= spec.l(); ++j) {
        f.levels.emplace_back(fourier_symbol_from_profile(profile, j) - 1.0, mult);
        mult *= spec.p();
    }
    return f;
}

EigenPartition group_eigenvalues(const SpectralData& s, double tau,
                                 std::optional<std::size_t> expected_clusters) {
    if (!(tau > 0.0)) throw DomainError("group_eigenvalues: tau must be > 0");
    EigenPartition part;
    part.tolerance = tau;
    const auto& ev = s.eigenvalues;
    const Eigen::Index n = ev.size();
    Eigen::Index start = 0;
    for (Eigen::Index i = 1; i <= n; ++i) {
        if (i == n || ev(i) - ev(i - 1) > tau) {
            part.clusters.push_back({start, i, ev.segment(start, i - start).mean()});
            start = i;
        }
    }
    if (expected_clusters && part.clusters.size() < *expected_clusters) part.collapsed = true;
    return part;
}

}  // namespace ultrawalks
