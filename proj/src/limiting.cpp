#include "ultrawalks/limiting.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "ultrawalks/errors.hpp"

namespace ultrawalks {

const char* to_string(LimitingMethod method) noexcept {
    return method == LimitingMethod::quadrature ? "quadrature" : "spectral";
}

std::size_t default_quadrature_steps(double horizon) {
    if (!(horizon > 0.0)) throw DomainError("quadrature: T must be > 0");
    return static_cast<std::size_t>(std::llround(10.0 * horizon)) + 1;
}

namespace {

// Fixed so the reduction order never depends on the worker count.
constexpr std::size_t kQuadratureChunks = 64;

// sum_k w_k |U(t_k)|^2 over grid points [first, last).
Eigen::MatrixXd partial_average(const SpectralData& s, double h, std::size_t steps, std::size_t first,
                                std::size_t last) {
    const Eigen::Index n = s.dim();
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd re(n, n), im(n, n), scaled(n, n);
    for (std::size_t k = first; k < last; ++k) {
        const double t = h * static_cast<double>(k);
        const double w = (k == 0 || k + 1 == steps) ? 0.5 * h : h;
        const Eigen::ArrayXd phase = s.eigenvalues.array() * t;
        scaled.noalias() = s.vectors * phase.cos().matrix().asDiagonal();
        re.noalias() = scaled * s.vectors.transpose();
        scaled.noalias() = s.vectors * phase.sin().matrix().asDiagonal();
        im.noalias() = scaled * s.vectors.transpose();
        acc.array() += w * (re.array().square() + im.array().square());
    }
    return acc;
}

}  // namespace

LimitingDistribution limiting_quadrature(const SpectralData& s, double horizon, std::size_t steps,
                                         unsigned workers) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw DomainError("quadrature: T must be > 0");
    if (steps < 2) throw DomainError("quadrature: steps must be >= 2");
    const double h = horizon / static_cast<double>(steps - 1);

    const std::size_t chunks = std::min(kQuadratureChunks, steps);
    std::vector<Eigen::MatrixXd> partial(chunks);
    auto bounds = [&](std::size_t c) {
        return std::pair{steps * c / chunks, steps * (c + 1) / chunks};
    };

    unsigned n_workers = workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : workers;
    n_workers = static_cast<unsigned>(std::min<std::size_t>(n_workers, chunks));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t c = next++; c < chunks; c = next++) {
            const auto [first, last] = bounds(c);
            partial[c] = partial_average(s, h, steps, first, last);
        }
    };
    if (n_workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < n_workers; ++i) pool.emplace_back(work);
    }

    Eigen::MatrixXd chi = Eigen::MatrixXd::Zero(s.dim(), s.dim());
    for (const auto& m : partial) chi += m;
    chi /= horizon;
    return {s.spec, std::move(chi), LimitingMethod::quadrature, horizon, steps, 0.0, {}};
}

LimitingDistribution limiting_spectral(const SpectralData& s, double tau,
                                       std::optional<std::size_t> expected_clusters) {
    const auto part = group_eigenvalues(s, tau, expected_clusters);
    Eigen::MatrixXd chi = Eigen::MatrixXd::Zero(s.dim(), s.dim());
    for (const auto& c : part.clusters) chi += s.projector(c).cwiseAbs2();

    LimitingDistribution out{s.spec, std::move(chi), LimitingMethod::spectral, 0.0, 0, tau, {}};
    if (part.collapsed) {
        out.warnings.push_back("eigenvalue clusters collapsed: found " +
                               std::to_string(part.clusters.size()) + ", expected " +
                               std::to_string(*expected_clusters) + " at tau = " + std::to_string(tau));
    }
    return out;
}

ComparisonReport compare(const LimitingDistribution& chi) {
    const auto& m = chi.chi;
    const Eigen::Index n = m.rows();
    ComparisonReport r;
    r.p_sta = chi.spec.cell_measure();
    r.chi_min = m.minCoeff();
    r.chi_max = m.maxCoeff();
    const double trace = m.trace();
    r.chi_diag_mean = trace / static_cast<double>(n);
    r.chi_offdiag_mean = n > 1 ? (m.sum() - trace) / static_cast<double>(n * (n - 1)) : 0.0;
    r.dominance = r.chi_min > r.p_sta;
    return r;
}

bool doubly_stochastic(const Eigen::MatrixXd& m, double tol) {
    const double rows = (m.rowwise().sum().array() - 1.0).abs().maxCoeff();
    const double cols = (m.colwise().sum().array() - 1.0).abs().maxCoeff();
    return rows <= tol && cols <= tol;
}

}  // namespace ultrawalks
