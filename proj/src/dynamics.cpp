#include "ultrawalks/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ultrawalks/errors.hpp"

namespace ultrawalks {

const char* to_string(WalkKind kind) noexcept {
    return kind == WalkKind::classical ? "classical" : "quantum";
}

const char* to_string(Provenance provenance) noexcept {
    switch (provenance) {
        case Provenance::spectral: return "spectral";
        case Provenance::oscillatory: return "oscillatory";
        case Provenance::heat_kernel: return "heat-kernel";
    }
    return "unknown";
}

namespace {

void require_time(double t, const char* who) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw DomainError(std::string(who) + ": time must be finite and >= 0");
    }
}

// V diag(w) V^T
Eigen::MatrixXd weighted_outer(const Eigen::MatrixXd& v, const Eigen::VectorXd& w) {
    Eigen::MatrixXd scaled = v * w.asDiagonal();
    return scaled * v.transpose();
}

}  // namespace

WalkSnapshot classical_transition(const SpectralData& s, double t) {
    require_time(t, "classical_transition");
    if (t == 0.0) return {s.spec, t, WalkKind::classical, Provenance::spectral, Eigen::MatrixXd::Identity(s.dim(), s.dim())};
    const Eigen::VectorXd w = (s.eigenvalues * t).array().exp();
    return {s.spec, t, WalkKind::classical, Provenance::spectral, weighted_outer(s.vectors, w)};
}

Eigen::MatrixXcd quantum_amplitudes(const SpectralData& s, double t) {
    require_time(t, "quantum_amplitudes");
    if (t == 0.0) return Eigen::MatrixXcd::Identity(s.dim(), s.dim());
    const Eigen::VectorXd phase = s.eigenvalues * t;
    const Eigen::VectorXd c = phase.array().cos();
    const Eigen::VectorXd sn = phase.array().sin();
    Eigen::MatrixXcd u(s.dim(), s.dim());
    u.real() = weighted_outer(s.vectors, c);
    u.imag() = weighted_outer(s.vectors, sn);
    return u;
}

WalkSnapshot quantum_transition(const SpectralData& s, double t) {
    const Eigen::MatrixXcd u = quantum_amplitudes(s, t);
    return {s.spec, t, WalkKind::quantum, Provenance::spectral, u.cwiseAbs2()};
}

double character_sum(std::uint32_t p, std::uint32_t j, std::uint32_t valuation) {
    if (j == 0) return 1.0;
    const double hi = ipow(p, static_cast<int>(j));
    const double lo = ipow(p, static_cast<int>(j) - 1);
    if (valuation >= j) return hi - lo;
    if (valuation + 1 == j) return -lo;
    return 0.0;
}

namespace {

// Amplitude as a function of valuation(r - v); symbols[j] = J^(p^j).
std::complex<double> amplitude_by_valuation(const GroupSpec& spec, const std::vector<double>& symbols,
                                            std::uint32_t valuation, double t) {
    // The unit ball |xi|_p <= 1 has J^ = 1 and volume 1.
    std::complex<double> acc = std::polar(1.0, -t * symbols[0]);
    for (std::uint32_t j = 1; j <= spec.l(); ++j) {
        const double s = character_sum(spec.p(), j, valuation);
        if (s != 0.0) acc += s * std::polar(1.0, -t * symbols[j]);
    }
    return spec.cell_measure() * std::polar(1.0, t) * acc;
}

std::vector<double> symbol_table(const KernelProfile& profile) {
    std::vector<double> out(profile.spec().l() + 1);
    for (std::uint32_t j = 0; j < out.size(); ++j) out[j] = fourier_symbol_from_profile(profile, j);
    return out;
}

}  // namespace

std::complex<double> amplitude_oscillatory(const KernelProfile& profile, StateIndex r, StateIndex v,
                                           double t) {
    require_time(t, "amplitude_oscillatory");
    const auto& spec = profile.spec();
    const auto val = norm_of_difference(spec, r, v).v;
    return amplitude_by_valuation(spec, symbol_table(profile), val, t);
}

WalkSnapshot quantum_transition_oscillatory(const KernelProfile& profile, double t) {
    require_time(t, "quantum_transition_oscillatory");
    const auto& spec = profile.spec();
    const auto symbols = symbol_table(profile);
    std::vector<double> prob(spec.l() + 1);
    for (std::uint32_t v = 0; v <= spec.l(); ++v) {
        prob[v] = std::norm(amplitude_by_valuation(spec, symbols, v, t));
    }
    const std::uint32_t n = spec.size();
    Eigen::MatrixXd m(n, n);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t k = 0; k < n; ++k) m(i, k) = prob[valuation_of(spec, (k + n - i) % n)];
    }
    return {spec, t, WalkKind::quantum, Provenance::oscillatory, std::move(m)};
}

HeatKernelValue heat_kernel_value(const KernelProfile& profile, std::uint32_t m, double t) {
    require_time(t, "heat_kernel_value");
    const auto& spec = profile.spec();
    if (!profile.is_analytic() && m >= spec.l()) {
        throw DomainError("heat_kernel_value: tabulated kernels need m < l");
    }
    const double p = spec.p();
    double z = 1.0;
    double pj = 1.0;  // p^(j-1)
    for (std::uint32_t j = 1; j <= m; ++j) {
        z += (pj * p - pj) * std::exp(-t * (1.0 - profile.symbol(j)));
        pj *= p;
    }
    z -= pj * std::exp(-t * (1.0 - profile.symbol(m + 1)));
    return {m, t, z};
}

WalkSnapshot classical_transition_via_heat(const KernelProfile& profile, double t) {
    require_time(t, "classical_transition_via_heat");
    const auto& spec = profile.spec();
    const std::uint32_t n = spec.size();
    std::vector<double> off(spec.l());
    for (std::uint32_t m = 0; m < spec.l(); ++m) {
        off[m] = spec.cell_measure() * heat_kernel_value(profile, m, t).value;
    }
    double row_off = 0.0;
    for (std::uint32_t d = 1; d < n; ++d) row_off += off[valuation_of(spec, d)];
    const double diag = 1.0 - row_off;

    Eigen::MatrixXd mat(n, n);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t k = 0; k < n; ++k) {
            mat(i, k) = i == k ? diag : off[valuation_of(spec, (k + n - i) % n)];
        }
    }
    return {spec, t, WalkKind::classical, Provenance::heat_kernel, std::move(mat)};
}

SnapshotCheck check_snapshot(const WalkSnapshot& s) {
    SnapshotCheck c;
    const auto& m = s.matrix;
    c.max_row_deviation = (m.rowwise().sum().array() - 1.0).abs().maxCoeff();
    c.max_col_deviation = (m.colwise().sum().array() - 1.0).abs().maxCoeff();
    c.min_entry = m.minCoeff();
    c.max_entry = m.maxCoeff();
    c.max_asymmetry = (m - m.transpose()).cwiseAbs().maxCoeff();
    return c;
}

bool snapshot_ok(const WalkSnapshot& s, double tol) {
    const auto c = check_snapshot(s);
    const bool entries_ok = c.min_entry >= -1e-12 && c.max_entry <= 1.0 + 1e-12;
    const bool rows_ok = c.max_row_deviation <= tol;
    const bool cols_ok = s.kind == WalkKind::classical || c.max_col_deviation <= tol;
    return entries_ok && rows_ok && cols_ok;
}

}  // namespace ultrawalks
