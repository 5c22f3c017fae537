// dynamics.hpp - classical (CTMC) and quantum (CTQMC) transition matrices
//
// The reference path goes through the eigendecomposition of J^(l):
//   classical  p(t)  = V diag(e^{t lambda}) V^T
//   quantum    pi(t) = |V diag(e^{i t lambda}) V^T|^2   (entrywise)
// Two independent routes cross-check it: the heat kernel Z_0(x, t) of the
// continuum equation (classical) and the oscillatory integral over the
// frequency ball |xi|_p <= p^l (quantum). Both use only the kernel's Fourier
// symbol and p-adic character sums, never the eigenvectors.
#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "ultrawalks/kernel.hpp"
#include "ultrawalks/spectral.hpp"

namespace ultrawalks {

enum class WalkKind { classical, quantum };
enum class Provenance { spectral, oscillatory, heat_kernel };

const char* to_string(WalkKind kind) noexcept;
const char* to_string(Provenance provenance) noexcept;

struct WalkSnapshot {
    GroupSpec spec;
    double t{0.0};
    WalkKind kind{WalkKind::classical};
    Provenance provenance{Provenance::spectral};
    Eigen::MatrixXd matrix;
};

struct HeatKernelValue {
    std::uint32_t m{0};
    double t{0.0};
    double value{0.0};
};

// e^{t J}; rows sum to 1 and every entry tends to p^-l as t grows. t = 0 gives the exact identity.
WalkSnapshot classical_transition(const SpectralData& s, double t);

// U(t) = e^{i t J}, complex unitary; exactly the identity at t = 0.
Eigen::MatrixXcd quantum_amplitudes(const SpectralData& s, double t);
// |U(t)_{I,J}|^2, a doubly stochastic (unistochastic) matrix.
WalkSnapshot quantum_transition(const SpectralData& s, double t);

// Character sum of chi_p((r - v) xi) over the sphere |xi|_p = p^j, given
// valuation(r - v) (pass l for r == v):
//   p^j - p^(j-1)  if valuation >= j
//   -p^(j-1)       if valuation == j - 1
//   0              otherwise
// j = 0 denotes the unit ball and always yields 1.
double character_sum(std::uint32_t p, std::uint32_t j, std::uint32_t valuation);

// p^-l e^{it} [e^{-it} + sum_{j=1..l} e^{-it J^(p^j)} S_j(r - v)]; the first term is the unit ball.
std::complex<double> amplitude_oscillatory(const KernelProfile& profile, StateIndex r, StateIndex v,
                                           double t);
// Full |amplitude|^2 matrix; provenance oscillatory.
WalkSnapshot quantum_transition_oscillatory(const KernelProfile& profile, double t);

// Z_0(x, t) at |x|_p = p^-m, x != 0 (a finite sum):
//   1 + sum_{j=1..m} (p^j - p^(j-1)) e^{-t(1 - J^(p^j))} - p^m e^{-t(1 - J^(p^(m+1)))}.
// Tabulated kernels are limited to m < l; analytic kernels accept any m.
HeatKernelValue heat_kernel_value(const KernelProfile& profile, std::uint32_t m, double t);

// Off-diagonal p^-l Z_0(|v - r|_p, t); diagonal by mass complement.
WalkSnapshot classical_transition_via_heat(const KernelProfile& profile, double t);

struct SnapshotCheck {
    double max_row_deviation{0.0};
    double max_col_deviation{0.0};
    double min_entry{0.0};
    double max_entry{0.0};
    double max_asymmetry{0.0};
};
SnapshotCheck check_snapshot(const WalkSnapshot& s);
// Passes the row (classical) or row-and-column (quantum) stochasticity contract.
bool snapshot_ok(const WalkSnapshot& s, double tol = 1e-10);

}  // namespace ultrawalks
