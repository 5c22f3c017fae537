// kernel.hpp - radial kernels J(|x|_p) on Z_p and their Fourier symbols
//
// A profile stores the per-level values J(p^-m), m = 0..l-1, together with
// the mass of the kernel on the innermost ball p^l Z_p (the "tail"). Those
// l + 1 numbers are all the discretized generator ever sees.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ultrawalks/padic.hpp"

namespace ultrawalks {

enum class KernelKind { bessel, log_bessel, tabulated };

const char* to_string(KernelKind kind) noexcept;

// Absolute tolerances on the unit-mass normalization.
inline constexpr double kBesselMassTolerance = 1e-12;
inline constexpr double kTabulatedMassTolerance = 1e-9;

class KernelProfile {
public:
    KernelProfile(GroupSpec spec, std::vector<double> values, double tail_mass, KernelKind kind,
                  double alpha);

    const GroupSpec& spec() const noexcept { return spec_; }
    KernelKind kind() const noexcept { return kind_; }
    // Bessel order; 1 for the log kernel, 0 (unused) for tabulated kernels.
    double alpha() const noexcept { return alpha_; }
    bool is_analytic() const noexcept { return kind_ != KernelKind::tabulated; }

    // J(p^-m) for m = 0..l-1.
    std::span<const double> values() const noexcept { return values_; }
    double value_at(std::uint32_t m) const;
    // Integral of J over p^l Z_p.
    double tail_mass() const noexcept { return tail_mass_; }

    // sum_m p^-m (1 - p^-1) J(p^-m) + tail_mass.
    double total_mass() const;

    // Fourier symbol J^(p^j). For j <= l this is computed from the profile;
    // beyond l only analytic kernels have one (closed form).
    double symbol(std::uint32_t j) const;

private:
    GroupSpec spec_;
    std::vector<double> values_;
    double tail_mass_;
    KernelKind kind_;
    double alpha_;
};

// Gamma(alpha) = (1 - p^(alpha-1)) / (1 - p^-alpha). Throws SingularParameterError at alpha in {0, 1}.
double gamma_p(const GroupSpec& spec, double alpha);

// Bessel potential J_alpha. alpha within 1e-12 of 1 is routed to the log kernel.
KernelProfile bessel_profile(const GroupSpec& spec, double alpha);
// J_1(x) = (1 - p^-1) log_p(p / |x|_p).
KernelProfile log_bessel_profile(const GroupSpec& spec);

// User-supplied radial kernel; rejects negative entries and |mass - 1| > 1e-9.
KernelProfile tabulated_profile(const GroupSpec& spec, std::vector<double> values, double tail_mass);

// max{1, p^j}^-alpha.
double fourier_symbol_closed(const GroupSpec& spec, double alpha, std::uint32_t j);

// J^(p^j), j in [0, l], from the per-level values and the tail:
//   sum_{m>=j} p^-m J(p^-m) - sum_{m>=j-1} p^-(m+1) J(p^-m).
// For Bessel kernels the m >= l terms are summed in closed form; for tabulated
// kernels the tail is treated as a uniform density on p^l Z_p.
double fourier_symbol_from_profile(const KernelProfile& profile, std::uint32_t j);

// Closed-form sum_{m>=k} p^-m J_alpha(p^-m) for Bessel kernels (alpha == 1 gives the log kernel).
double bessel_partial_moment(std::uint32_t p, double alpha, std::uint32_t k);

}  // namespace ultrawalks
