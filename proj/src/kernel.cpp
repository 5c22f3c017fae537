#include "ultrawalks/kernel.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "ultrawalks/errors.hpp"

namespace ultrawalks {

namespace {

constexpr double kSingularWindow = 1e-12;

bool near(double a, double b) noexcept { return std::abs(a - b) <= kSingularWindow; }

}  // namespace

const char* to_string(KernelKind kind) noexcept {
    switch (kind) {
        case KernelKind::bessel: return "bessel";
        case KernelKind::log_bessel: return "log_bessel";
        case KernelKind::tabulated: return "tabulated";
    }
    return "unknown";
}

KernelProfile::KernelProfile(GroupSpec spec, std::vector<double> values, double tail_mass,
                             KernelKind kind, double alpha)
    : spec_(spec), values_(std::move(values)), tail_mass_(tail_mass), kind_(kind), alpha_(alpha) {
    if (values_.size() != spec_.l()) {
        throw KernelInvalidError("kernel profile: expected " + std::to_string(spec_.l()) +
                                 " per-level values, got " + std::to_string(values_.size()));
    }
    for (std::size_t m = 0; m < values_.size(); ++m) {
        if (!std::isfinite(values_[m]) || values_[m] < 0.0) {
            throw KernelInvalidError("kernel profile: value J(p^-" + std::to_string(m) +
                                     ") = " + std::to_string(values_[m]) + " is negative or not finite");
        }
    }
    if (!std::isfinite(tail_mass_) || tail_mass_ < -1e-12) {
        throw KernelInvalidError("kernel profile: tail mass " + std::to_string(tail_mass_) +
                                 " is negative");
    }
    const double mass = total_mass();
    const double tol = kind_ == KernelKind::tabulated ? kTabulatedMassTolerance : kBesselMassTolerance;
    if (std::abs(mass - 1.0) > tol) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "kernel profile: total mass %.17g differs from 1", mass);
        throw MassViolationError(buf, mass);
    }
}

double KernelProfile::value_at(std::uint32_t m) const {
    if (m >= values_.size()) throw DomainError("kernel profile: level out of range");
    return values_[m];
}

double KernelProfile::total_mass() const {
    const double p = spec_.p();
    const double shell = 1.0 - 1.0 / p;
    double mass = 0.0;
    double scale = 1.0;
    for (double v : values_) {
        mass += scale * shell * v;
        scale /= p;
    }
    return mass + tail_mass_;
}

double KernelProfile::symbol(std::uint32_t j) const {
    if (j <= spec_.l()) return fourier_symbol_from_profile(*this, j);
    if (!is_analytic()) {
        throw DomainError("kernel symbol: tabulated kernels have no symbol beyond p^l");
    }
    return fourier_symbol_closed(spec_, alpha_, j);
}

double gamma_p(const GroupSpec& spec, double alpha) {
    if (near(alpha, 0.0)) throw SingularParameterError("Gamma(alpha): alpha = 0 is a pole");
    if (near(alpha, 1.0)) throw SingularParameterError("Gamma(alpha): alpha = 1 is a zero");
    const double p = spec.p();
    return (1.0 - std::pow(p, alpha - 1.0)) / (1.0 - std::pow(p, -alpha));
}

double bessel_partial_moment(std::uint32_t p_int, double alpha, std::uint32_t k) {
    const double p = p_int;
    const double x = 1.0 / p;
    const double xk = ipow(p, -static_cast<int>(k));
    if (near(alpha, 1.0)) {
        // (1 - x) sum_{m>=k} (m + 1) x^m
        return xk * (static_cast<double>(k) + 1.0 + x / (1.0 - x));
    }
    const double inv_gamma = (1.0 - std::pow(p, -alpha)) / (1.0 - std::pow(p, alpha - 1.0));
    const double geometric_alpha = std::pow(p, -static_cast<double>(k) * alpha) / (1.0 - std::pow(p, -alpha));
    const double geometric_one = std::pow(p, alpha - 1.0) * xk / (1.0 - x);
    return inv_gamma * (geometric_alpha - geometric_one);
}

namespace {

// Tail by mass complement: 1 - sum_{I != 0} p^-l J(|I|_p).
double complement_tail(const GroupSpec& spec, const std::vector<double>& values) {
    const double p = spec.p();
    double inner = 0.0;
    double scale = 1.0;
    for (double v : values) {
        inner += scale * (1.0 - 1.0 / p) * v;
        scale /= p;
    }
    return 1.0 - inner;
}

}  // namespace

KernelProfile bessel_profile(const GroupSpec& spec, double alpha) {
    if (near(alpha, 0.0)) throw SingularParameterError("bessel_profile: alpha = 0 is a pole of Gamma");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw DomainError("bessel_profile: alpha must be > 0");
    }
    if (near(alpha, 1.0)) return log_bessel_profile(spec);
    const double inv_gamma = 1.0 / gamma_p(spec, alpha);
    const double p = spec.p();
    const double shift = std::pow(p, alpha - 1.0);
    std::vector<double> values(spec.l());
    for (std::uint32_t m = 0; m < spec.l(); ++m) {
        values[m] = inv_gamma * (std::pow(p, -static_cast<double>(m) * (alpha - 1.0)) - shift);
    }
    const double tail = complement_tail(spec, values);
    if (tail < -1e-12) {
        throw KernelInvalidError("bessel_profile: negative tail mass " + std::to_string(tail));
    }
    return KernelProfile(spec, std::move(values), tail, KernelKind::bessel, alpha);
}

KernelProfile log_bessel_profile(const GroupSpec& spec) {
    const double shell = 1.0 - 1.0 / static_cast<double>(spec.p());
    std::vector<double> values(spec.l());
    for (std::uint32_t m = 0; m < spec.l(); ++m) values[m] = shell * (static_cast<double>(m) + 1.0);
    const double tail = complement_tail(spec, values);
    if (tail < -1e-12) {
        throw KernelInvalidError("log_bessel_profile: negative tail mass " + std::to_string(tail));
    }
    return KernelProfile(spec, std::move(values), tail, KernelKind::log_bessel, 1.0);
}

KernelProfile tabulated_profile(const GroupSpec& spec, std::vector<double> values, double tail_mass) {
    return KernelProfile(spec, std::move(values), tail_mass, KernelKind::tabulated, 0.0);
}

double fourier_symbol_closed(const GroupSpec& spec, double alpha, std::uint32_t j) {
    if (!(alpha > 0.0)) throw DomainError("fourier_symbol_closed: alpha must be > 0");
    if (j == 0) return 1.0;
    return std::pow(static_cast<double>(spec.p()), -static_cast<double>(j) * alpha);
}

double fourier_symbol_from_profile(const KernelProfile& profile, std::uint32_t j) {
    const auto& spec = profile.spec();
    const std::uint32_t l = spec.l();
    if (j > l) throw DomainError("fourier_symbol_from_profile: j must be <= l");
    const double p = spec.p();
    auto vals = profile.values();

    double sum = 0.0;
    double scale = 1.0;  // p^-m
    for (std::uint32_t m = 0; m < l; ++m) {
        if (m >= j) sum += scale * vals[m];
        if (m + 1 >= j) sum -= scale / p * vals[m];
        scale /= p;
    }
    // For j <= l every m >= l term carries both indicators, so the tail
    // contributes exactly its mass.
    const double tail = profile.is_analytic()
                            ? (1.0 - 1.0 / p) * bessel_partial_moment(spec.p(), profile.alpha(), l)
                            : profile.tail_mass();
    return sum + tail;
}

}  // namespace ultrawalks
