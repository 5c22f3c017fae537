#include "ultrawalks/padic.hpp"

#include <cmath>
#include <string>

#include "ultrawalks/errors.hpp"

namespace ultrawalks {

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

GroupSpec::GroupSpec(std::uint32_t p, std::uint32_t l) : p_(p), l_(l), size_(1), cell_measure_(1.0) {
    if (!is_prime(p)) {
        throw DomainError("GroupSpec: p = " + std::to_string(p) + " is not prime");
    }
    if (l < 1) {
        throw DomainError("GroupSpec: level l must be >= 1");
    }
    std::uint64_t n = 1;
    for (std::uint32_t i = 0; i < l; ++i) {
        n *= p;
        if (n > kMaxStates) {
            throw DomainError("GroupSpec: p^l exceeds the dense-matrix limit 2^20 (p = " +
                              std::to_string(p) + ", l = " + std::to_string(l) + ")");
        }
    }
    size_ = static_cast<std::uint32_t>(n);
    cell_measure_ = 1.0 / static_cast<double>(n);
}

double PadicValuation::norm(std::uint32_t p) const {
    if (is_zero_class()) return 0.0;
    return ipow(static_cast<double>(p), -static_cast<int>(v));
}

std::vector<std::uint32_t> encode_digits(const GroupSpec& spec, StateIndex state) {
    if (state.value >= spec.size()) {
        throw DomainError("encode_digits: state " + std::to_string(state.value) + " out of range");
    }
    std::vector<std::uint32_t> digits(spec.l());
    std::uint32_t x = state.value;
    for (auto& d : digits) {
        d = x % spec.p();
        x /= spec.p();
    }
    return digits;
}

StateIndex decode_digits(const GroupSpec& spec, const std::vector<std::uint32_t>& digits) {
    if (digits.size() != spec.l()) {
        throw DomainError("decode_digits: expected " + std::to_string(spec.l()) + " digits");
    }
    std::uint32_t value = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        if (*it >= spec.p()) throw DomainError("decode_digits: digit out of range");
        value = value * spec.p() + *it;
    }
    return StateIndex{value};
}

std::uint32_t valuation_of(const GroupSpec& spec, std::uint32_t d) noexcept {
    if (d == 0) return spec.l();
    std::uint32_t v = 0;
    while (d % spec.p() == 0) {
        d /= spec.p();
        ++v;
    }
    return v;
}

PadicValuation norm_of_difference(const GroupSpec& spec, StateIndex i, StateIndex k) {
    const auto n = spec.size();
    if (i.value >= n || k.value >= n) {
        throw DomainError("norm_of_difference: index out of range for p^l = " + std::to_string(n));
    }
    const std::uint32_t diff = (i.value + n - k.value) % n;
    return PadicValuation{valuation_of(spec, diff), spec.l()};
}

std::vector<StateIndex> enumerate_states(const GroupSpec& spec) {
    std::vector<StateIndex> out(spec.size());
    for (std::uint32_t i = 0; i < spec.size(); ++i) out[i] = StateIndex{i};
    return out;
}

std::uint64_t sphere_count(const GroupSpec& spec, std::uint32_t m) {
    if (m >= spec.l()) throw DomainError("sphere_count: m must be < l");
    std::uint64_t count = spec.p() - 1;
    for (std::uint32_t i = 0; i + m + 1 < spec.l(); ++i) count *= spec.p();
    return count;
}

double ipow(double base, int e) noexcept {
    double r = 1.0;
    const bool neg = e < 0;
    unsigned u = neg ? static_cast<unsigned>(-e) : static_cast<unsigned>(e);
    double b = base;
    while (u) {
        if (u & 1u) r *= b;
        b *= b;
        u >>= 1;
    }
    return neg ? 1.0 / r : r;
}

}  // namespace ultrawalks
