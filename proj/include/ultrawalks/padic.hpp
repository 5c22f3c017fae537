// padic.hpp - arithmetic on the finite quotient group G_l = Z_p / p^l Z_p
//
// Elements of G_l are stored as plain integers I in [0, p^l) whose base-p
// digits I_0 + I_1 p + ... + I_{l-1} p^{l-1} are the truncated p-adic
// expansion. The p-adic norm of a difference is kept as an exact integer
// valuation; floating point only appears when a kernel is evaluated.
#pragma once

#include <cstdint>
#include <vector>

namespace ultrawalks {

// Largest admissible state-space size; guards dense p^l x p^l matrices.
inline constexpr std::uint64_t kMaxStates = std::uint64_t{1} << 20;

bool is_prime(std::uint64_t n) noexcept;

class GroupSpec {
public:
    // Throws DomainError unless p is prime and 1 <= l with p^l <= kMaxStates.
    GroupSpec(std::uint32_t p, std::uint32_t l);

    std::uint32_t p() const noexcept { return p_; }
    std::uint32_t l() const noexcept { return l_; }
    // p^l, the number of states.
    std::uint32_t size() const noexcept { return size_; }
    // p^-l, the Haar measure of one ball I + p^l Z_p.
    double cell_measure() const noexcept { return cell_measure_; }

    friend bool operator==(const GroupSpec&, const GroupSpec&) = default;

private:
    std::uint32_t p_;
    std::uint32_t l_;
    std::uint32_t size_;
    double cell_measure_;
};

// Strong type for an element of G_l.
struct StateIndex {
    std::uint32_t value{0};
    friend auto operator<=>(const StateIndex&, const StateIndex&) = default;
};

// Exact p-adic valuation of a difference in G_l. v == level encodes I == K,
// the zero-norm class (the difference lies in p^l Z_p).
struct PadicValuation {
    std::uint32_t v{0};
    std::uint32_t level{0};

    bool is_zero_class() const noexcept { return v >= level; }
    // p^-v, or 0 for the zero-norm class.
    double norm(std::uint32_t p) const;

    friend bool operator==(const PadicValuation&, const PadicValuation&) = default;
};

// Base-p digits [I_0, ..., I_{l-1}] of a state.
std::vector<std::uint32_t> encode_digits(const GroupSpec& spec, StateIndex state);
StateIndex decode_digits(const GroupSpec& spec, const std::vector<std::uint32_t>& digits);

// Valuation of (I - K) mod p^l: index of the lowest differing base-p digit.
PadicValuation norm_of_difference(const GroupSpec& spec, StateIndex i, StateIndex k);

// Unchecked hot-path variant: valuation of the residue d in [0, p^l), returning l for d == 0.
std::uint32_t valuation_of(const GroupSpec& spec, std::uint32_t d) noexcept;

// [0, 1, ..., p^l - 1]; the row/column order of every matrix in the library.
std::vector<StateIndex> enumerate_states(const GroupSpec& spec);

// #{I != 0 : |I|_p = p^-m} = (p - 1) p^(l - m - 1) for m in [0, l).
std::uint64_t sphere_count(const GroupSpec& spec, std::uint32_t m);

// p^e as a double, exact for the exponents used here.
double ipow(double base, int e) noexcept;

}  // namespace ultrawalks
