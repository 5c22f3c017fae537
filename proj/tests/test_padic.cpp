#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "ultrawalks/errors.hpp"
#include "ultrawalks/padic.hpp"

using namespace ultrawalks;

TEST_SUITE("padic") {

TEST_CASE("group spec rejects bad parameters") {
    CHECK_THROWS_AS(GroupSpec(4, 2), DomainError);
    CHECK_THROWS_AS(GroupSpec(1, 2), DomainError);
    CHECK_THROWS_AS(GroupSpec(2, 0), DomainError);
    CHECK_THROWS_AS(GroupSpec(2, 21), DomainError);
    CHECK_NOTHROW(GroupSpec(2, 20));
    CHECK_THROWS_AS(GroupSpec(3, 13), DomainError);  // 3^13 > 2^20
    const GroupSpec s(3, 4);
    CHECK(s.size() == 81);
    CHECK(s.cell_measure() == doctest::Approx(1.0 / 81).epsilon(1e-15));
}

TEST_CASE("primality by trial division") {
    const std::vector<std::uint64_t> primes{2, 3, 5, 7, 11, 13, 1021};
    for (auto q : primes) CHECK(is_prime(q));
    const std::vector<std::uint64_t> composites{0, 1, 4, 9, 15, 1023};
    for (auto q : composites) CHECK_FALSE(is_prime(q));
}

TEST_CASE("norm of difference: worked cases") {
    {
        const GroupSpec s(2, 3);
        const auto v = norm_of_difference(s, {3}, {1});
        CHECK(v.v == 1);
        CHECK(v.norm(2) == 0.5);
        CHECK(norm_of_difference(s, {5}, {5}).is_zero_class());
        CHECK(norm_of_difference(s, {5}, {5}).norm(2) == 0.0);
    }
    {
        const GroupSpec s(3, 2);
        const auto v = norm_of_difference(s, {4}, {1});
        CHECK(v.v == 1);
        CHECK(v.norm(3) == doctest::Approx(1.0 / 3));
    }
    CHECK_THROWS_AS(norm_of_difference(GroupSpec(2, 3), {8}, {0}), DomainError);
}

TEST_CASE("enumeration") {
    auto values = [](const GroupSpec& s) {
        std::vector<std::uint32_t> out;
        for (auto st : enumerate_states(s)) out.push_back(st.value);
        return out;
    };
    CHECK(values(GroupSpec(2, 1)) == std::vector<std::uint32_t>{0, 1});
    CHECK(values(GroupSpec(2, 2)) == std::vector<std::uint32_t>{0, 1, 2, 3});
    CHECK(values(GroupSpec(3, 1)) == std::vector<std::uint32_t>{0, 1, 2});
}

TEST_CASE("digit round trip and rejection") {
    const GroupSpec s(5, 3);
    for (auto st : enumerate_states(s)) {
        const auto d = encode_digits(s, st);
        REQUIRE(d.size() == 3);
        CHECK(st.value == d[0] + 5 * d[1] + 25 * d[2]);
        CHECK(decode_digits(s, d) == st);
    }
    CHECK_THROWS_AS(decode_digits(s, {0, 5, 0}), DomainError);
    CHECK_THROWS_AS(decode_digits(s, {0, 1}), DomainError);
    CHECK_THROWS_AS(encode_digits(s, {125}), DomainError);
}

TEST_CASE("property: valuation agrees with digit scan, ultrametric, symmetric, translation invariant") {
    auto gen = oracle::rng(20240611);
    const std::vector<std::pair<std::uint32_t, std::uint32_t>> specs{{2, 6}, {3, 4}, {5, 3}, {7, 2}};
    for (auto [p, l] : specs) {
        const GroupSpec s(p, l);
        std::uniform_int_distribution<std::uint32_t> pick(0, s.size() - 1);
        for (int trial = 0; trial < 400; ++trial) {
            const StateIndex a{pick(gen)}, b{pick(gen)}, c{pick(gen)};
            const auto ab = norm_of_difference(s, a, b);
            CHECK(ab.v == oracle::valuation(p, l, a.value, b.value));
            CHECK(ab == norm_of_difference(s, b, a));
            CHECK(valuation_of(s, (a.value + s.size() - b.value) % s.size()) == ab.v);
            const double nac = norm_of_difference(s, a, c).norm(p);
            const double ncb = norm_of_difference(s, c, b).norm(p);
            CHECK(ab.norm(p) <= std::max(nac, ncb));
            const StateIndex a2{(a.value + c.value) % s.size()}, b2{(b.value + c.value) % s.size()};
            CHECK(norm_of_difference(s, a2, b2) == ab);
        }
    }
}

TEST_CASE("sphere counts partition the nonzero states") {
    for (auto [p, l] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 5}, {3, 3}, {5, 2}}) {
        const GroupSpec s(p, l);
        std::uint64_t total = 0;
        for (std::uint32_t m = 0; m < l; ++m) {
            std::uint64_t brute = 0;
            for (std::uint32_t d = 1; d < s.size(); ++d) brute += oracle::valuation(p, l, d, 0) == m;
            CHECK(sphere_count(s, m) == brute);
            total += brute;
        }
        CHECK(total == s.size() - 1);
    }
}

}
