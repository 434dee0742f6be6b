#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>

#include "qzeta/error.hpp"
#include "qzeta/expander.hpp"

using namespace qzeta;

namespace {

// Coefficients a_1 .. a_13 of the modified values, as tabulated in the literature.
const std::map<Index, std::vector<long>>& coefficient_table() {
    static const std::map<Index, std::vector<long>> table = {
        {Index{2}, {1, 3, 4, 7, 6, 12, 8, 15, 13, 18, 12, 28, 14}},
        {Index{3}, {0, 1, 3, 7, 10, 19, 21, 35, 39, 56, 55, 91, 78}},
        {Index{4}, {0, 0, 1, 4, 10, 21, 35, 60, 85, 130, 165, 245, 286}},
        {Index{3, 1}, {0, 0, 0, 1, 1, 6, 5, 15, 18, 31, 30, 70, 55}},
        {Index{5}, {0, 0, 0, 1, 5, 15, 35, 71, 126, 215, 330, 511, 715}},
        {Index{4, 1}, {0, 0, 0, 0, 0, 1, 1, 5, 7, 16, 17, 47, 42}},
        {Index{3, 2}, {0, 0, 0, 0, 1, 2, 7, 13, 24, 42, 69, 97, 149}},
        {Index{6}, {0, 0, 0, 0, 1, 6, 21, 56, 126, 253, 462, 798, 1287}},
        {Index{5, 1}, {0, 0, 0, 0, 0, 0, 0, 1, 1, 6, 6, 23, 22}},
        {Index{4, 2}, {0, 0, 0, 0, 0, 0, 1, 2, 7, 13, 30, 45, 88}},
        {Index{3, 3}, {0, 0, 0, 0, 0, 1, 3, 10, 22, 47, 85, 154, 244}},
        {Index{4, 1, 1}, {0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 2, 9, 9}},
        {Index{3, 2, 1}, {0, 0, 0, 0, 0, 0, 0, 1, 1, 4, 9, 14, 23}},
    };
    return table;
}

long divisor_sum(long n) {
    long s = 0;
    for (long d = 1; d <= n; ++d) {
        if (n % d == 0) {
            s += d;
        }
    }
    return s;
}

std::size_t minimal_order(const Index& k) {
    std::size_t order = 0;
    const std::size_t r = k.parts().size();
    for (std::size_t i = 0; i < r; ++i) {
        order += (r - i) * static_cast<std::size_t>(k[i] - 1);
    }
    return order;
}

}  // namespace

TEST_CASE("modified expansions reproduce the coefficient table") {
    for (const auto& [k, row] : coefficient_table()) {
        const QSeries s = expand_modified(k, 13);
        CHECK(s[0] == 0);
        for (std::size_t n = 1; n <= 13; ++n) {
            INFO(k.to_string() << " at q^" << n);
            CHECK(s[n] == row[n - 1]);
        }
    }
}

TEST_CASE("coefficients of (2) are divisor sums") {
    const QSeries s = expand_modified(Index{2}, 200);
    for (long n = 1; n <= 200; ++n) {
        CHECK(s[static_cast<std::size_t>(n)] == divisor_sum(n));
    }
}

TEST_CASE("dynamic programming agrees with brute-force enumeration up to weight 6") {
    for (int w = 2; w <= 6; ++w) {
        for (const Index& k : enumerate_admissible(w)) {
            INFO(k.to_string());
            CHECK(expand_modified_uncached(k, 20) == expand_bruteforce(k, 20));
        }
    }
    CHECK(expand_bruteforce(Index{2}, 3) == QSeries({0, 1, 3, 4}, 3));
    const QSeries s = expand_bruteforce(Index{2, 1, 1}, 10);
    CHECK(s.order() == std::optional<std::size_t>(3));
}

TEST_CASE("modified expansions are integral, non-negative, and start at the minimal chain") {
    for (int w = 2; w <= 7; ++w) {
        for (const Index& k : enumerate_admissible(w)) {
            const QSeries s = expand_modified(k, 40);
            CHECK(s.is_integral());
            for (std::size_t n = 0; n <= 40; ++n) {
                CHECK(sgn(s[n]) >= 0);
                if (n + 1 < static_cast<std::size_t>(w)) {
                    CHECK(sgn(s[n]) == 0);
                }
            }
            const std::size_t lead = minimal_order(k);
            CHECK(lead + 1 >= static_cast<std::size_t>(w));
            if (lead <= 40) {
                CHECK(s.order() == std::optional<std::size_t>(lead));
                CHECK(s[lead] >= 1);
            }
        }
    }
}

TEST_CASE("raw expansion") {
    const QSeries raw = expand_raw(Index{2}, 6);
    const QSeries expected = QSeries({1, -2, 1}, 6) * expand_modified(Index{2}, 6);
    CHECK(raw == expected);
    for (const Index& k : enumerate_admissible(5)) {
        CHECK(expand_raw(k, 10)[0] == 0);
    }
    CHECK(expand(Index{3, 1}, 13, Kind::Modified).series == expand_modified(Index{3, 1}, 13));
    CHECK_THROWS_AS(expand_raw(Index{1, 2}, 5), Error);
}

TEST_CASE("not admissible") {
    try {
        expand_modified(Index{1, 2}, 5);
        FAIL("expected NotAdmissible");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotAdmissible);
    }
}

TEST_CASE("cache slices higher truncations") {
    ExpansionCache cache;
    cache.insert(Index{3, 1}, Kind::Modified, expand_modified_uncached(Index{3, 1}, 30));
    const auto hit = cache.lookup(Index{3, 1}, Kind::Modified, 13);
    REQUIRE(hit.has_value());
    CHECK(*hit == expand_modified_uncached(Index{3, 1}, 13));
    CHECK_FALSE(cache.lookup(Index{3, 1}, Kind::Modified, 31).has_value());
    CHECK_FALSE(cache.lookup(Index{3, 1}, Kind::Raw, 5).has_value());
    cache.insert(Index{3, 1}, Kind::Modified, expand_modified_uncached(Index{3, 1}, 10));
    CHECK(cache.lookup(Index{3, 1}, Kind::Modified, 30).has_value());
}

TEST_CASE("T and S satisfy the identities used in the cyclic-sum proof") {
    const std::size_t N = 30;
    for (const Index& k : {Index{2}, Index{3, 1}, Index{1, 2}, Index{2, 2}, Index{1, 1, 3}}) {
        INFO(k.to_string());
        // S(k_1..k_r, 0) = T(k) - zeta(k_1+1, k_2, ..., k_r)
        std::vector<int> bumped = k.parts();
        ++bumped[0];
        CHECK(expand_S(k, 0, N) == expand_T(k, N) - expand_modified(Index(bumped), N));
    }
    // S(1, k_2..k_r, k_{r+1}) = T(k_2..k_r, k_{r+1}+1)
    CHECK(expand_S(Index{1, 2}, 1, N) == expand_T(Index{2, 2}, N));
    CHECK(expand_S(Index{1, 1}, 2, N) == expand_T(Index{1, 3}, N));
    CHECK(expand_S(Index{1, 3}, 0, N) == expand_T(Index{3, 1}, N));
    CHECK(expand_S(Index{1}, 1, N) == expand_T(Index{2}, N));
}

TEST_CASE("T and S preconditions") {
    CHECK_THROWS_AS(expand_T(Index{1, 1}, 10), Error);
    CHECK_THROWS_AS(expand_S(Index{1, 1}, 0, 10), Error);
    CHECK_NOTHROW(expand_S(Index{1, 1}, 1, 10));
}

TEST_CASE("raising the truncation leaves retained coefficients unchanged") {
    std::mt19937 rng(1234);
    std::vector<Index> pool;
    for (int w = 2; w <= 8; ++w) {
        for (const Index& k : enumerate_admissible(w)) {
            pool.push_back(k);
        }
    }
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(50);
    for (const Index& k : pool) {
        const std::size_t N = 15 + rng() % 20;
        CHECK(expand_modified_uncached(k, N) == expand_modified_uncached(k, N + 10).truncated(N));
    }
    for (const Index& k : {Index{2}, Index{1, 2}, Index{2, 1, 1}, Index{1, 3}}) {
        CHECK(expand_T(k, 20) == expand_T(k, 30).truncated(20));
        CHECK(expand_S(k, 0, 20) == expand_S(k, 0, 30).truncated(20));
        CHECK(expand_S(k, 2, 20) == expand_S(k, 2, 30).truncated(20));
    }
}
