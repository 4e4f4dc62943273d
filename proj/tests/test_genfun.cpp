#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "hyperbounds/genfun.hpp"

using namespace hyperbounds;

namespace {

MultiIndex idx(std::vector<std::uint32_t> v) { return MultiIndex(std::move(v)); }

// brute-force F coefficients from 1 + (y -+ xy) sum_h y^h (2 -+ x)^h
BigInt F_brute(long long k, long long ell, bool hat) {
    if (ell == 0) return BigInt(k == 0 ? 1 : 0);
    BigInt total(0);
    for (long long h = 0; h + 1 <= ell; ++h) {
        if (h + 1 != ell) continue;
        for (long long m = 0; m <= h; ++m) {
            BigInt c = binomial(h, m) * ipow(BigInt(2), static_cast<unsigned>(h - m));
            if (!hat && m % 2 != 0) c = -c;
            if (m == k) total += c;
            if (m + 1 == k) total += hat ? c : -c;
        }
    }
    return total;
}

}  // namespace

TEST_CASE("staircase enumeration") {
    CHECK(staircase_size(2) == 3);
    CHECK(staircase_size(3) == 22);
    CHECK(staircase_size(4) == 285);
    CHECK(staircase_size(5) == 5481);
    CHECK(staircase_contains(3, idx({3, 6})));
    CHECK_FALSE(staircase_contains(3, idx({0, 4})));
    // every enumerated index is inside, in strictly increasing lex order
    MultiIndex prev = MultiIndex::zeros(2);
    bool first = true, ordered = true, inside = true;
    for_each_staircase(3, [&](const MultiIndex& ks) {
        inside = inside && staircase_contains(3, ks);
        if (!first && !(prev < ks)) ordered = false;
        prev = ks;
        first = false;
    });
    CHECK(inside);
    CHECK(ordered);
}

TEST_CASE("E series") {
    UniSeries<BigInt> e = E_series(3);
    CHECK(e.coeffs() == std::vector<BigInt>{1, 1, 2, 4});
    // defining identity (1-2x) E = 1-x
    auto denom = UniSeries<BigInt>::polynomial({{0, BigInt(1)}, {1, BigInt(-2)}}, 8);
    auto expected = UniSeries<BigInt>::polynomial({{0, BigInt(1)}, {1, BigInt(-1)}}, 8);
    CHECK(uni_mul(denom, E_series(8), 8) == expected);
    // geometric construction 1 + x sum (2x)^j
    auto geo = uni_geometric_inverse(UniSeries<BigInt>::polynomial({{1, BigInt(2)}}, 8), 8);
    auto xgeo = uni_mul(UniSeries<BigInt>::polynomial({{1, BigInt(1)}}, 8), geo, 8);
    auto rebuilt = uni_add(UniSeries<BigInt>::polynomial({{0, BigInt(1)}}, 8), xgeo, 8);
    CHECK(rebuilt == E_series(8));
}

TEST_CASE("F coefficients against the double-sum oracle") {
    CHECK(F_coeff(0, 1) == 1);
    CHECK(F_coeff(1, 1) == -1);
    CHECK(F_coeff(1, 2) == -3);
    CHECK(F_coeff(1, 3) == -8);
    CHECK(F_coeff(5, 3) == 0);  // k > ell
    CHECK(F_coeff(2, 10) != 0);
    for (long long ell = 0; ell <= 10; ++ell) {
        for (long long k = 0; k <= 10; ++k) {
            CHECK(F_coeff(k, ell) == F_brute(k, ell, false));
            CHECK(F_hat_coeff(k, ell) == F_brute(k, ell, true));
            CHECK(F_hat_coeff(k, ell) == abs(F_coeff(k, ell)));
        }
    }
}

TEST_CASE("build_C for n = 2 is the E series") {
    TruncationBox box({6});
    MultiSeries c = build_C(2, box);
    for (std::uint32_t k = 0; k <= 6; ++k) CHECK(c.coefficient(idx({k})) == E_coeff(k));
    CHECK(build_C_alternative(2, box).same_coefficients(c));
    CHECK(build_C_hat(2, box).same_coefficients(c));  // no F factors at n = 2
}

TEST_CASE("build_C n = 3 frozen table") {
    // frozen from the independent raw-factor expansion oracle
    TruncationBox box({3, 6});
    MultiSeries c = build_C(3, box);
    const std::map<std::pair<int, int>, long> expected{
        {{0, 0}, 1},  {{0, 1}, 1},  {{0, 2}, 2},  {{0, 3}, 4},   {{0, 4}, 8},
        {{0, 5}, 16}, {{0, 6}, 32}, {{1, 0}, 1},  {{1, 1}, 1},   {{1, 2}, 0},
        {{1, 3}, -2}, {{1, 4}, -8}, {{1, 5}, -24}, {{1, 6}, -64}, {{2, 0}, 2},
        {{2, 1}, 2},  {{2, 2}, 4},  {{2, 3}, 6},   {{2, 4}, 14},  {{2, 5}, 36},
        {{2, 6}, 96}, {{3, 0}, 4},  {{3, 1}, 4},   {{3, 2}, 6},   {{3, 3}, 10},
        {{3, 4}, 10}, {{3, 5}, 6},  {{3, 6}, -24}};
    for (const auto& [key, value] : expected) {
        CHECK(c.coefficient(idx({static_cast<std::uint32_t>(key.first),
                                 static_cast<std::uint32_t>(key.second)})) == value);
    }
    CHECK(c.term_count() == 27);  // (1,2) is a true zero
}

TEST_CASE("constant term of C is 1") {
    for (int n = 2; n <= 5; ++n) {
        TruncationBox box = staircase_rectangle(n);
        for (auto& cap : box.caps) cap = std::min<std::uint32_t>(cap, 4);
        box.total_cap = 4;
        CHECK(build_C(n, box).coefficient(MultiIndex::zeros(n - 1)) == 1);
        CHECK(build_C_hat(n, box).coefficient(MultiIndex::zeros(n - 1)) == 1);
    }
}

TEST_CASE("grouping equivalence build_C == build_C_alternative") {
    for (int n : {3, 4}) {
        TruncationBox box = staircase_rectangle(n);
        for (auto& cap : box.caps) cap = std::min<std::uint32_t>(cap, 8);
        box.total_cap = 8;
        CHECK(build_C(n, box).same_coefficients(build_C_alternative(n, box)));
    }
    {
        TruncationBox box({5, 5, 5, 5}, 5);
        CHECK(build_C(5, box).same_coefficients(build_C_alternative(5, box)));
    }
}

TEST_CASE("majorant domination |C_k| <= Chat_k") {
    for (int n : {3, 4, 5}) {
        TruncationBox box = staircase_rectangle(n);
        for (auto& cap : box.caps) cap = std::min<std::uint32_t>(cap, 8);
        box.total_cap = 8;
        MultiSeries c = build_C(n, box);
        MultiSeries chat = build_C_hat(n, box);
        for (const auto& t : c.terms()) {
            MultiIndex k = packing::unpack(t.key, n - 1);
            CHECK(abs(t.coeff) <= chat.coefficient(k));
            CHECK(chat.coefficient(k) >= 0);
        }
    }
}

TEST_CASE("build_A basics") {
    APolynomial a = build_A(2, 9);
    REQUIRE(a.entries.size() == 3);
    CHECK(a.entries[0].second == 1);
    CHECK(a.entries[1].second == BigRat(2, 3) / 9);
    CHECK(a.entries[2].second == BigRat(1, 6) / 81);
    // all entries in (0, 1], equality only at the zero index
    for (int n = 2; n <= 4; ++n) {
        APolynomial t = build_A(n, 9);
        CHECK(t.entries.size() == staircase_size(n));
        for (const auto& [ks, value] : t.entries) {
            CHECK(value > 0);
            if (ks.total_degree() == 0) {
                CHECK(value == 1);
            } else {
                CHECK(value < 1);
            }
        }
    }
}

TEST_CASE("index-algebra oracle: build_A == build_A_from_i_indices") {
    for (int n = 2; n <= 5; ++n) {
        APolynomial direct = build_A(n, 9);
        APolynomial mapped = build_A_from_i_indices(n, 9);
        REQUIRE(direct.entries.size() == mapped.entries.size());
        CHECK(direct == mapped);
        // the i-map is onto the staircase
        for (const auto& [ks, value] : mapped.entries) CHECK(staircase_contains(n, ks));
    }
}

TEST_CASE("diagonal formulas, frozen values") {
    // frozen from the independent univariate oracle
    CHECK(diagonal_C_formula(3, 8).coeffs() ==
          std::vector<BigInt>{1, 2, 5, 10, 22, 44, 92, 184, 376});
    CHECK(diagonal_C_hat_formula(3, 8).coeffs() ==
          std::vector<BigInt>{1, 2, 7, 18, 50, 128, 332, 836, 2104});
    CHECK(diagonal_C_formula(4, 8).coeffs() ==
          std::vector<BigInt>{1, 3, 9, 21, 50, 106, 232, 476, 998});
    CHECK(diagonal_C_hat_formula(4, 10).coeffs() ==
          std::vector<BigInt>{1, 3, 13, 43, 140, 428, 1276, 3686, 10452, 29098, 79902});
    CHECK(P_series(4, 4).coeffs() == std::vector<BigInt>{1, 2, 4, 5, 8});
    CHECK(P_series(5, 5).coeffs() == std::vector<BigInt>{1, 3, 8, 15, 28, 41});
    CHECK(P_series(9, 3).coeffs() == std::vector<BigInt>{1, 7, 34, 125});
    for (int n = 2; n <= 9; ++n) CHECK(P_series(n, 4)[0] == 1);
}

TEST_CASE("diagonal of multivariate C matches the closed formula") {
    for (int n : {2, 3, 4}) {
        // per-variable caps must cover the whole total cap: one variable can
        // carry all of it
        TruncationBox box(std::vector<std::uint32_t>(n - 1, 8), 8);
        CHECK(diagonal(build_C(n, box)) == diagonal_C_formula(n, 8));
        CHECK(diagonal(build_C_hat(n, box)) == diagonal_C_hat_formula(n, 8));
    }
}

TEST_CASE("reduced product identity C_h = P_h + sum 2^{i-1} P_{h-i}") {
    for (int n : {4, 6, 9}) {
        unsigned order = 8;
        auto p = P_series(n, order);
        auto reduced = uni_mul(E_series(order), p, order);
        for (unsigned h = 0; h <= order; ++h) {
            BigInt expected = p[h];
            for (unsigned i = 1; i <= h; ++i) {
                expected += ipow(BigInt(2), i - 1) * p[h - i];
            }
            CHECK(reduced[h] == expected);
        }
    }
}

TEST_CASE("pointwise evaluation") {
    set_real_precision_bits(128);
    // n = 2, w = 1/4: single E factor (3/4)/(1/2) = 3/2
    Real v = eval_C_w({Real(1) / 4});
    CHECK(abs(v - Real(3) / 2) < 1e-30);
    // w = 0 gives 1
    CHECK(eval_C_w({Real(0), Real(0), Real(0)}) == 1);
    // coordinate change: w_i = t_{i-1}/t_i
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> small(-0.2, 0.2);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 2 + trial % 5;  // 2..6
        std::vector<Real> t(n);
        t[n - 1] = 1;
        for (int i = n - 2; i >= 0; --i) {
            double w = small(rng);
            if (std::abs(w) < 1e-3) w = 0.1;
            t[i] = t[i + 1] * w;
        }
        Real via_t = eval_C_t(t);
        Real via_w = eval_C_w(w_from_t(t));
        CHECK(abs(via_t - via_w) < 1e-12);
    }
    // pole refusal
    CHECK_THROWS_AS(eval_C_w({Real(1) / 2}), PoleError);
}

TEST_CASE("partial sums of build_C approach eval_C_w as the box grows") {
    set_real_precision_bits(128);
    std::vector<Real> w{Real(1) / 10, Real(1) / 8};
    Real target = eval_C_w(w);
    Real prev_err(-1);
    for (std::uint32_t cap : {2u, 5u, 9u, 14u, 20u}) {
        TruncationBox box({cap, cap}, cap);
        MultiSeries c = build_C(3, box);
        Real sum(0);
        for (const auto& t : c.terms()) {
            MultiIndex k = packing::unpack(t.key, 2);
            sum += to_real(t.coeff) * pow(w[0], static_cast<int>(k[0])) *
                   pow(w[1], static_cast<int>(k[1]));
        }
        Real err = abs(sum - target);
        if (prev_err >= 0) CHECK(err < prev_err);
        prev_err = err;
    }
    CHECK(prev_err < 1e-9);
}

TEST_CASE("grouping evaluations agree") {
    set_real_precision_bits(128);
    for (int n : {3, 5, 8}) {
        for (bool hat : {false, true}) {
            BigRat x(1, 7);
            BigRat a = eval_diag_grouping8<BigRat>(n, x, hat);
            BigRat b = eval_diag_grouping9<BigRat>(n, x, hat);
            CHECK(a == b);
        }
    }
    // and against the truncated diagonal series at a small point
    int n = 4;
    BigRat x(1, 50);
    UniSeries<BigInt> d = diagonal_C_formula(n, 40);
    BigRat sum(0), xp(1);
    for (unsigned h = 0; h <= 40; ++h) {
        sum += BigRat(d[h]) * xp;
        xp *= x;
    }
    BigRat exact = eval_diag_grouping8<BigRat>(n, x, false);
    CHECK(abs(to_real(sum - exact)) < 1e-40);
}
