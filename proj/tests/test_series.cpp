#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "hyperbounds/series.hpp"

using namespace hyperbounds;

namespace {

MultiIndex idx(std::vector<std::uint32_t> v) { return MultiIndex(std::move(v)); }

// independent brute-force product over std::map, used as the multiplication
// oracle on small instances
std::map<MultiIndex, BigInt> map_mul(const std::map<MultiIndex, BigInt>& a,
                                     const std::map<MultiIndex, BigInt>& b,
                                     const TruncationBox& box) {
    std::map<MultiIndex, BigInt> out;
    for (const auto& [ka, ca] : a) {
        for (const auto& [kb, cb] : b) {
            MultiIndex k = ka;
            for (int j = 0; j < k.n_vars(); ++j) k[j] += kb[j];
            if (!box.admits(k)) continue;
            out[k] += ca * cb;
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        it = it->second == 0 ? out.erase(it) : std::next(it);
    }
    return out;
}

std::map<MultiIndex, BigInt> to_map(const MultiSeries& s) {
    std::map<MultiIndex, BigInt> out;
    for (const auto& t : s.terms()) out[packing::unpack(t.key, s.n_vars())] = t.coeff;
    return out;
}

MultiSeries from_map(const TruncationBox& box, const std::map<MultiIndex, BigInt>& m) {
    std::vector<std::pair<MultiIndex, BigInt>> entries(m.begin(), m.end());
    return MultiSeries::from_terms(box, std::move(entries));
}

MultiSeries random_series(std::mt19937& rng, const TruncationBox& box, int max_terms) {
    std::map<MultiIndex, BigInt> m;
    std::uniform_int_distribution<int> coef(-9, 9);
    for (int t = 0; t < max_terms; ++t) {
        MultiIndex k = MultiIndex::zeros(box.n_vars());
        for (int j = 0; j < box.n_vars(); ++j) k[j] = rng() % (box.caps[j] + 1);
        if (!box.admits(k)) continue;
        int c = coef(rng);
        if (c != 0) m[k] = c;
    }
    return from_map(box, m);
}

}  // namespace

TEST_CASE("truncation box admissibility") {
    TruncationBox box({2, 3}, 4);
    CHECK(box.admits(idx({2, 2})));
    CHECK_FALSE(box.admits(idx({3, 0})));
    CHECK_FALSE(box.admits(idx({2, 3})));  // total 5 > 4
    CHECK(box.lattice_size() == 12);
}

TEST_CASE("coefficient access distinguishes zero from truncated") {
    TruncationBox box({3});
    MultiSeries s = MultiSeries::from_terms(box, {{idx({1}), BigInt(5)}});
    CHECK(s.coefficient(idx({1})) == 5);
    CHECK(s.coefficient(idx({2})) == 0);
    CHECK_THROWS_AS(s.coefficient(idx({4})), std::domain_error);
}

TEST_CASE("multiplication truncates") {
    TruncationBox box({1});
    MultiSeries p = MultiSeries::from_terms(box, {{idx({0}), BigInt(1)}, {idx({1}), BigInt(1)}});
    MultiSeries q = ms_mul(p, p, box);
    CHECK(q.coefficient(idx({0})) == 1);
    CHECK(q.coefficient(idx({1})) == 2);  // the w^2 term fell outside the box
    CHECK(q.term_count() == 2);
}

TEST_CASE("multiplicative identity") {
    TruncationBox box({4, 4}, 6);
    std::mt19937 rng(7);
    MultiSeries a = random_series(rng, box, 12);
    MultiSeries one = MultiSeries::constant(box, BigInt(1));
    CHECK(ms_mul(a, one, box).same_coefficients(a));
}

TEST_CASE("ring axioms on random sparse instances") {
    std::mt19937 rng(20240229);
    for (int trial = 0; trial < 40; ++trial) {
        int nv = 1 + static_cast<int>(rng() % 4);
        std::vector<std::uint32_t> caps;
        for (int j = 0; j < nv; ++j) caps.push_back(2 + rng() % 7);
        TruncationBox box(caps, 8);
        MultiSeries a = random_series(rng, box, 10);
        MultiSeries b = random_series(rng, box, 10);
        MultiSeries c = random_series(rng, box, 10);
        CHECK(ms_mul(a, b, box).same_coefficients(ms_mul(b, a, box)));
        CHECK(ms_mul(ms_mul(a, b, box), c, box)
                  .same_coefficients(ms_mul(a, ms_mul(b, c, box), box)));
        CHECK(ms_mul(ms_add(a, b), c, box)
                  .same_coefficients(ms_add(ms_mul(a, c, box), ms_mul(b, c, box))));
        // against the independent map-based convolution
        CHECK(to_map(ms_mul(a, b, box)) == map_mul(to_map(a), to_map(b), box));
    }
}

TEST_CASE("truncation coherence") {
    std::mt19937 rng(99);
    TruncationBox big({6, 6}, 10);
    TruncationBox small({3, 4}, 5);
    for (int trial = 0; trial < 20; ++trial) {
        MultiSeries a = random_series(rng, big, 14);
        MultiSeries b = random_series(rng, big, 14);
        MultiSeries wide = restrict_to(ms_mul(a, b, big), small);
        MultiSeries narrow = ms_mul(restrict_to(a, small), restrict_to(b, small), small);
        CHECK(wide.same_coefficients(narrow));
    }
}

TEST_CASE("geometric inverse") {
    TruncationBox box({3});
    MultiSeries u = MultiSeries::monomial(box, idx({1}), BigInt(2));
    MultiSeries inv = geometric_inverse(u, box);
    CHECK(inv.coefficient(idx({0})) == 1);
    CHECK(inv.coefficient(idx({1})) == 2);
    CHECK(inv.coefficient(idx({2})) == 4);
    CHECK(inv.coefficient(idx({3})) == 8);

    MultiSeries zero(box);
    CHECK(geometric_inverse(zero, box).same_coefficients(MultiSeries::constant(box, BigInt(1))));

    MultiSeries with_const = MultiSeries::constant(box, BigInt(1));
    CHECK_THROWS_AS(geometric_inverse(with_const, box), std::domain_error);

    // defining identity (1 - u) inv = 1, on random u with zero constant term
    std::mt19937 rng(3);
    for (int trial = 0; trial < 25; ++trial) {
        TruncationBox b2({5, 5}, 7);
        MultiSeries v = random_series(rng, b2, 8);
        std::map<MultiIndex, BigInt> m = to_map(v);
        m.erase(MultiIndex::zeros(2));
        MultiSeries u2 = from_map(b2, m);
        MultiSeries inv2 = geometric_inverse(u2, b2);
        MultiSeries one_minus_u =
            ms_add(MultiSeries::constant(b2, BigInt(1)),
                   ms_mul(u2, MultiSeries::constant(b2, BigInt(-1)), b2));
        CHECK(ms_mul(one_minus_u, inv2, b2)
                  .same_coefficients(MultiSeries::constant(b2, BigInt(1))));
    }
}

TEST_CASE("series reconstruction: (1-w)/(1-2w) times (1-2w)") {
    TruncationBox box({10});
    // E series as a quotient, then multiplied back by the denominator
    MultiSeries denom_u = MultiSeries::monomial(box, idx({1}), BigInt(2));
    MultiSeries numer = MultiSeries::from_terms(box, {{idx({0}), BigInt(1)},
                                                      {idx({1}), BigInt(-1)}});
    MultiSeries e = ms_mul(numer, geometric_inverse(denom_u, box), box);
    MultiSeries back = ms_mul(e, MultiSeries::from_terms(box, {{idx({0}), BigInt(1)},
                                                               {idx({1}), BigInt(-2)}}),
                              box);
    CHECK(back.same_coefficients(numer));
}

TEST_CASE("diagonal") {
    TruncationBox box({3, 3}, 4);
    MultiSeries s = MultiSeries::from_terms(
        box, {{idx({0, 0}), BigInt(1)}, {idx({1, 0}), BigInt(1)}, {idx({0, 1}), BigInt(1)}});
    UniSeries<BigInt> d = diagonal(s);
    CHECK(d[0] == 1);
    CHECK(d[1] == 2);
    CHECK(d[2] == 0);

    MultiSeries empty(box);
    UniSeries<BigInt> dz = diagonal(empty);
    for (unsigned h = 0; h <= dz.order(); ++h) CHECK(dz[h] == 0);

    TruncationBox no_total({3, 3});
    CHECK_THROWS_AS(diagonal(MultiSeries::constant(no_total, BigInt(1))),
                    std::invalid_argument);

    // multiplicativity: diagonal(a b) = uni_mul(diagonal a, diagonal b)
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        TruncationBox b2({8, 8, 8}, 8);
        MultiSeries a = random_series(rng, b2, 10);
        MultiSeries b = random_series(rng, b2, 10);
        UniSeries<BigInt> lhs = diagonal(ms_mul(a, b, b2));
        UniSeries<BigInt> rhs = uni_mul(diagonal(a), diagonal(b), 8);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("univariate series ops") {
    auto one_minus_x = UniSeries<BigInt>::polynomial({{0, BigInt(1)}, {1, BigInt(-1)}}, 4);
    auto geo = uni_geometric_inverse(UniSeries<BigInt>::polynomial({{1, BigInt(1)}}, 4), 4);
    for (unsigned h = 0; h <= 4; ++h) CHECK(geo[h] == 1);  // 1/(1-x)
    CHECK(uni_mul(one_minus_x, geo, 4) ==
          UniSeries<BigInt>::polynomial({{0, BigInt(1)}}, 4));

    auto a = UniSeries<BigInt>::polynomial({{0, BigInt(2)}, {2, BigInt(-3)}}, 6);
    auto b = UniSeries<BigInt>::polynomial({{1, BigInt(5)}, {3, BigInt(1)}}, 6);
    auto c = UniSeries<BigInt>::polynomial({{0, BigInt(1)}, {1, BigInt(1)}}, 6);
    CHECK(uni_mul(a, b, 6) == uni_mul(b, a, 6));
    CHECK(uni_mul(uni_mul(a, b, 6), c, 6) == uni_mul(a, uni_mul(b, c, 6), 6));
    CHECK(uni_pow(c, 3, 6) == uni_mul(c, uni_mul(c, c, 6), 6));
}

TEST_CASE("serialization round trip is exact") {
    std::mt19937 rng(1234);
    TruncationBox box({7, 5, 6}, 11);
    MultiSeries s = random_series(rng, box, 25);
    std::stringstream buffer;
    write_series(buffer, s);
    MultiSeries back = read_series(buffer);
    CHECK(back.box() == s.box());
    CHECK(back.same_coefficients(s));
}

TEST_CASE("serialization rejects malformed input") {
    std::stringstream bad("hbseries 2\nvars 1\ncaps 3\ntotal none\nterms 0\n");
    CHECK_THROWS_AS(read_series(bad), std::runtime_error);
    std::stringstream zero("hbseries 1\nvars 1\ncaps 3\ntotal none\nterms 1\n1:0\n");
    CHECK_THROWS_AS(read_series(zero), std::runtime_error);
    std::stringstream outside("hbseries 1\nvars 1\ncaps 3\ntotal none\nterms 1\n4:2\n");
    CHECK_THROWS_AS(read_series(outside), std::runtime_error);
}

TEST_CASE("cap and arity limits raise resource errors") {
    CHECK_THROWS_AS(MultiSeries(TruncationBox({200})), ResourceLimitError);
    CHECK_THROWS_AS(MultiSeries(TruncationBox(std::vector<std::uint32_t>(9, 2))),
                    ResourceLimitError);
}
