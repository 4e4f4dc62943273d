#include "hyperbounds/genfun.hpp"

#include <algorithm>
#include <map>

namespace hyperbounds {

namespace {

void staircase_rec(int n, MultiIndex& ks, int pos,
                   const std::function<void(const MultiIndex&)>& fn) {
    if (pos == n - 1) {
        fn(ks);
        return;
    }
    std::uint32_t hi = static_cast<std::uint32_t>(n) + (pos == 0 ? 0 : ks[pos - 1]);
    for (std::uint32_t k = 0; k <= hi; ++k) {
        ks[pos] = k;
        staircase_rec(n, ks, pos + 1, fn);
    }
    ks[pos] = 0;
}

}  // namespace

void for_each_staircase(int n, const std::function<void(const MultiIndex&)>& fn) {
    if (n < 2) throw std::domain_error("staircase: n >= 2 required");
    MultiIndex ks = MultiIndex::zeros(n - 1);
    staircase_rec(n, ks, 0, fn);
}

std::size_t staircase_size(int n) {
    std::size_t count = 0;
    for_each_staircase(n, [&](const MultiIndex&) { ++count; });
    return count;
}

bool staircase_contains(int n, const MultiIndex& ks) {
    if (ks.n_vars() != n - 1) return false;
    std::uint32_t prev = 0;
    for (int j = 0; j < n - 1; ++j) {
        if (ks[j] > static_cast<std::uint32_t>(n) + prev) return false;
        prev = ks[j];
    }
    return true;
}

TruncationBox staircase_rectangle(int n) {
    std::vector<std::uint32_t> caps(n - 1);
    for (int j = 0; j < n - 1; ++j) caps[j] = static_cast<std::uint32_t>((j + 1) * n);
    return TruncationBox(std::move(caps));
}

BigInt E_coeff(unsigned k) { return k == 0 ? BigInt(1) : ipow(BigInt(2), k - 1); }

UniSeries<BigInt> E_series(unsigned order) {
    UniSeries<BigInt> e(order);
    for (unsigned k = 0; k <= order; ++k) e[k] = E_coeff(k);
    return e;
}

BigInt F_hat_coeff(long long k, long long ell) {
    if (ell == 0) return BigInt(k == 0 ? 1 : 0);
    if (k < 0 || k > ell || ell < 0) return BigInt(0);
    BigInt value(0);
    BigInt b1 = binomial(ell - 1, k);
    if (b1 != 0) value += ipow(BigInt(2), static_cast<unsigned>(ell - 1 - k)) * b1;
    BigInt b2 = binomial(ell - 1, k - 1);
    if (b2 != 0) value += ipow(BigInt(2), static_cast<unsigned>(ell - k)) * b2;
    return value;
}

BigInt F_coeff(long long k, long long ell) {
    BigInt v = F_hat_coeff(k, ell);
    return (k % 2 != 0) ? BigInt(-v) : v;
}

namespace {

// E(w_lo * ... * w_hi): a ray in exponent space. Variables are 1-based paper
// labels (w_2..w_n); position of w_m is m-2.
MultiSeries e_factor(int lo, int hi, const TruncationBox& box) {
    std::vector<std::pair<MultiIndex, BigInt>> entries;
    for (std::uint32_t k = 0;; ++k) {
        MultiIndex idx = MultiIndex::zeros(box.n_vars());
        for (int m = lo; m <= hi; ++m) idx[m - 2] = k;
        if (!box.admits(idx)) break;
        entries.emplace_back(std::move(idx), E_coeff(k));
    }
    return MultiSeries::from_terms(box, std::move(entries));
}

// F(w_i, w_{i+1} ... w_j) (or the majorant): support k e_i + ell (e_{i+1}+..+e_j).
MultiSeries f_factor(int i, int j, bool hat, const TruncationBox& box) {
    std::vector<std::pair<MultiIndex, BigInt>> entries;
    for (std::uint32_t ell = 0;; ++ell) {
        MultiIndex base = MultiIndex::zeros(box.n_vars());
        for (int m = i + 1; m <= j; ++m) base[m - 2] = ell;
        if (!box.admits(base)) break;
        for (std::uint32_t k = 0; k <= ell; ++k) {
            MultiIndex idx = base;
            idx[i - 2] += k;
            if (!box.admits(idx)) break;
            BigInt c = hat ? F_hat_coeff(k, ell) : F_coeff(k, ell);
            if (c != 0) entries.emplace_back(std::move(idx), std::move(c));
        }
    }
    return MultiSeries::from_terms(box, std::move(entries));
}

MultiSeries build_C_impl(int n, const TruncationBox& box, bool hat) {
    if (n < 2) throw std::domain_error("build_C: n >= 2 required");
    if (box.n_vars() != n - 1) throw std::invalid_argument("build_C: box has wrong arity");
    // Multiply factors with high leftmost variable first; this keeps
    // intermediate supports confined to the trailing coordinates for as long
    // as possible.
    MultiSeries acc = MultiSeries::constant(box, BigInt(1));
    for (int i = n; i >= 2; --i) {
        for (int j = i + 1; j <= n; ++j) acc = ms_mul(acc, f_factor(i, j, hat, box), box);
    }
    for (int i = n; i >= 2; --i) acc = ms_mul(acc, e_factor(2, i, box), box);
    return acc;
}

}  // namespace

MultiSeries build_C(int n, const TruncationBox& box) { return build_C_impl(n, box, false); }

MultiSeries build_C_hat(int n, const TruncationBox& box) { return build_C_impl(n, box, true); }

MultiSeries build_C_alternative(int n, const TruncationBox& box) {
    if (n < 2) throw std::domain_error("build_C_alternative: n >= 2 required");
    if (box.n_vars() != n - 1) throw std::invalid_argument("build_C_alternative: bad arity");
    auto product_of = [&](int lo, int hi) {
        MultiIndex idx = MultiIndex::zeros(box.n_vars());
        for (int m = lo; m <= hi; ++m) idx[m - 2] = 1;
        return idx;
    };
    MultiSeries acc = MultiSeries::constant(box, BigInt(1));
    // E-type rows (1-u)/(1-2u) for u = w_i..w_j, all 2 <= i <= j <= n,
    // expanded by generic series division rather than closed coefficients.
    for (int i = n; i >= 2; --i) {
        for (int j = n; j >= i; --j) {
            MultiIndex u = product_of(i, j);
            if (!box.admits(u)) continue;
            MultiSeries inv =
                geometric_inverse(MultiSeries::monomial(box, u, BigInt(2)), box);
            MultiSeries num = MultiSeries::from_terms(
                box, {{MultiIndex::zeros(box.n_vars()), BigInt(1)}, {u, BigInt(-1)}});
            acc = ms_mul(acc, ms_mul(num, inv, box), box);
        }
    }
    // bare second-block rows (1-2y)/(1-2y+xy) for y = w_i..w_j, x = w_{i-1}.
    for (int i = n; i >= 3; --i) {
        for (int j = n; j >= i; --j) {
            MultiIndex y = product_of(i, j);
            if (!box.admits(y)) continue;
            MultiIndex xy = y;
            xy[i - 3] += 1;
            std::vector<std::pair<MultiIndex, BigInt>> u_terms{{y, BigInt(2)}};
            if (box.admits(xy)) u_terms.emplace_back(xy, BigInt(-1));
            MultiSeries inv = geometric_inverse(MultiSeries::from_terms(box, u_terms), box);
            MultiSeries num = MultiSeries::from_terms(
                box, {{MultiIndex::zeros(box.n_vars()), BigInt(1)}, {y, BigInt(-2)}});
            acc = ms_mul(acc, ms_mul(num, inv, box), box);
        }
    }
    return acc;
}

std::vector<long long> staircase_i_indices(int n, const MultiIndex& ks) {
    if (ks.n_vars() != n - 1) throw std::invalid_argument("staircase_i_indices: bad arity");
    std::vector<long long> iis(n);  // iis[0] = i_1, ..., iis[n-1] = i_n
    iis[n - 1] = n - static_cast<long long>(ks[0]);
    for (int j = 1; j < n - 1; ++j) {
        iis[n - 1 - j] = n + static_cast<long long>(ks[j - 1]) - static_cast<long long>(ks[j]);
    }
    iis[0] = n + static_cast<long long>(ks[n - 2]);
    return iis;
}

APolynomial build_A(int n, long long r) {
    if (n < 2 || r < 1) throw std::domain_error("build_A: n >= 2 and r >= 1 required");
    APolynomial a;
    a.n = n;
    a.r = r;
    warm_factorials(static_cast<unsigned>(n) * static_cast<unsigned>(n));
    const BigInt nfact = factorial(static_cast<unsigned>(n));
    for_each_staircase(n, [&](const MultiIndex& ks) {
        BigRat m(1);
        for (long long i : staircase_i_indices(n, ks)) {
            m *= BigRat(nfact, factorial(static_cast<unsigned>(i)));
        }
        m /= rpow(BigRat(r), ks.total_degree());
        a.entries.emplace_back(ks, std::move(m));
    });
    std::sort(a.entries.begin(), a.entries.end(),
              [](const auto& p, const auto& q) { return p.first < q.first; });
    return a;
}

APolynomial build_A_from_i_indices(int n, long long r) {
    if (n < 2 || r < 1) throw std::domain_error("build_A_from_i_indices: bad arguments");
    APolynomial a;
    a.n = n;
    a.r = r;
    warm_factorials(static_cast<unsigned>(n) * static_cast<unsigned>(n));
    const BigInt nfact = factorial(static_cast<unsigned>(n));
    const long long nn = static_cast<long long>(n) * n;

    // choose i_n, i_{n-1}, ..., i_2 subject to the prefix ceilings
    // i_n + ... + i_m <= (n - m + 1) n, then i_1 = n^2 - sum.
    std::vector<long long> iis(n);
    std::map<MultiIndex, BigRat> table;
    std::function<void(int, long long)> rec = [&](int lambda, long long suffix_sum) {
        if (lambda == 1) {
            iis[0] = nn - suffix_sum;
            if (iis[0] < 0) return;
            // change of indices: k_m = (m-1) n - (i_n + ... + i_{n-m+2})
            MultiIndex ks = MultiIndex::zeros(n - 1);
            long long partial = 0;
            for (int m = 2; m <= n; ++m) {
                partial += iis[n - m + 2 - 1];
                long long k = (m - 1) * static_cast<long long>(n) - partial;
                if (k < 0) return;  // unreachable under the ceilings
                ks[m - 2] = static_cast<std::uint32_t>(k);
            }
            BigRat value(1);
            for (long long i : iis) value *= BigRat(nfact, factorial(static_cast<unsigned>(i)));
            value /= rpow(BigRat(r), ks.total_degree());
            auto [it, inserted] = table.emplace(std::move(ks), std::move(value));
            if (!inserted) {
                throw std::logic_error("build_A_from_i_indices: index map is not injective");
            }
            return;
        }
        long long ceiling = static_cast<long long>(n) * (n - lambda + 1);
        for (long long v = 0; suffix_sum + v <= ceiling; ++v) {
            iis[lambda - 1] = v;
            rec(lambda - 1, suffix_sum + v);
        }
    };
    rec(n, 0);
    a.entries.assign(table.begin(), table.end());
    return a;
}

UniSeries<BigInt> diagonal_C_formula(int n, unsigned order) {
    UniSeries<BigInt> acc = UniSeries<BigInt>::polynomial({{0, BigInt(1)}}, order);
    for (int i = 1; i <= n - 1; ++i) {
        auto num = UniSeries<BigInt>::polynomial({{0, BigInt(1)}, {unsigned(i), BigInt(-1)}}, order);
        auto den = UniSeries<BigInt>::polynomial({{0, BigInt(1)}, {unsigned(i), BigInt(-2)}}, order);
        acc = uni_mul(acc, uni_mul(num, uni_reciprocal_unit(den, order), order), order);
    }
    for (int i = 2; i <= n - 1; ++i) {
        auto num = UniSeries<BigInt>::polynomial({{0, BigInt(1)}, {unsigned(i - 1), BigInt(-1)}},
                                                 order);
        auto den = UniSeries<BigInt>::polynomial(
            {{0, BigInt(1)}, {unsigned(i - 1), BigInt(-2)}, {unsigned(i), BigInt(1)}}, order);
        acc = uni_mul(acc,
                      uni_pow(uni_mul(num, uni_reciprocal_unit(den, order), order),
                              static_cast<unsigned>(n - i), order),
                      order);
    }
    return acc;
}

UniSeries<BigInt> diagonal_C_hat_formula(int n, unsigned order) {
    UniSeries<BigInt> acc = UniSeries<BigInt>::polynomial({{0, BigInt(1)}}, order);
    for (int i = 1; i <= n - 1; ++i) {
        auto num = UniSeries<BigInt>::polynomial({{0, BigInt(1)}, {unsigned(i), BigInt(-1)}}, order);
        auto den = UniSeries<BigInt>::polynomial({{0, BigInt(1)}, {unsigned(i), BigInt(-2)}}, order);
        acc = uni_mul(acc, uni_mul(num, uni_reciprocal_unit(den, order), order), order);
    }
    for (int i = 2; i <= n - 1; ++i) {
        auto num = UniSeries<BigInt>::polynomial({{0, BigInt(1)}, {unsigned(i - 1), BigInt(-1)}},
                                                 order);
        auto den = UniSeries<BigInt>::polynomial(
            {{0, BigInt(1)}, {unsigned(i - 1), BigInt(-2)}, {unsigned(i), BigInt(-1)}}, order);
        acc = uni_mul(acc,
                      uni_pow(uni_mul(num, uni_reciprocal_unit(den, order), order),
                              static_cast<unsigned>(n - i), order),
                      order);
    }
    return acc;
}

UniSeries<BigInt> P_series(int n, unsigned order) {
    if (n < 2) throw std::domain_error("P_series: n >= 2 required");
    auto one_minus_x =
        UniSeries<BigInt>::polynomial({{0, BigInt(1)}, {1, BigInt(-1)}}, order);
    UniSeries<BigInt> acc =
        uni_pow(uni_reciprocal_unit(one_minus_x, order), static_cast<unsigned>(n - 2), order);
    for (int k = 2; k <= n - 2; ++k) {
        auto num = UniSeries<BigInt>::polynomial({{0, BigInt(1)}, {unsigned(k), BigInt(-1)}},
                                                 order);
        auto den = UniSeries<BigInt>::polynomial(
            {{0, BigInt(1)}, {unsigned(k), BigInt(-2)}, {unsigned(k + 1), BigInt(1)}}, order);
        acc = uni_mul(acc,
                      uni_pow(uni_mul(num, uni_reciprocal_unit(den, order), order),
                              static_cast<unsigned>(n - k - 1), order),
                      order);
    }
    return acc;
}

Real eval_C_w(const std::vector<Real>& w) {
    const int n = static_cast<int>(w.size()) + 1;
    if (n < 2) throw std::domain_error("eval_C_w: at least one variable required");
    auto wv = [&](int m) { return w[m - 2]; };  // w_m
    Real acc(1);
    for (int i = 2; i <= n; ++i) {
        Real u(1);
        for (int j = i; j <= n; ++j) {
            u *= wv(j);
            acc *= detail::checked_div(Real(1 - u), Real(1 - 2 * u), "eval_C_w: pole of 1-2u");
        }
    }
    for (int i = 3; i <= n; ++i) {
        Real y(1);
        for (int j = i; j <= n; ++j) {
            y *= wv(j);
            Real xy = wv(i - 1) * y;
            acc *= detail::checked_div(Real(1 - 2 * y), Real(1 - 2 * y + xy),
                                       "eval_C_w: pole of 1-2y+xy");
        }
    }
    return acc;
}

Real eval_C_t(const std::vector<Real>& t) {
    const int n = static_cast<int>(t.size());
    if (n < 2) throw std::domain_error("eval_C_t: n >= 2 required");
    auto tv = [&](int m) { return t[m - 1]; };
    Real acc(1);
    for (int i = 1; i < n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            acc *= detail::checked_div(Real(tv(j) - tv(i)), Real(tv(j) - 2 * tv(i)),
                                       "eval_C_t: pole of t_j-2t_i");
        }
    }
    for (int i = 2; i < n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            acc *= detail::checked_div(Real(tv(j) - 2 * tv(i)),
                                       Real(tv(j) - 2 * tv(i) + tv(i - 1)),
                                       "eval_C_t: pole of t_j-2t_i+t_{i-1}");
        }
    }
    return acc;
}

std::vector<Real> w_from_t(const std::vector<Real>& t) {
    std::vector<Real> w;
    for (std::size_t i = 1; i < t.size(); ++i) {
        w.push_back(detail::checked_div(Real(t[i - 1]), Real(t[i]), "w_from_t: t_i = 0"));
    }
    return w;
}

}  // namespace hyperbounds
