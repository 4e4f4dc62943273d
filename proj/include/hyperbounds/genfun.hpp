#pragma once

#include <functional>
#include <vector>

#include "hyperbounds/series.hpp"

namespace hyperbounds {

// --- staircase domain: 0 <= k_2 <= n, 0 <= k_j <= n + k_{j-1} (j = 3..n) ---

void for_each_staircase(int n, const std::function<void(const MultiIndex&)>& fn);
std::size_t staircase_size(int n);
bool staircase_contains(int n, const MultiIndex& ks);

// Rectangular superset used as the C truncation box: k_j <= (j-1) n.
TruncationBox staircase_rectangle(int n);

// The inverse change of indices: i_n = n - k_2, i_{n-1} = n + k_2 - k_3, ...,
// i_2 = n + k_{n-1} - k_n, i_1 = n + k_n (returned as i_1..i_n). All entries
// are nonnegative exactly when ks lies in the staircase.
std::vector<long long> staircase_i_indices(int n, const MultiIndex& ks);

// --- univariate building blocks ---

// E(x) = (1-x)/(1-2x): E_0 = 1, E_k = 2^{k-1}.
UniSeries<BigInt> E_series(unsigned order);
BigInt E_coeff(unsigned k);

// Coefficients of F(x,y) = (1-y)/(1-2y+xy) and of the majorant
// Fhat(x,y) = (1-y)/(1-2y-xy): for ell >= 1 and 0 <= k <= ell,
//   Fhat_{k,ell} = 2^{ell-1-k} C(ell-1,k) + 2^{ell-k} C(ell-1,k-1),
//   F_{k,ell} = (-1)^k Fhat_{k,ell},
// zero outside that range, and F_{k,0} = [k == 0].
BigInt F_coeff(long long k, long long ell);
BigInt F_hat_coeff(long long k, long long ell);

// --- the multivariate C and its majorant ---

// prod_{2<=i<=n} E(w_2..w_i) * prod_{2<=i<j<=n} F(w_i, w_{i+1}..w_j), truncated.
MultiSeries build_C(int n, const TruncationBox& box);
MultiSeries build_C_hat(int n, const TruncationBox& box);

// Same function assembled from the raw two-block factor display
// (E-type (1-u)/(1-2u) for all 2<=i<=j<=n and (1-2y)/(1-2y+xy) for
// 3<=i<=j<=n), expanded with generic series division. Must agree with
// build_C coefficient for coefficient.
MultiSeries build_C_alternative(int n, const TruncationBox& box);

// --- the weight-side table A over the staircase ---

struct APolynomial {
    int n = 0;
    long long r = 0;
    // sorted lexicographically by index
    std::vector<std::pair<MultiIndex, BigRat>> entries;

    bool operator==(const APolynomial&) const = default;
};

// entries M^n_k / r^{sum k} over the staircase; value 1 at the zero index.
APolynomial build_A(int n, long long r);

// Same table enumerated through the i-side indices (i_1,...,i_n) >= 0,
// sum = n^2, with the prefix-sum ceilings, mapped by k_2 = n - i_n,
// k_3 = 2n - i_{n-1} - i_n, ... Must equal build_A exactly.
APolynomial build_A_from_i_indices(int n, long long r);

// --- diagonal series ---

// C^{n-1}(x) = prod_{i=1}^{n-1} (1-x^i)/(1-2x^i)
//            * prod_{i=2}^{n-1} ((1-x^{i-1})/(1-2x^{i-1}+x^i))^{n-i}
UniSeries<BigInt> diagonal_C_formula(int n, unsigned order);
// same with the sign flipped: (1-2x^{i-1}-x^i)
UniSeries<BigInt> diagonal_C_hat_formula(int n, unsigned order);
// P^{n-1}(x) = (1/(1-x))^{n-2} prod_{k=2}^{n-2} ((1-x^k)/(1-2x^k+x^{k+1}))^{n-k-1}
UniSeries<BigInt> P_series(int n, unsigned order);

// --- pointwise evaluation of the rational products ---

// Evaluation refuses points too close to a pole instead of returning an
// inflated value.
inline constexpr double kPoleGuard = 1e-14;

class PoleError : public std::domain_error {
public:
    explicit PoleError(const std::string& what) : std::domain_error(what) {}
};

// C as a function of (w_2,...,w_n); n = w.size() + 1.
Real eval_C_w(const std::vector<Real>& w);
// C as a function of (t_1,...,t_n); n = t.size(). For w_i = t_{i-1}/t_i the
// two evaluations agree.
Real eval_C_t(const std::vector<Real>& t);
std::vector<Real> w_from_t(const std::vector<Real>& t);

namespace detail {

template <class V>
bool near_zero(const V& den) {
    if constexpr (std::is_same_v<V, BigRat>) {
        return den == 0;
    } else {
        return abs(den) < kPoleGuard;
    }
}

template <class V>
V checked_div(const V& num, const V& den, const char* what) {
    if (near_zero(den)) throw PoleError(what);
    return num / den;
}

template <class V>
V vpow(const V& x, unsigned e) {
    V acc(1), b = x;
    while (e) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

}  // namespace detail

// Diagonal products evaluated at a point, in the two groupings that the
// artifact cross-checks against each other.
//
// grouping 8:  prod_{i=1}^{n-1} (1-x^i)/(1-2x^i)
//              prod_{i=2}^{n-1} ((1-x^{i-1})/(1-2x^{i-1} -+ x^i))^{n-i}
template <class V>
V eval_diag_grouping8(int n, const V& x, bool hat) {
    V acc(1);
    for (int i = 1; i <= n - 1; ++i) {
        V xi = detail::vpow(x, i);
        acc *= detail::checked_div(V(1 - xi), V(1 - 2 * xi), "diagonal pole: 1-2x^i");
    }
    for (int i = 2; i <= n - 1; ++i) {
        V a = detail::vpow(x, i - 1), b = detail::vpow(x, i);
        V den = hat ? V(1 - 2 * a - b) : V(1 - 2 * a + b);
        acc *= detail::vpow(detail::checked_div(V(1 - a), den, "diagonal pole: 1-2x^{i-1}-+x^i"),
                            static_cast<unsigned>(n - i));
    }
    return acc;
}

// grouping 9:  prod_{k=1}^{n-1} 1/(1-2x^k) (1-x^k)^{n-k} / (1-2x^k -+ x^{k+1})^{n-k-1}
template <class V>
V eval_diag_grouping9(int n, const V& x, bool hat) {
    V acc(1);
    for (int k = 1; k <= n - 1; ++k) {
        V xk = detail::vpow(x, k), xk1 = detail::vpow(x, k + 1);
        acc *= detail::checked_div(V(1), V(1 - 2 * xk), "diagonal pole: 1-2x^k");
        acc *= detail::vpow(V(1 - xk), static_cast<unsigned>(n - k));
        V den = hat ? V(1 - 2 * xk - xk1) : V(1 - 2 * xk + xk1);
        // guard the base factor; its power may be legitimately tiny
        V inv = detail::checked_div(V(1), den, "diagonal pole: 1-2x^k-+x^{k+1}");
        acc *= detail::vpow(inv, static_cast<unsigned>(n - k - 1));
    }
    return acc;
}

}  // namespace hyperbounds
