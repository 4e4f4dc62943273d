#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "hyperbounds/conjecture.hpp"

namespace hyperbounds {

// --- section 3 pipeline ---

// mu(a) = 1 a_1 + ... + n a_n with a_i = r^{n-i}, in closed form
// (r^{n+1} - (n+1) r + n)/(r-1)^2.
BigRat mu_weight(int n, long long r);
// closed form == direct sum, and mu <= r^{n+1}/(r-1)^2
bool mu_weight_consistent(int n, long long r);

// elementary symmetric polynomial sigma_p of positive rationals
BigRat sigma_p(const std::vector<BigRat>& values, int p);

// Mac Laurin chain s_1 >= s_2^{1/2} >= ... with s_p = sigma_p / C(n,p),
// compared in log space.
bool mac_laurin_check(const std::vector<BigRat>& values);
// the unnormalized chain sigma_p^{1/p} decreasing
bool sigma_root_chain_check(const std::vector<BigRat>& values);
// C(n,p)^{p+1} >= C(n,p+1)^p for 1 <= p <= n-1, exact
bool binomial_root_step_check(int n);

// unique positive zero of z^n - z^{n-1} - ... - z - 1, by bisection on [1,2]
double kappa_n(int n, double tol = 1e-12);

// K_n * max_p (|c_p|/|c_0|)^{1/p} for c_0 z^n + c_1 z^{n-1} + ... + c_n
double fujiwara_bound(const std::vector<double>& coeffs);

// Durand-Kerner; coeffs like fujiwara_bound (degree = coeffs.size()-1)
std::vector<std::complex<double>> poly_roots(const std::vector<double>& coeffs);

struct CHatInverseWeights {
    BigRat value;           // the full product at (1/r^{n-1}, ..., 1/r, 1)
    BigRat first_product;   // prod_{k<=n-1} (r^k-1)/(r^k-2)
    BigRat second_product;  // prod_{ell<=n-1} ((r^ell-r)/(r^ell-2r-1))^{n-ell}
    bool first_le_1p3r = false;       // first <= 1 + 3/r
    bool second_le_alpha_pow = false; // second <= (finite alpha product)^{n-2}
    bool alpha_le_1p3r = false;       // finite alpha product <= exp(2/(r-1)) <= 1+3/r
};
CHatInverseWeights c_hat_inverse_weights(int n, long long r);

// exp(2/(r-1)) <= 1 + 3/r
bool exp_computer_help_check(long long r);
// 4r + 2 <= r^ell - r^{ell-1} for the (r, ell) grid, exact
bool lemma32_grid_check(long long r_lo, long long r_hi, int ell_lo, int ell_hi);
// (2n/(2n-1))^{n+1} <= 2, exact
bool b_factor_constant_check(int n);

struct DegreeBound {
    int n = 0;
    long long r = 0;
    BigRat refined;  // (20n^2+4n) r^3/((r-1)^3 (r+3)) (r+3)^n
    BigInt coarse;   // 25 n^2 (r+3)^n
};
DegreeBound degree_bound(int n, long long r);

struct GateScan {
    long long r = 0;
    int n_min = -1;          // smallest n with the inequality holding through the scan cap
    int scan_cap = 0;
    bool holds_from_10 = false;
    bool holds_from_20 = false;
};
// 2^{5n} >= refined d_GG(n, r), scanned over n
GateScan theorem13_gate(long long r, int scan_cap = 500);
// 4^{5n} >= refined d_GG(2n, r)
GateScan theorem14_gate(long long r, int scan_cap = 250);

// --- theorem 1.1 / 1.2 gates ---

Real gate_factor_GG(int n);  // 25 n^2 exp(-n log 2 + 6 sqrt(n)/log n)
Real gate_factor_K(int n);   // 100 n^2 exp(2n lll(2n) - n ll(n) - n log 2 + 6 sqrt(2n)/ll(2n)... )
Real d_GG_final(int n);      // 25 n^2 (sqrt(n) log(n)/2 + 3)^n
Real d_K_final(int n);       // 100 n^2 (sqrt(2n) loglog(2n)/2 + 3)^{2n}

struct GateSearch {
    int n_min = -1;
    bool window_ok = false;   // factor < 1 throughout [n_min, 2 n_min]
    bool bound_ok = false;    // d(n) <= target^n on the window
    double factor_at_n_min = 0.0;
};
GateSearch find_N_GG(int scan_cap = 500);
GateSearch find_N_K(int scan_cap = 500);

// --- section 8 ---

struct PoleRadii {
    double R = 0.0;      // C side
    double R_hat = 0.0;  // majorant side
};
PoleRadii pole_radii(int n);

// min over a theta grid of |1 - 2 x^{i-1} +- x^i| on |x| = 1/2, i >= 3
double min_modulus_on_half_circle(int i, bool hat, int samples = 4096);

struct CauchyCheck {
    bool ok = false;
    unsigned first_failure_h = 0;
};
// Chat_h rho^h <= Chat(rho), exact rational arithmetic
CauchyCheck cauchy_bound_check(int n, const BigRat& rho, unsigned h_max);
// Chat(1/sqrt n) <= e^{12} e^{sqrt n}
bool cauchy_e12_instantiation(int n);

// --- section 9 ---

struct Section9Report {
    int n = 0;
    long long r = 0;
    Real chat_value;   // Chat(1/r), grouping-9 product
    Real c_value;      // C(1/r)
    bool lemma91_ok = false;  // Chat(1/r) <= e^{n/r + 12 n/r^2}
    bool lemma92_ok = false;  // Chat/C <= e^{17 n/r^2}
    bool ratio_ge_1 = false;  // Chat >= C
    // Lemma 9.3 with a(n) = log log n (needs a(n) > 1, i.e. n >= 16)
    std::optional<bool> lemma93_ok;
    double a_n = 0.0;
};
Section9Report section9_suite(int n, long long r);

// --- section 10 ---

struct Lemma10Report {
    int n = 0;
    long long r = 0;
    double a = 0.0;
    double c = 0.0;
    unsigned tau = 0;
    BigRat cmr_R_abs;        // |CMR_R|, exact
    BigRat majorant_tail;    // sum_{k in box, sum k > tau} Chat_k r^{-sum k}, exact
    bool first_inequality_ok = false;  // |CMR_R| <= majorant_tail
    bool asymptotic_reached = false;   // majorant_tail <= 2 e^{12} / a (informational)
    double final_minorant = 0.0;       // section-10 closing expression
    bool final_minorant_ge_1 = false;  // informational at desk scale
};
Lemma10Report lemma10_tail_check(int n, double a, const CAOptions& opts = {});

}  // namespace hyperbounds
