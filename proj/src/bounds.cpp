#include "hyperbounds/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "hyperbounds/cache.hpp"

namespace hyperbounds {

BigRat mu_weight(int n, long long r) {
    if (n < 1 || r < 2) throw std::domain_error("mu_weight: n >= 1, r >= 2 required");
    BigInt rn1 = ipow(BigInt(r), static_cast<unsigned>(n + 1));
    BigInt num = rn1 - BigInt(n + 1) * r + n;
    BigInt den = (BigInt(r) - 1) * (BigInt(r) - 1);
    return BigRat(num, den);
}

bool mu_weight_consistent(int n, long long r) {
    BigRat direct(0);
    for (int i = 1; i <= n; ++i) {
        direct += BigRat(i) * BigRat(ipow(BigInt(r), static_cast<unsigned>(n - i)));
    }
    BigRat closed = mu_weight(n, r);
    BigRat upper = BigRat(ipow(BigInt(r), static_cast<unsigned>(n + 1)),
                          (BigInt(r) - 1) * (BigInt(r) - 1));
    return direct == closed && closed <= upper;
}

BigRat sigma_p(const std::vector<BigRat>& values, int p) {
    const int n = static_cast<int>(values.size());
    if (p < 0 || p > n) throw std::domain_error("sigma_p: p in 0..n required");
    for (const auto& v : values) {
        if (v <= 0) throw std::domain_error("sigma_p: positive values required");
    }
    std::vector<BigRat> e(p + 1);
    e[0] = 1;
    for (const auto& v : values) {
        for (int j = std::min<int>(p, n); j >= 1; --j) e[j] += e[j - 1] * v;
    }
    return e[p];
}

namespace {

// sigma_j^{1/j} chain comparisons in log space; exact-rational sigmas first.
bool root_chain_decreasing(const std::vector<Real>& logs) {
    for (std::size_t p = 0; p + 1 < logs.size(); ++p) {
        Real lhs = logs[p] / static_cast<int>(p + 1);
        Real rhs = logs[p + 1] / static_cast<int>(p + 2);
        if (lhs < rhs - Real(1e-18)) return false;
    }
    return true;
}

}  // namespace

bool mac_laurin_check(const std::vector<BigRat>& values) {
    const int n = static_cast<int>(values.size());
    std::vector<Real> logs;
    for (int p = 1; p <= n; ++p) {
        BigRat s = sigma_p(values, p) / BigRat(binomial(n, p));
        logs.push_back(log(to_real(s)));
    }
    return root_chain_decreasing(logs);
}

bool sigma_root_chain_check(const std::vector<BigRat>& values) {
    const int n = static_cast<int>(values.size());
    std::vector<Real> logs;
    for (int p = 1; p <= n; ++p) logs.push_back(log(to_real(sigma_p(values, p))));
    return root_chain_decreasing(logs);
}

bool binomial_root_step_check(int n) {
    for (int p = 1; p <= n - 1; ++p) {
        BigInt lhs = ipow(binomial(n, p), static_cast<unsigned>(p + 1));
        BigInt rhs = ipow(binomial(n, p + 1), static_cast<unsigned>(p));
        if (lhs < rhs) return false;
    }
    return true;
}

double kappa_n(int n, double tol) {
    if (n < 1) throw std::domain_error("kappa_n: n >= 1 required");
    if (n == 1) return 1.0;  // z - 1
    auto p = [n](double z) {
        // z^n - z^{n-1} - ... - z - 1 = z^n - (z^n - 1)/(z - 1)
        double zn = std::pow(z, n);
        return zn - (zn - 1.0) / (z - 1.0);
    };
    double lo = 1.0 + 1e-9, hi = 2.0;
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        double mid = 0.5 * (lo + hi);
        (p(mid) < 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double fujiwara_bound(const std::vector<double>& coeffs) {
    if (coeffs.size() < 2) throw std::domain_error("fujiwara_bound: degree >= 1 required");
    if (coeffs[0] == 0.0) throw std::domain_error("fujiwara_bound: c_0 must not vanish");
    const int n = static_cast<int>(coeffs.size()) - 1;
    double best = 0.0;
    for (int p = 1; p <= n; ++p) {
        double q = std::pow(std::abs(coeffs[p]) / std::abs(coeffs[0]), 1.0 / p);
        best = std::max(best, q);
    }
    return kappa_n(n) * best;
}

std::vector<std::complex<double>> poly_roots(const std::vector<double>& coeffs) {
    using C = std::complex<double>;
    int n = static_cast<int>(coeffs.size()) - 1;
    // strip trailing zero coefficients? no: trailing zeros mean roots at 0
    if (n < 1 || coeffs[0] == 0.0) throw std::domain_error("poly_roots: bad polynomial");
    std::vector<C> a(coeffs.begin(), coeffs.end());
    std::vector<C> z(n);
    // standard staggered start on a circle avoiding symmetry lock-in
    for (int i = 0; i < n; ++i) {
        z[i] = std::polar(0.4 + 0.9 * (i + 1) / (n + 1.0), 0.7 + 2.0 * M_PI * i / n);
    }
    auto eval = [&](C x) {
        C acc = a[0];
        for (int i = 1; i <= n; ++i) acc = acc * x + a[i];
        return acc;
    };
    for (int iter = 0; iter < 500; ++iter) {
        double shift = 0.0;
        for (int i = 0; i < n; ++i) {
            C denom = a[0];
            for (int j = 0; j < n; ++j) {
                if (j != i) denom *= z[i] - z[j];
            }
            if (std::abs(denom) < 1e-300) continue;
            C delta = eval(z[i]) / denom;
            z[i] -= delta;
            shift = std::max(shift, std::abs(delta));
        }
        if (shift < 1e-13) break;
    }
    return z;
}

CHatInverseWeights c_hat_inverse_weights(int n, long long r) {
    if (n < 2) throw std::domain_error("c_hat_inverse_weights: n >= 2 required");
    if (r < 4) throw std::domain_error("c_hat_inverse_weights: r >= 4 required");
    CHatInverseWeights out;
    out.first_product = 1;
    out.second_product = 1;
    for (int k = 1; k <= n - 1; ++k) {
        BigInt rk = ipow(BigInt(r), static_cast<unsigned>(k));
        out.first_product *= BigRat(rk - 1, rk - 2);
    }
    for (int ell = 2; ell <= n - 1; ++ell) {
        BigInt rl = ipow(BigInt(r), static_cast<unsigned>(ell));
        BigRat f(rl - r, rl - 2 * r - 1);
        out.second_product *= rpow(f, static_cast<unsigned>(n - ell));
    }
    out.value = out.first_product * out.second_product;

    BigRat one_p_3r = 1 + BigRat(3, r);
    out.first_le_1p3r = out.first_product <= one_p_3r;

    BigRat alpha_finite(1);
    for (int ell = 2; ell <= std::max(n - 1, 2); ++ell) {
        BigInt rl = ipow(BigInt(r), static_cast<unsigned>(ell));
        alpha_finite *= BigRat(rl - r, rl - 2 * r - 1);
    }
    out.second_le_alpha_pow =
        out.second_product <= rpow(alpha_finite, static_cast<unsigned>(std::max(n - 2, 0)));
    Real alpha_bound = exp(Real(2) / (r - 1));
    out.alpha_le_1p3r =
        to_real(alpha_finite) <= alpha_bound && alpha_bound <= to_real(one_p_3r);
    return out;
}

bool exp_computer_help_check(long long r) {
    return exp(Real(2) / (r - 1)) <= 1 + Real(3) / r;
}

bool lemma32_grid_check(long long r_lo, long long r_hi, int ell_lo, int ell_hi) {
    for (long long r = r_lo; r <= r_hi; ++r) {
        for (int ell = ell_lo; ell <= ell_hi; ++ell) {
            BigInt lhs = BigInt(4) * r + 2;
            BigInt rhs = ipow(BigInt(r), static_cast<unsigned>(ell)) -
                         ipow(BigInt(r), static_cast<unsigned>(ell - 1));
            if (lhs > rhs) return false;
        }
    }
    return true;
}

bool b_factor_constant_check(int n) {
    // (2n/(2n-1))^{n+1} <= 2
    BigInt lhs = ipow(BigInt(2) * n, static_cast<unsigned>(n + 1));
    BigInt rhs = 2 * ipow(BigInt(2) * n - 1, static_cast<unsigned>(n + 1));
    return lhs <= rhs;
}

DegreeBound degree_bound(int n, long long r) {
    if (n < 1 || r < 2) throw std::domain_error("degree_bound: n >= 1, r >= 2 required");
    DegreeBound b;
    b.n = n;
    b.r = r;
    BigInt r3 = ipow(BigInt(r), 3);
    BigInt rm1 = ipow(BigInt(r) - 1, 3);
    BigInt rp3n = ipow(BigInt(r) + 3, static_cast<unsigned>(n));
    b.refined = BigRat(BigInt(20) * n * n + BigInt(4) * n) * BigRat(r3, rm1 * (r + 3)) *
                BigRat(rp3n);
    b.coarse = BigInt(25) * n * n * rp3n;
    return b;
}

namespace {

GateScan gate_scan(long long r, int scan_cap, int factor_of_n) {
    GateScan g;
    g.r = r;
    g.scan_cap = scan_cap;
    auto holds = [&](int n) {
        BigRat refined = degree_bound(factor_of_n * n, r).refined;
        BigInt power = ipow(BigInt(2), static_cast<unsigned>(5 * factor_of_n * n));
        return BigRat(power) >= refined;
    };
    int first_stable = -1;
    for (int n = scan_cap; n >= 2; --n) {
        if (!holds(n)) break;
        first_stable = n;
    }
    g.n_min = first_stable;
    if (first_stable >= 0) {
        g.holds_from_10 = first_stable <= 10;
        g.holds_from_20 = first_stable <= 20;
    }
    return g;
}

}  // namespace

GateScan theorem13_gate(long long r, int scan_cap) { return gate_scan(r, scan_cap, 1); }

GateScan theorem14_gate(long long r, int scan_cap) { return gate_scan(r, scan_cap, 2); }

Real gate_factor_GG(int n) {
    if (n < 2) throw std::domain_error("gate_factor_GG: n >= 2 required");
    Real nn(n);
    return 25 * nn * nn * exp(-nn * log(Real(2)) + 6 * sqrt(nn) / log(nn));
}

Real d_GG_final(int n) {
    Real nn(n);
    return 25 * nn * nn * exp(nn * log(sqrt(nn) * log(nn) / 2 + 3));
}

Real gate_factor_K(int n) {
    Real nn(n);
    Real ll2n = log(log(2 * nn));
    if (ll2n <= 0) throw std::domain_error("gate_factor_K: log log log(2n) undefined");
    Real lll2n = log(ll2n);
    Real lln = log(log(nn));
    Real expo = 2 * nn * lll2n - nn * lln - nn * log(Real(2)) +
                6 * sqrt(Real(2)) * sqrt(nn) / ll2n;
    return 100 * nn * nn * exp(expo);
}

Real d_K_final(int n) {
    Real nn(n);
    Real ll2n = log(log(2 * nn));
    if (ll2n <= 0) throw std::domain_error("d_K_final: log log(2n) <= 0");
    return 100 * nn * nn * exp(2 * nn * log(sqrt(2 * nn) * ll2n / 2 + 3));
}

namespace {

template <class Factor, class BoundOk>
GateSearch gate_search(int scan_cap, int n_start, const Factor& factor, const BoundOk& bound_ok) {
    GateSearch s;
    for (int n = n_start; n <= scan_cap; ++n) {
        if (factor(n) < 1) {
            int window_hi = std::min(2 * n, scan_cap);
            bool all_below = true, bounds_hold = true;
            for (int m = n; m <= window_hi; ++m) {
                if (!(factor(m) < 1)) {
                    all_below = false;
                    break;
                }
                if (!bound_ok(m)) bounds_hold = false;
            }
            if (all_below) {
                s.n_min = n;
                s.window_ok = true;
                s.bound_ok = bounds_hold;
                s.factor_at_n_min = static_cast<double>(factor(n));
                return s;
            }
        }
    }
    return s;
}

}  // namespace

GateSearch find_N_GG(int scan_cap) {
    return gate_search(
        scan_cap, 3, [](int n) { return gate_factor_GG(n); },
        [](int n) {
            Real nn(n);
            // d_GG(n) <= (sqrt(n) log n)^n, in logs
            return log(d_GG_final(n)) <= nn * log(sqrt(nn) * log(nn));
        });
}

GateSearch find_N_K(int scan_cap) {
    return gate_search(
        scan_cap, 8, [](int n) { return gate_factor_K(n); },
        [](int n) {
            Real nn(n);
            return log(d_K_final(n)) <= nn * log(nn * log(nn));
        });
}

PoleRadii pole_radii(int n) {
    if (n < 3) throw std::domain_error("pole_radii: n >= 3 required");
    double min_c = 1e300, min_hat = 1e300;
    // first block, shared: denominators 1 - 2 x^i, moduli (1/2)^{1/i}
    for (int i = 1; i <= n - 1; ++i) {
        double m = std::pow(0.5, 1.0 / i);
        min_c = std::min(min_c, m);
        min_hat = std::min(min_hat, m);
    }
    // second block: 1 - 2 x^{i-1} +- x^i for i = 2..n-1
    for (int i = 2; i <= n - 1; ++i) {
        std::vector<double> c_plus(static_cast<std::size_t>(i) + 1, 0.0);
        // poly in standard order c_0 z^i + ... + c_i with c_0 the x^i coefficient
        c_plus[0] = 1.0;        // +x^i
        c_plus[1] = -2.0;       // -2 x^{i-1}
        c_plus[i] = 1.0;        // constant
        std::vector<double> c_minus = c_plus;
        c_minus[0] = -1.0;
        for (const auto& z : poly_roots(c_plus)) min_c = std::min(min_c, std::abs(z));
        for (const auto& z : poly_roots(c_minus)) min_hat = std::min(min_hat, std::abs(z));
    }
    return {min_c, min_hat};
}

double min_modulus_on_half_circle(int i, bool hat, int samples) {
    if (i < 3) throw std::domain_error("min_modulus_on_half_circle: i >= 3 required");
    double best = 1e300;
    for (int s = 0; s < samples; ++s) {
        double theta = 2.0 * M_PI * s / samples;
        std::complex<double> x = std::polar(0.5, theta);
        std::complex<double> xi1 = std::pow(x, i - 1), xi = std::pow(x, i);
        std::complex<double> v = hat ? 1.0 - 2.0 * xi1 - xi : 1.0 - 2.0 * xi1 + xi;
        best = std::min(best, std::abs(v));
    }
    return best;
}

CauchyCheck cauchy_bound_check(int n, const BigRat& rho, unsigned h_max) {
    // needs 0 < rho < sqrt(2) - 1, i.e. (rho + 1)^2 < 2
    if (!(rho > 0) || (rho + 1) * (rho + 1) >= 2) {
        throw std::domain_error("cauchy_bound_check: rho outside (0, sqrt(2)-1)");
    }
    CauchyCheck out;
    UniSeries<BigInt> chat = diagonal_C_hat_formula(n, h_max);
    BigRat chat_rho = eval_diag_grouping8<BigRat>(n, rho, true);
    BigRat rho_h(1);
    for (unsigned h = 0; h <= h_max; ++h) {
        if (BigRat(chat[h]) * rho_h > chat_rho) {
            out.ok = false;
            out.first_failure_h = h;
            return out;
        }
        rho_h *= rho;
    }
    out.ok = true;
    return out;
}

bool cauchy_e12_instantiation(int n) {
    if (n < 6) throw std::domain_error("cauchy_e12_instantiation: 1/sqrt(n) must sit in the disc");
    Real x = 1 / sqrt(Real(n));
    Real chat = eval_diag_grouping9<Real>(n, x, true);
    return log(chat) <= 12 + sqrt(Real(n));
}

Section9Report section9_suite(int n, long long r) {
    if (n < 2) throw std::domain_error("section9_suite: n >= 2 required");
    if (r < 10) throw std::domain_error("section9_suite: r >= 10 required");
    Section9Report rep;
    rep.n = n;
    rep.r = r;
    Real x = Real(1) / r;
    rep.chat_value = eval_diag_grouping9<Real>(n, x, true);
    rep.c_value = eval_diag_grouping9<Real>(n, x, false);
    Real nn(n), rr(r);
    rep.lemma91_ok = log(rep.chat_value) <= nn / rr + 12 * nn / (rr * rr);
    rep.lemma92_ok = log(rep.chat_value) - log(rep.c_value) <= 17 * nn / (rr * rr);
    rep.ratio_ge_1 = rep.chat_value >= rep.c_value;

    Real a = log(log(nn));
    rep.a_n = static_cast<double>(a);
    if (a > 1) {
        Real r3 = sqrt(nn) * a;
        if (1 / r3 < Real(1) / 2) {
            Real c3 = eval_diag_grouping9<Real>(n, 1 / r3, false);
            rep.lemma93_ok = log(c3) >= sqrt(nn) / (2 * a);
        }
    }
    return rep;
}

Lemma10Report lemma10_tail_check(int n, double a, const CAOptions& opts) {
    if (!(a > 1)) throw std::domain_error("lemma10_tail_check: a > 1 required");
    Lemma10Report rep;
    rep.n = n;
    rep.a = a;
    rep.c = std::log(a);
    rep.r = static_cast<long long>(std::floor(std::sqrt(static_cast<double>(n)) * a));
    if (rep.r < 3) throw std::domain_error("lemma10_tail_check: floor(sqrt(n) a) < 3");

    CmrDecomposition d = cmr_decomposition(n, rep.r, rep.c, opts);
    rep.tau = d.tau;
    rep.cmr_R_abs = d.CMR_R < 0 ? BigRat(-d.CMR_R) : d.CMR_R;

    const TruncationBox box = staircase_rectangle(n);
    MultiSeries Chat = opts.cache
                           ? opts.cache->get_or_build("Chat", n, box,
                                                      [&] { return build_C_hat(n, box); })
                           : build_C_hat(n, box);
    BigRat tail(0);
    const BigRat rinv(1, rep.r);
    for (const auto& t : Chat.terms()) {
        if (t.degree > rep.tau) tail += BigRat(t.coeff) * rpow(rinv, t.degree);
    }
    rep.majorant_tail = tail;
    rep.first_inequality_ok = rep.cmr_R_abs <= rep.majorant_tail;
    rep.asymptotic_reached =
        to_real(rep.majorant_tail) <= 2 * exp(Real(12)) * exp(-Real(rep.c));

    // closing minorant of section 10:
    // e^{sqrt(n)/(2a)} [e^{-2/(log a)^2} - (e^{17/a^2}-1)/2] - 2 e^{12-log a}(1+e^{-2/(log a)^2})
    double la = rep.c;
    double lead = std::exp(std::sqrt(static_cast<double>(n)) / (2 * a));
    double bracket = std::exp(-2 / (la * la)) - 0.5 * (std::exp(17 / (a * a)) - 1);
    double tail_term = 2 * std::exp(12.0) * std::exp(-la) * (1 + std::exp(-2 / (la * la)));
    rep.final_minorant = lead * bracket - tail_term;
    rep.final_minorant_ge_1 = rep.final_minorant >= 1.0;
    return rep;
}

}  // namespace hyperbounds
