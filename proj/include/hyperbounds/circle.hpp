#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "hyperbounds/bigmath.hpp"

namespace hyperbounds {

// G_k(z) = (1-z^k)/(1-2z^k), H_l(z) = (1-z^l)/(1-2z^l-z^{l+1})
std::complex<double> eval_G(int k, std::complex<double> z);
std::complex<double> eval_H(int ell, std::complex<double> z);

enum class CircleFunc { G, H, f, g, h, g_prime };

std::string to_string(CircleFunc f);

struct CircleScan {
    CircleFunc func = CircleFunc::G;
    int index = 1;
    double rho = 0.25;
    int samples = 100000;
    std::vector<double> theta;
    std::vector<double> values;  // |G|, |H| moduli; f/g/h/g' real values
    double min_value = 0.0, max_value = 0.0;
    double argmin = 0.0, argmax = 0.0;
};

// Uniform grid over [-pi, pi] (theta = 0 included), one refinement pass of
// 100x local density around each extremum.
CircleScan max_modulus_on_circle(CircleFunc func, int index, double rho, int samples);

// Clears the squared-modulus inequality for G_k and compares against the
// factored form 2 rho^k (1-2rho^{2k})(1-cos k theta); residual and sign.
struct GIdentityResult {
    double max_residual = 0.0;
    double min_factored = 0.0;
    bool ok(double tol = 1e-12) const { return max_residual < tol && min_factored >= -tol; }
};
GIdentityResult G_identity_check(int k, double rho, int grid_points);

// the section-11 trigonometric minorants
double eval_f(int ell, double rho, double theta);
double eval_g(int ell, double rho, double theta);
double eval_h(int ell, double rho, double theta);
double eval_g_prime(int ell, double rho, double theta);

struct DerivativeReport {
    int ell = 0;
    double rho = 0.25;
    bool sampled_positive = false;       // g' > 0 on (0, pi/(4 ell)]
    bool fd_agrees = false;              // matches central differences
    double certified_bracket = 0.0;      // 5.563... for ell = 1, 1.442... style for ell >= 2
    bool bracket_positive = false;
};
DerivativeReport derivative_positivity(int ell, double rho, int samples = 1000);

struct IntervalPositivityReport {
    double rho = 0.25;
    double lemma113_constant = 0.0;   // (1 - 1/sqrt 2)(1 - 6 rho^4)      ~ 0.286
    double lemma115_constant = 0.0;   // 1 - 1/sqrt 2 - 18 rho^3          ~ 0.01164
    double lemma114_constant = 0.0;   // 1 - 10 rho^2 - 2 rho^3 - 4 rho^4 ~ 0.328
    double ell2_tail_constant = 0.0;  // (1 - cos(5 pi/8)) - 9 rho^2      ~ 0.820
    bool h_positive = false;          // h > 0 on [pi/(4l), pi] for 2 <= l <= ell_max
    bool g_dominates_h = false;       // h <= g on the same grids
    bool f_dominates = false;         // rho^l g <= f
    bool g1_positive = false;         // g_{1,rho} > 0 on [pi/4, pi]
    std::string witness;
};
IntervalPositivityReport interval_positivity_suite(double rho, int ell_max = 20,
                                                   int samples = 2000);

struct Assertion117Report {
    bool decisive_inequality_ok = false;  // 3(1+sqrt2)/2^l < 7 pi/(8 l) fails... see below
    double lhs_at_3 = 0.0;                // 0.905...
    double rhs_at_3 = 0.0;                // 0.916...
    bool no_violating_theta = false;      // sampling finds no theta meeting both sine bounds
    std::string witness;
};
// For each ell in [ell_lo, ell_hi]: check 3(1+sqrt2)/2^ell < 7 pi/(8 ell) and
// sample [7 pi/(4 ell), pi] for points satisfying both sine conditions at rho.
Assertion117Report assertion_11_7_check(int ell_lo, int ell_hi, double rho = 0.25,
                                        int samples = 100000);

// "theta,value" rows at full grid resolution
void emit_plot_csv(const CircleScan& scan, std::ostream& os);
void emit_plot_csv(const CircleScan& scan, const std::string& path);

}  // namespace hyperbounds
