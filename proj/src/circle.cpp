#include "hyperbounds/circle.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "hyperbounds/genfun.hpp"  // PoleError

namespace hyperbounds {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::complex<double> checked_ratio(std::complex<double> num, std::complex<double> den,
                                   const char* what) {
    if (std::abs(den) < kPoleGuard) throw PoleError(what);
    return num / den;
}

}  // namespace

std::complex<double> eval_G(int k, std::complex<double> z) {
    if (k < 1) throw std::domain_error("eval_G: k >= 1 required");
    std::complex<double> zk = std::pow(z, k);
    return checked_ratio(1.0 - zk, 1.0 - 2.0 * zk, "eval_G: pole");
}

std::complex<double> eval_H(int ell, std::complex<double> z) {
    if (ell < 1) throw std::domain_error("eval_H: ell >= 1 required");
    std::complex<double> zl = std::pow(z, ell);
    return checked_ratio(1.0 - zl, 1.0 - 2.0 * zl - zl * z, "eval_H: pole");
}

std::string to_string(CircleFunc f) {
    switch (f) {
        case CircleFunc::G: return "G";
        case CircleFunc::H: return "H";
        case CircleFunc::f: return "f";
        case CircleFunc::g: return "g";
        case CircleFunc::h: return "h";
        case CircleFunc::g_prime: return "g_prime";
    }
    return "?";
}

namespace {

double scan_value(CircleFunc func, int index, double rho, double theta) {
    switch (func) {
        case CircleFunc::G:
            return std::abs(eval_G(index, std::polar(rho, theta)));
        case CircleFunc::H:
            return std::abs(eval_H(index, std::polar(rho, theta)));
        case CircleFunc::f:
            return eval_f(index, rho, theta);
        case CircleFunc::g:
            return eval_g(index, rho, theta);
        case CircleFunc::h:
            return eval_h(index, rho, theta);
        case CircleFunc::g_prime:
            return eval_g_prime(index, rho, theta);
    }
    return 0.0;
}

}  // namespace

CircleScan max_modulus_on_circle(CircleFunc func, int index, double rho, int samples) {
    if (!(rho > 0) || rho > 0.25) {
        throw std::domain_error("max_modulus_on_circle: 0 < rho <= 1/4 required");
    }
    if (samples < 8) throw std::domain_error("max_modulus_on_circle: too few samples");

    CircleScan scan;
    scan.func = func;
    scan.index = index;
    scan.rho = rho;
    scan.samples = samples;
    scan.theta.reserve(samples + 1);
    scan.values.reserve(samples + 1);

    scan.min_value = std::numeric_limits<double>::infinity();
    scan.max_value = -scan.min_value;
    // even sample count puts theta = 0 exactly on the grid
    int m = samples % 2 == 0 ? samples : samples + 1;
    for (int s = 0; s <= m; ++s) {
        double theta = -kPi + 2.0 * kPi * s / m;
        double v = scan_value(func, index, rho, theta);
        scan.theta.push_back(theta);
        scan.values.push_back(v);
        if (v < scan.min_value) {
            scan.min_value = v;
            scan.argmin = theta;
        }
        if (v > scan.max_value) {
            scan.max_value = v;
            scan.argmax = theta;
        }
    }
    // refinement at 100x local density around both extrema
    double step = 2.0 * kPi / m;
    for (double center : {scan.argmax, scan.argmin}) {
        for (int s = -100; s <= 100; ++s) {
            double theta = center + s * step / 100.0;
            if (theta < -kPi || theta > kPi) continue;
            double v = scan_value(func, index, rho, theta);
            if (v < scan.min_value) {
                scan.min_value = v;
                scan.argmin = theta;
            }
            if (v > scan.max_value) {
                scan.max_value = v;
                scan.argmax = theta;
            }
        }
    }
    // several grid points can attain the maximum exactly (|G_k| has period
    // 2 pi / k); report the canonical one closest to theta = 0
    double tol = 1e-12 * std::max(1.0, std::abs(scan.max_value));
    for (std::size_t i = 0; i < scan.theta.size(); ++i) {
        if (scan.values[i] >= scan.max_value - tol &&
            std::abs(scan.theta[i]) < std::abs(scan.argmax)) {
            scan.argmax = scan.theta[i];
        }
    }
    return scan;
}

GIdentityResult G_identity_check(int k, double rho, int grid_points) {
    if (rho < 0 || rho > 0.25) throw std::domain_error("G_identity_check: 0 <= rho <= 1/4");
    GIdentityResult out;
    out.min_factored = std::numeric_limits<double>::infinity();
    double rk = std::pow(rho, k);
    for (int s = 0; s <= grid_points; ++s) {
        double theta = -kPi + 2.0 * kPi * s / grid_points;
        double ck = std::cos(k * theta);
        double lhs = (1 - 2 * rk + rk * rk) * (1 - 4 * rk * ck + 4 * rk * rk) -
                     (1 - 4 * rk + 4 * rk * rk) * (1 - 2 * rk * ck + rk * rk);
        double factored = 2 * rk * (1 - 2 * rk * rk) * (1 - ck);
        out.max_residual = std::max(out.max_residual, std::abs(lhs - factored));
        out.min_factored = std::min(out.min_factored, factored);
    }
    return out;
}

double eval_f(int ell, double rho, double theta) {
    double rl = std::pow(rho, ell);
    double c1 = std::cos(theta), cl = std::cos(ell * theta), cl1 = std::cos((ell + 1) * theta);
    return 2 * rl * (1 - 2 * rl * rl) * (1 - cl) + 2 * rl * rho * (1 - cl1) +
           rl * rl * rho * (4 * c1 + 4 * cl1 - 4 * cl - 4) +
           rl * rl * rl * rho * (-8 * c1 - 2 * cl1 + 8 * cl + 2) +
           rl * rl * rl * rho * rho * (2 * cl - 2) + rl * rl * rl * rl * rho * (4 * c1 - 4);
}

double eval_g(int ell, double rho, double theta) {
    double rl = std::pow(rho, ell);
    double c1 = std::cos(theta), cl = std::cos(ell * theta), cl1 = std::cos((ell + 1) * theta);
    return (1 - cl) + 2 * rho * (1 - cl1) + rl * rho * (4 * c1 + 4 * cl1 - 4 * cl - 4) +
           rl * rl * rho * (-8 * c1 - 2 * cl1 + 8 * cl + 2) + rl * rl * rho * rho * (2 * cl - 2) +
           rl * rl * rl * rho * (4 * c1 - 4);
}

double eval_h(int ell, double rho, double theta) {
    return 1 - std::cos(ell * theta) + 2 * rho * (1 - std::cos((ell + 1) * theta)) -
           18 * std::pow(rho, ell + 1);
}

double eval_g_prime(int ell, double rho, double theta) {
    double rl = std::pow(rho, ell);
    double s1 = std::sin(theta), sl = std::sin(ell * theta), sl1 = std::sin((ell + 1) * theta);
    double l = ell;
    return l * sl + 2 * rho * (l + 1) * sl1 +
           rl * rho * (-4 * s1 - 4 * (l + 1) * sl1 + 4 * l * sl) +
           rl * rl * rho * (8 * s1 + 2 * (l + 1) * sl1 - 8 * l * sl) +
           rl * rl * rho * rho * (-2 * l * sl) + rl * rl * rl * rho * (-4 * s1);
}

DerivativeReport derivative_positivity(int ell, double rho, int samples) {
    if (ell < 1 || !(rho > 0) || rho > 0.25) {
        throw std::domain_error("derivative_positivity: ell >= 1, 0 < rho <= 0.25 required");
    }
    DerivativeReport rep;
    rep.ell = ell;
    rep.rho = rho;
    rep.sampled_positive = true;
    rep.fd_agrees = true;
    double hi = kPi / (4.0 * ell);
    for (int s = 1; s <= samples; ++s) {
        double theta = hi * s / samples;
        double d = eval_g_prime(ell, rho, theta);
        if (!(d > 0)) {
            rep.sampled_positive = false;
        }
        double fd = (eval_g(ell, rho, theta + 1e-6) - eval_g(ell, rho, theta - 1e-6)) / 2e-6;
        double scale = std::max({1.0, std::abs(d), std::abs(fd)});
        if (std::abs(d - fd) > 1e-6 * scale) rep.fd_agrees = false;
    }
    if (ell == 1) {
        // worst-case bracket of the ell = 1 chain: 8/sqrt(2) - 6/4^3
        rep.certified_bracket = 8.0 / std::sqrt(2.0) - 6.0 / 64.0;
    } else {
        double q = 0.25;
        rep.certified_bracket = (5.0 / 6.0) * ell -
                                std::pow(q, ell + 1) * (8 + (16.0 / 6.0) * ell) -
                                std::pow(q, 2 * ell + 1) * (5.0 / 4.0 + (27.0 / 4.0) * ell) -
                                std::pow(q, 2 * ell + 2) * (2.0 * ell) -
                                std::pow(q, 3 * ell + 1) * 2.0;
    }
    rep.bracket_positive = rep.certified_bracket > 0;
    return rep;
}

IntervalPositivityReport interval_positivity_suite(double rho, int ell_max, int samples) {
    if (!(rho > 0) || rho > 0.25) {
        throw std::domain_error("interval_positivity_suite: 0 < rho <= 0.25 required");
    }
    IntervalPositivityReport rep;
    rep.rho = rho;
    rep.lemma113_constant = (1 - 1 / std::sqrt(2.0)) * (1 - 6 * std::pow(rho, 4));
    rep.lemma115_constant = 1 - 1 / std::sqrt(2.0) - 18 * std::pow(rho, 3);
    rep.lemma114_constant = 1 - 10 * rho * rho - 2 * std::pow(rho, 3) - 4 * std::pow(rho, 4);
    rep.ell2_tail_constant = (1 - std::cos(5 * kPi / 8)) - 9 * rho * rho;

    rep.h_positive = true;
    rep.g_dominates_h = true;
    rep.f_dominates = true;
    auto note = [&](const std::string& w) {
        if (rep.witness.empty()) rep.witness = w;
    };
    for (int ell = 2; ell <= ell_max; ++ell) {
        double lo = kPi / (4.0 * ell);
        for (int s = 0; s <= samples; ++s) {
            double theta = lo + (kPi - lo) * s / samples;
            double h = eval_h(ell, rho, theta);
            double g = eval_g(ell, rho, theta);
            double f = eval_f(ell, rho, theta);
            if (!(h > 0)) {
                rep.h_positive = false;
                note("h(" + std::to_string(ell) + ") <= 0 at theta=" + std::to_string(theta));
            }
            if (g < h - 1e-12) {
                rep.g_dominates_h = false;
                note("g < h at ell=" + std::to_string(ell));
            }
            if (f < std::pow(rho, ell) * g - 1e-12) {
                rep.f_dominates = false;
                note("f < rho^l g at ell=" + std::to_string(ell));
            }
        }
    }
    rep.g1_positive = true;
    for (int s = 0; s <= samples; ++s) {
        double theta = kPi / 4 + (kPi - kPi / 4) * s / samples;
        if (!(eval_g(1, rho, theta) > 0)) {
            rep.g1_positive = false;
            note("g_{1,rho} <= 0 at theta=" + std::to_string(theta));
        }
    }
    return rep;
}

Assertion117Report assertion_11_7_check(int ell_lo, int ell_hi, double rho, int samples) {
    if (ell_lo < 3) throw std::domain_error("assertion_11_7_check: ell >= 3 required");
    Assertion117Report rep;
    rep.decisive_inequality_ok = true;
    rep.no_violating_theta = true;
    for (int ell = ell_lo; ell <= ell_hi; ++ell) {
        double lhs = 3 * (1 + std::sqrt(2.0)) / std::pow(2.0, ell);
        double rhs = 7 * kPi / (8.0 * ell);
        if (ell == 3) {
            rep.lhs_at_3 = lhs;
            rep.rhs_at_3 = rhs;
        }
        if (!(lhs < rhs)) {
            rep.decisive_inequality_ok = false;
            rep.witness = "3(1+sqrt2)/2^l >= 7pi/(8l) at ell=" + std::to_string(ell);
        }
        double lo = 7 * kPi / (4.0 * ell);
        double bound1 = 9 * std::pow(rho, ell + 1);
        double bound2 = 4.5 * std::pow(rho, ell);
        for (int s = 0; s <= samples; ++s) {
            double theta = lo + (kPi - lo) * s / samples;
            double s1 = std::sin(ell * theta / 2), s2 = std::sin((ell + 1) * theta / 2);
            if (s1 * s1 <= bound1 && s2 * s2 <= bound2) {
                rep.no_violating_theta = false;
                rep.witness = "both sine bounds met at ell=" + std::to_string(ell) +
                              ", theta=" + std::to_string(theta);
            }
        }
    }
    return rep;
}

void emit_plot_csv(const CircleScan& scan, std::ostream& os) {
    os << "theta,value\n";
    os.precision(17);
    for (std::size_t i = 0; i < scan.theta.size(); ++i) {
        os << scan.theta[i] << ',' << scan.values[i] << '\n';
    }
}

void emit_plot_csv(const CircleScan& scan, const std::string& path) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw std::runtime_error("emit_plot_csv: cannot open " + path);
    emit_plot_csv(scan, os);
    if (!os.flush()) throw std::runtime_error("emit_plot_csv: write failed for " + path);
}

}  // namespace hyperbounds
