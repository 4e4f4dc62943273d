#include "hyperbounds/bigmath.hpp"

#include <cmath>
#include <mutex>

namespace hyperbounds {

namespace {

std::vector<BigInt>& factorial_table() {
    static std::vector<BigInt> table{BigInt(1)};
    return table;
}

std::mutex& factorial_mutex() {
    static std::mutex m;
    return m;
}

void grow_factorials_locked(unsigned up_to) {
    auto& table = factorial_table();
    for (unsigned i = static_cast<unsigned>(table.size()); i <= up_to; ++i) {
        table.push_back(table.back() * i);
    }
}

Real real_pi() {
    Real x;
    mpfr_const_pi(x.backend().data(), MPFR_RNDN);
    return x;
}

}  // namespace

void set_real_precision_bits(unsigned bits) {
    if (bits < 64) bits = 64;
    // boost mpfr precision is configured in decimal digits
    Real::default_precision(static_cast<unsigned>(std::ceil(bits * 0.30103)) + 2);
}

unsigned real_precision_bits() {
    return static_cast<unsigned>(Real::default_precision() / 0.30103);
}

void warm_factorials(unsigned up_to) {
    std::lock_guard lock(factorial_mutex());
    grow_factorials_locked(up_to);
}

BigInt factorial(unsigned n) {
    std::lock_guard lock(factorial_mutex());
    grow_factorials_locked(n);
    return factorial_table()[n];
}

BigInt binomial(long long n, long long k) {
    if (k < 0 || k > n || n < 0) return BigInt(0);
    BigInt result;
    mpz_bin_uiui(result.backend().data(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return result;
}

BigInt multinomial(const std::vector<unsigned>& parts) {
    if (parts.empty()) throw std::invalid_argument("multinomial: empty parts");
    unsigned total = 0;
    for (unsigned p : parts) total += p;
    BigInt result = factorial(total);
    for (unsigned p : parts) result /= factorial(p);
    return result;
}

BigRat falling_quotient(unsigned n, long long m) {
    long long target = static_cast<long long>(n) + m;
    if (target < 0) throw std::domain_error("falling_quotient: n + m < 0");
    if (m <= 0) {
        // n (n-1) ... (n+m+1), an integer
        BigInt num(1);
        for (long long v = target + 1; v <= static_cast<long long>(n); ++v) num *= v;
        return BigRat(num);
    }
    BigInt den(1);
    for (long long v = static_cast<long long>(n) + 1; v <= target; ++v) den *= v;
    return BigRat(1) / BigRat(den);
}

Real stirling_factorial(unsigned n, int order) {
    if (n < 1) throw std::domain_error("stirling_factorial: n >= 1 required");
    if (order < 0 || order > 4) throw std::domain_error("stirling_factorial: order in 0..4");
    const Real pi = real_pi();
    Real nn(n);
    Real base = sqrt(2 * pi * nn) * exp(nn * (log(nn) - 1));
    Real corr(1);
    static const long nums[4] = {1, 1, -139, -571};
    static const long dens[4] = {12, 288, 51840, 2488320};
    Real npow(1);
    for (int j = 1; j <= order; ++j) {
        npow *= nn;
        corr += Real(nums[j - 1]) / (Real(dens[j - 1]) * npow);
    }
    return base * corr;
}

Real central_binomial_asymptotic(unsigned n) {
    if (n < 1) throw std::domain_error("central_binomial_asymptotic: n >= 1 required");
    const Real pi = real_pi();
    Real nn(n);
    Real base = exp(2 * nn * log(Real(2))) / sqrt(pi * nn);
    Real bracket = 1 - Real(1) / (8 * nn) + Real(1) / (128 * nn * nn) +
                   Real(5) / (1024 * nn * nn * nn) - Real(21) / (32768 * nn * nn * nn * nn);
    return base * bracket;
}

Real central_multinomial_asymptotic(unsigned n) {
    if (n < 1) throw std::domain_error("central_multinomial_asymptotic: n >= 1 required");
    const Real pi = real_pi();
    Real nn(n);
    // constant term e^{-1/12}: from (1 + 1/(12n) + ...)^n -> e^{1/12} in the
    // denominator; the remaining corrections are the even-power bracket
    Real exponent = (nn * nn - nn / 2 + 1) * log(nn) - (nn - 1) / 2 * log(2 * pi) - Real(1) / 12;
    Real bracket = 1 + Real(31) / (360 * nn * nn) + Real(5287) / (181440 * nn * nn * nn * nn);
    return exp(exponent) * bracket;
}

BigInt ipow(const BigInt& base, unsigned exp) {
    BigInt result;
    mpz_pow_ui(result.backend().data(), base.backend().data(), exp);
    return result;
}

BigRat rpow(const BigRat& base, unsigned exp) {
    BigRat result(1);
    BigRat b = base;
    unsigned e = exp;
    while (e) {
        if (e & 1) result *= b;
        b *= b;
        e >>= 1;
    }
    return result;
}

Real to_real(const BigInt& v) { return Real(v); }

Real to_real(const BigRat& v) { return Real(v); }

Real log_factorial(unsigned n) { return log(to_real(factorial(n))); }

}  // namespace hyperbounds
