#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace hyperbounds {

using BigInt = boost::multiprecision::mpz_int;
using BigRat = boost::multiprecision::mpq_rational;

// Variable-precision real. Precision is captured at construction from the
// process-wide default, which set_real_precision_bits() controls; all suites
// run at >= 128 mantissa bits.
using Real = boost::multiprecision::mpfr_float;

// Raised when a computation would exceed a configured coefficient or size
// budget. The CLI maps it to exit code 2.
class ResourceLimitError : public std::runtime_error {
public:
    explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

void set_real_precision_bits(unsigned bits);
unsigned real_precision_bits();

// n!, memoized. warm_factorials() pre-populates the table so that concurrent
// readers never race a growing cache.
BigInt factorial(unsigned n);
void warm_factorials(unsigned up_to);

// C(n,k) with the convention C(n,k) = 0 for k < 0 or k > n.
BigInt binomial(long long n, long long k);

// (sum parts)! / prod parts!.
BigInt multinomial(const std::vector<unsigned>& parts);

// n!/(n+m)! for m of either sign; requires n + m >= 0.
BigRat falling_quotient(unsigned n, long long m);

// sqrt(2 pi n) (n/e)^n times the asymptotic correction series truncated at
// `order` (0..4): 1 + 1/(12n) + 1/(288n^2) - 139/(51840n^3) - 571/(2488320n^4).
Real stirling_factorial(unsigned n, int order = 4);

// 2^{2n}/sqrt(pi n) [1 - 1/(8n) + 1/(128n^2) + 5/(1024n^3) - 21/(32768n^4)].
Real central_binomial_asymptotic(unsigned n);

// n^{n^2-n/2+1} (2 pi)^{-(n-1)/2} e^{-1/2} [1 + 31/(360n^2) + 5287/(181440n^4)].
Real central_multinomial_asymptotic(unsigned n);

BigInt ipow(const BigInt& base, unsigned exp);
BigRat rpow(const BigRat& base, unsigned exp);

Real to_real(const BigInt& v);
Real to_real(const BigRat& v);

// log(n!) computed from the exact factorial (comparisons with asymptotics are
// done in log space to stay away from double overflow).
Real log_factorial(unsigned n);

}  // namespace hyperbounds
