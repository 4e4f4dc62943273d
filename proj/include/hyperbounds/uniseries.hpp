#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "hyperbounds/bigmath.hpp"

namespace hyperbounds {

// Dense truncated univariate power series, coefficients indexed 0..order.
template <class Coeff = BigInt>
class UniSeries {
public:
    explicit UniSeries(unsigned order) : c_(order + 1) {}

    static UniSeries polynomial(const std::map<unsigned, Coeff>& monomials, unsigned order) {
        UniSeries s(order);
        for (const auto& [deg, coeff] : monomials) {
            if (deg <= order) s.c_[deg] = coeff;
        }
        return s;
    }

    unsigned order() const { return static_cast<unsigned>(c_.size()) - 1; }
    const Coeff& operator[](unsigned h) const { return c_.at(h); }
    Coeff& operator[](unsigned h) { return c_.at(h); }
    const std::vector<Coeff>& coeffs() const { return c_; }

    bool operator==(const UniSeries&) const = default;

private:
    std::vector<Coeff> c_;
};

template <class Coeff>
UniSeries<Coeff> uni_mul(const UniSeries<Coeff>& a, const UniSeries<Coeff>& b, unsigned order) {
    UniSeries<Coeff> out(order);
    for (unsigned i = 0; i <= std::min(a.order(), order); ++i) {
        if (a[i] == 0) continue;
        unsigned jmax = std::min(b.order(), order - i);
        for (unsigned j = 0; j <= jmax; ++j) {
            if (b[j] == 0) continue;
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

template <class Coeff>
UniSeries<Coeff> uni_add(const UniSeries<Coeff>& a, const UniSeries<Coeff>& b, unsigned order) {
    UniSeries<Coeff> out(order);
    for (unsigned h = 0; h <= order; ++h) {
        if (h <= a.order()) out[h] += a[h];
        if (h <= b.order()) out[h] += b[h];
    }
    return out;
}

// 1/f for f with unit constant term: b_0 = 1, b_m = -sum_{k=1}^{m} f_k b_{m-k}.
// Exact over BigInt precisely because f[0] == 1.
template <class Coeff>
UniSeries<Coeff> uni_reciprocal_unit(const UniSeries<Coeff>& f, unsigned order) {
    if (f.order() < 0 || f[0] != 1) {
        throw std::domain_error("uni_reciprocal_unit: constant term must be 1");
    }
    UniSeries<Coeff> b(order);
    b[0] = 1;
    for (unsigned m = 1; m <= order; ++m) {
        Coeff s{};
        unsigned kmax = std::min(m, f.order());
        for (unsigned k = 1; k <= kmax; ++k) s += f[k] * b[m - k];
        b[m] = -s;
    }
    return b;
}

// sum_{j>=0} u^j for u with zero constant term.
template <class Coeff>
UniSeries<Coeff> uni_geometric_inverse(const UniSeries<Coeff>& u, unsigned order) {
    if (u.order() >= 0 && u[0] != 0) {
        throw std::domain_error("uni_geometric_inverse: constant term must vanish");
    }
    UniSeries<Coeff> f(order);
    f[0] = 1;
    for (unsigned h = 1; h <= std::min(order, u.order()); ++h) f[h] = -u[h];
    return uni_reciprocal_unit(f, order);
}

template <class Coeff>
UniSeries<Coeff> uni_pow(const UniSeries<Coeff>& f, unsigned m, unsigned order) {
    UniSeries<Coeff> acc(order);
    acc[0] = 1;
    UniSeries<Coeff> base = uni_mul(f, acc, order);  // f truncated to order
    unsigned e = m;
    while (e) {
        if (e & 1) acc = uni_mul(acc, base, order);
        e >>= 1;
        if (e) base = uni_mul(base, base, order);
    }
    return acc;
}

template <class Coeff, class Value>
Value uni_eval(const UniSeries<Coeff>& f, const Value& x) {
    Value acc{};
    for (unsigned h = f.order() + 1; h-- > 0;) {
        acc = acc * x + Value(f[h]);
    }
    return acc;
}

}  // namespace hyperbounds
