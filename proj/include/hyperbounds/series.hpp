#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "hyperbounds/bigmath.hpp"
#include "hyperbounds/uniseries.hpp"

namespace hyperbounds {

// Exponent vector (k_2, ..., k_n): position 0 holds k_2.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<std::uint32_t> exps) : e_(std::move(exps)) {}
    static MultiIndex zeros(int n_vars) { return MultiIndex(std::vector<std::uint32_t>(n_vars)); }

    int n_vars() const { return static_cast<int>(e_.size()); }
    std::uint32_t operator[](int i) const { return e_[i]; }
    std::uint32_t& operator[](int i) { return e_[i]; }
    const std::vector<std::uint32_t>& exps() const { return e_; }

    std::uint32_t total_degree() const {
        std::uint32_t t = 0;
        for (auto v : e_) t += v;
        return t;
    }

    bool operator==(const MultiIndex&) const = default;
    // lexicographic in (k_2, k_3, ...)
    auto operator<=>(const MultiIndex&) const = default;

private:
    std::vector<std::uint32_t> e_;
};

// Admissible iff every exponent is within its per-variable cap and the total
// degree is within total_cap when one is set.
struct TruncationBox {
    std::vector<std::uint32_t> caps;
    std::optional<std::uint32_t> total_cap;

    TruncationBox() = default;
    explicit TruncationBox(std::vector<std::uint32_t> per_var_caps,
                           std::optional<std::uint32_t> total = std::nullopt)
        : caps(std::move(per_var_caps)), total_cap(total) {}

    int n_vars() const { return static_cast<int>(caps.size()); }
    bool admits(const MultiIndex& idx) const;
    // number of lattice points inside the per-variable caps (total cap ignored)
    std::size_t lattice_size() const;
    bool operator==(const TruncationBox&) const = default;
};

// Key layout: exponent of variable j in byte (7-j), so ascending key order is
// ascending lexicographic order in (k_2, ..., k_n). Keys add componentwise as
// long as each byte stays below 128, which the cap limit guarantees.
using PackedKey = std::uint64_t;

namespace packing {
constexpr int kMaxVars = 8;
constexpr std::uint32_t kMaxCap = 120;
PackedKey pack(const MultiIndex& idx);
MultiIndex unpack(PackedKey key, int n_vars);
}  // namespace packing

// Sparse truncated multivariate power series with exact integer coefficients.
// Immutable once built; terms are kept sorted by packed key with no explicit
// zeros.
class MultiSeries {
public:
    struct Term {
        PackedKey key;
        std::uint32_t degree;
        BigInt coeff;
    };

    explicit MultiSeries(TruncationBox box) : box_(std::move(box)) { validate_box(); }

    static MultiSeries constant(const TruncationBox& box, BigInt value);
    static MultiSeries monomial(const TruncationBox& box, const MultiIndex& idx, BigInt value);
    // accumulates duplicates, drops zeros, sorts
    static MultiSeries from_terms(const TruncationBox& box,
                                  std::vector<std::pair<MultiIndex, BigInt>> entries);

    int n_vars() const { return box_.n_vars(); }
    const TruncationBox& box() const { return box_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    // Stored value or 0; throws std::domain_error outside the box so that a
    // truncated-away coefficient is never mistaken for a zero one.
    BigInt coefficient(const MultiIndex& idx) const;

    bool same_coefficients(const MultiSeries& other) const;

private:
    friend MultiSeries ms_mul(const MultiSeries&, const MultiSeries&, const TruncationBox&);
    friend MultiSeries ms_add(const MultiSeries&, const MultiSeries&);
    friend MultiSeries restrict_to(const MultiSeries&, const TruncationBox&);
    friend MultiSeries read_series(std::istream&);

    void validate_box() const;

    TruncationBox box_;
    std::vector<Term> terms_;
};

MultiSeries ms_mul(const MultiSeries& a, const MultiSeries& b, const TruncationBox& box);
MultiSeries ms_add(const MultiSeries& a, const MultiSeries& b);

// sum_{j>=0} u^j truncated to box; u must have zero constant term.
MultiSeries geometric_inverse(const MultiSeries& u, const TruncationBox& box);

// Sum of same-total-degree coefficients; requires box.total_cap.
UniSeries<BigInt> diagonal(const MultiSeries& s);

// Re-truncation to a smaller box.
MultiSeries restrict_to(const MultiSeries& s, const TruncationBox& smaller);

// Text serialization: header (vars, caps, total cap), then one
// "k2,...,kn:coefficient" line per term in canonical order. Exact round trip.
void write_series(std::ostream& os, const MultiSeries& s);
MultiSeries read_series(std::istream& is);

}  // namespace hyperbounds
