#include "hyperbounds/conjecture.hpp"

#include <chrono>
#include <cmath>
#include <thread>

#include "hyperbounds/cache.hpp"

namespace hyperbounds {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<BigInt> r_powers(long long r, unsigned up_to) {
    std::vector<BigInt> p(up_to + 1);
    p[0] = 1;
    for (unsigned i = 1; i <= up_to; ++i) p[i] = p[i - 1] * r;
    return p;
}

MultiSeries obtain_series(const std::string& kind, int n, const TruncationBox& box,
                          const CAOptions& opts, bool hat) {
    auto build = [&] { return hat ? build_C_hat(n, box) : build_C(n, box); };
    if (opts.cache) return opts.cache->get_or_build(kind, n, box, build);
    return build();
}

// All staircase weights share the denominator (n^2)! r^D / (n!)^n, so the CA
// sum is accumulated as one integer: sum over terms of
//   [(n^2)!/prod i_lambda!] * r^{D - sum k} * C_k,
// with a single rational reduction at the end.
struct WeightedSummer {
    int n;
    BigInt n2fact;
    std::vector<BigInt> rpow;  // r^0 .. r^D
    unsigned D;

    WeightedSummer(int n_, long long r, unsigned D_) : n(n_), D(D_) {
        warm_factorials(static_cast<unsigned>(n) * static_cast<unsigned>(n));
        n2fact = factorial(static_cast<unsigned>(n * n));
        rpow = r_powers(r, D);
    }

    // (n^2)!/prod i! * r^{D-deg} * coeff; requires ks in the staircase
    BigInt term(const MultiIndex& ks, std::uint32_t deg, const BigInt& coeff) const {
        BigInt denom(1);
        for (long long i : staircase_i_indices(n, ks)) {
            denom *= factorial(static_cast<unsigned>(i));
        }
        BigInt w = n2fact / denom;
        w *= rpow[D - deg];
        w *= coeff;
        return w;
    }

    // integer numerator -> rational against the common denominator
    BigRat finish(const BigInt& numerator) const {
        BigInt nf = factorial(static_cast<unsigned>(n));
        BigInt scale = ipow(nf, static_cast<unsigned>(n));
        return BigRat(numerator * scale, n2fact * rpow[D]);
    }
};

// Deterministic parallel reduction over the term array: fixed chunk
// boundaries, per-chunk sums combined in ascending chunk order (the sums are
// exact integers, so the result is schedule independent regardless).
template <class TermFn>
BigInt parallel_term_sum(const std::vector<MultiSeries::Term>& terms, int workers,
                         const TermFn& fn) {
    if (workers < 2 || terms.size() < 1024) {
        BigInt total(0);
        for (const auto& t : terms) total += fn(t);
        return total;
    }
    const int w = std::min<int>(workers, 32);
    std::vector<BigInt> partial(w);
    std::vector<std::thread> pool;
    const std::size_t chunk = (terms.size() + w - 1) / w;
    for (int c = 0; c < w; ++c) {
        pool.emplace_back([&, c] {
            std::size_t lo = c * chunk, hi = std::min(terms.size(), lo + chunk);
            BigInt acc(0);
            for (std::size_t i = lo; i < hi; ++i) acc += fn(terms[i]);
            partial[c] = std::move(acc);
        });
    }
    for (auto& t : pool) t.join();
    BigInt total(0);
    for (auto& p : partial) total += p;
    return total;
}

}  // namespace

std::string to_string(VerdictMode mode) {
    switch (mode) {
        case VerdictMode::exact: return "exact";
        case VerdictMode::certified: return "certified";
        case VerdictMode::inconclusive: return "inconclusive";
    }
    return "?";
}

BigInt central_monomial(int n, long long r) {
    if (n < 1 || r < 1) throw std::domain_error("central_monomial: n >= 1, r >= 1 required");
    unsigned un = static_cast<unsigned>(n);
    BigInt m = factorial(un * un) / ipow(factorial(un), un);
    return m * ipow(BigInt(r), un * (un * (un - 1) / 2));
}

BigRat multinomial_quotient(int n, const MultiIndex& ks) {
    if (n < 2) throw std::domain_error("multinomial_quotient: n >= 2 required");
    BigRat m(1);
    const BigInt nfact = factorial(static_cast<unsigned>(n));
    for (long long i : staircase_i_indices(n, ks)) {
        if (i < 0) throw std::domain_error("multinomial_quotient: index outside staircase");
        m *= BigRat(nfact, factorial(static_cast<unsigned>(i)));
    }
    return m;
}

ConjectureReport compute_CA_exact(int n, long long r, const CAOptions& opts) {
    const auto t0 = Clock::now();
    if (n < 2) throw std::domain_error("compute_CA_exact: n >= 2 required");
    if (r < 3) throw std::domain_error("compute_CA_exact: r >= 3 required");
    if (n > opts.exact_cutoff) {
        throw ResourceLimitError("compute_CA_exact: n exceeds the exact-mode cutoff " +
                                 std::to_string(opts.exact_cutoff));
    }
    const TruncationBox box = staircase_rectangle(n);
    if (box.lattice_size() > opts.coefficient_budget) {
        throw ResourceLimitError("compute_CA_exact: coefficient budget exceeded");
    }
    MultiSeries C = obtain_series("C", n, box, opts, false);

    const unsigned D = static_cast<unsigned>(n) * static_cast<unsigned>(n) * (n - 1) / 2;
    WeightedSummer summer(n, r, D);
    BigInt numerator = parallel_term_sum(
        C.terms(), opts.workers, [&](const MultiSeries::Term& t) -> BigInt {
            MultiIndex ks = packing::unpack(t.key, n - 1);
            if (!staircase_contains(n, ks)) return BigInt(0);
            return summer.term(ks, t.degree, t.coeff);
        });

    ConjectureReport rep;
    rep.n = n;
    rep.r = r;
    rep.I0_tilde = central_monomial(n, r);
    rep.CA = summer.finish(numerator);
    rep.I0 = rep.CA * BigRat(rep.I0_tilde);
    rep.margin = rep.CA - 1;
    rep.mode = VerdictMode::exact;
    rep.elapsed_seconds = seconds_since(t0);
    return rep;
}

ConjectureReport compute_CA_certified(int n, long long r, unsigned T, const CAOptions& opts) {
    const auto t0 = Clock::now();
    if (n < 2) throw std::domain_error("compute_CA_certified: n >= 2 required");
    if (r < 3) throw std::domain_error("compute_CA_certified: r >= 3 required");

    TruncationBox box = staircase_rectangle(n);
    for (auto& c : box.caps) c = std::min(c, T);
    box.total_cap = T;
    if (box.lattice_size() > opts.coefficient_budget) {
        throw ResourceLimitError("compute_CA_certified: coefficient budget exceeded");
    }
    MultiSeries C = obtain_series("C", n, box, opts, false);

    WeightedSummer summer(n, r, T);
    BigInt numerator = parallel_term_sum(
        C.terms(), opts.workers, [&](const MultiSeries::Term& t) -> BigInt {
            MultiIndex ks = packing::unpack(t.key, n - 1);
            if (!staircase_contains(n, ks)) return BigInt(0);
            return summer.term(ks, t.degree, t.coeff);
        });
    BigRat truncated = summer.finish(numerator);

    // Majorant tail: sum_{h>T} Chat_h r^{-h}, exact Chat_h up to order H and a
    // geometric cap beyond from Chat_h <= rho^{-h} Chat(rho), rho = 2/5.
    const unsigned H = T + 64;
    UniSeries<BigInt> chat = diagonal_C_hat_formula(n, H);
    BigRat tail(0);
    BigRat rinv(1, r);
    BigRat rpow_h = rpow(rinv, T + 1);
    for (unsigned h = T + 1; h <= H; ++h) {
        tail += BigRat(chat[h]) * rpow_h;
        rpow_h *= rinv;
    }
    const BigRat rho(2, 5);
    BigRat chat_at_rho = eval_diag_grouping8<BigRat>(n, rho, true);
    BigRat q = BigRat(1) / (rho * r);  // < 1 for r >= 3
    tail += chat_at_rho * rpow(q, H + 1) / (1 - q);

    ConjectureReport rep;
    rep.n = n;
    rep.r = r;
    rep.I0_tilde = central_monomial(n, r);
    rep.CA = truncated - tail;
    rep.I0 = rep.CA * BigRat(rep.I0_tilde);
    rep.margin = rep.CA - 1;
    rep.mode = rep.CA >= 1 ? VerdictMode::certified : VerdictMode::inconclusive;
    rep.trunc = T;
    rep.elapsed_seconds = seconds_since(t0);
    return rep;
}

std::vector<RatioRow> ratio_table(int n_lo, int n_hi, long long r, const CAOptions& opts) {
    std::vector<RatioRow> rows;
    for (int n = n_lo; n <= n_hi; ++n) {
        ConjectureReport rep;
        if (n <= opts.exact_cutoff &&
            staircase_rectangle(n).lattice_size() <= opts.coefficient_budget) {
            rep = compute_CA_exact(n, r, opts);
        } else {
            rep = compute_CA_certified(n, r, opts.certified_trunc, opts);
        }
        RatioRow row;
        row.n = n;
        row.r = r;
        row.CA = rep.CA;
        Real ca = to_real(rep.CA);
        row.ca_decimal = ca.str(20);
        row.log_ca_over_n = rep.CA > 0 ? static_cast<double>(log(ca) / n) : std::nan("");
        row.mode = rep.mode;
        rows.push_back(std::move(row));
    }
    return rows;
}

bool verify_central_dominance(int n) {
    if (n < 2 || n > 4) {
        throw std::domain_error("verify_central_dominance: brute force covers 2 <= n <= 4");
    }
    const unsigned total = static_cast<unsigned>(n) * static_cast<unsigned>(n);
    const BigInt central = factorial(total) / ipow(factorial(static_cast<unsigned>(n)),
                                                   static_cast<unsigned>(n));
    std::vector<unsigned> parts(n);
    bool ok = true;
    std::function<void(int, unsigned)> rec = [&](int pos, unsigned remaining) {
        if (!ok) return;
        if (pos == n - 1) {
            parts[pos] = remaining;
            bool is_central = true;
            for (unsigned p : parts) is_central = is_central && p == static_cast<unsigned>(n);
            if (!is_central && multinomial(parts) >= central) ok = false;
            return;
        }
        for (unsigned v = 0; v <= remaining; ++v) {
            parts[pos] = v;
            rec(pos + 1, remaining - v);
        }
    };
    rec(0, total);
    return ok;
}

MinorationReport minoration_suite(int n, int k_max, int ell_max) {
    if (n < 1) throw std::domain_error("minoration_suite: n >= 1 required");
    MinorationReport rep;
    rep.lemma53_first_ok = true;
    rep.lemma53_second_ok = true;
    rep.uniform_ok = true;
    rep.lemma52_grid_ok = true;
    auto note = [&](const std::string& w) {
        if (rep.witness.empty()) rep.witness = w;
    };

    const Real logn = log(Real(n));
    const int k_hi = std::min<long long>(k_max, 3LL * n / 5);
    for (int k = 0; k <= k_hi; ++k) {
        Real lhs = log(to_real(falling_quotient(static_cast<unsigned>(n), -k)));
        Real rhs = k * logn - Real(k) * k / n;
        if (lhs < rhs) {
            rep.lemma53_first_ok = false;
            note("Lemma 5.3 first inequality fails at k=" + std::to_string(k));
        }
    }
    for (int ell = 0; ell <= ell_max; ++ell) {
        Real lhs = log(to_real(falling_quotient(static_cast<unsigned>(n), ell)));
        Real rhs = -ell * logn - Real(ell) * ell / n;
        if (lhs < rhs) {
            rep.lemma53_second_ok = false;
            note("Lemma 5.3 second inequality fails at ell=" + std::to_string(ell));
        }
    }
    for (int m = -(3 * n / 5); m <= ell_max; ++m) {
        Real lhs = log(to_real(falling_quotient(static_cast<unsigned>(n), m)));
        Real rhs = -m * logn - Real(m) * m / n;
        if (lhs < rhs) {
            rep.uniform_ok = false;
            note("uniform minoration fails at m=" + std::to_string(m));
        }
    }

    auto lemma52_holds = [](const Real& d) { return log(1 - d) >= -d - d * d; };
    for (int i = 0; i <= 600; ++i) {
        Real d = Real(i) / 1000;  // [0, 3/5]
        if (!lemma52_holds(d)) {
            rep.lemma52_grid_ok = false;
            note("Lemma 5.2 fails at delta=" + std::to_string(i / 1000.0));
        }
    }
    rep.lemma52_sharp_683_ok = lemma52_holds(Real(683) / 1000);
    rep.lemma52_fails_at_070 = !lemma52_holds(Real(70) / 100);
    if (!rep.lemma52_sharp_683_ok) note("Lemma 5.2 sharp bound 0.683 fails");
    if (!rep.lemma52_fails_at_070) note("Lemma 5.2 unexpectedly holds at 0.70");
    return rep;
}

CmrDecomposition cmr_decomposition(int n, long long r, double c, const CAOptions& opts) {
    if (n < 2) throw std::domain_error("cmr_decomposition: n >= 2 required");
    if (r < 3) throw std::domain_error("cmr_decomposition: r >= 3 required");
    if (!(c > 0)) throw std::domain_error("cmr_decomposition: c > 0 required");

    CmrDecomposition d;
    d.n = n;
    d.r = r;
    d.c = c;
    d.tau = static_cast<unsigned>(std::floor(std::sqrt(static_cast<double>(n)) / c));

    const TruncationBox box = staircase_rectangle(n);
    if (box.lattice_size() > opts.coefficient_budget) {
        throw ResourceLimitError("cmr_decomposition: coefficient budget exceeded");
    }
    MultiSeries C = obtain_series("C", n, box, opts, false);
    MultiSeries Chat = obtain_series("Chat", n, box, opts, true);

    const unsigned D = static_cast<unsigned>(n) * static_cast<unsigned>(n) * (n - 1) / 2;
    const unsigned Dbox = [&] {
        unsigned s = 0;
        for (auto cap : box.caps) s += cap;
        return s;
    }();
    WeightedSummer summer(n, r, D);
    const auto rpow_box = r_powers(r, Dbox);

    // integer accumulators over the shared denominators
    BigInt m_all(0), m_T(0), m_R(0), m_Tp(0), m_Tm(0);         // with M, over staircase
    BigInt u_all(0), u_T(0), u_R(0), u_Tp(0), u_Tm(0);         // weight 1, over staircase
    BigInt b_all(0), b_p(0), b_m(0), bh_all(0);                // weight 1, over the box

    for (const auto& t : C.terms()) {
        const BigInt& coeff = t.coeff;
        BigInt wbox = rpow_box[Dbox - t.degree] * coeff;
        b_all += wbox;
        if (coeff > 0) {
            b_p += wbox;
        } else {
            b_m -= wbox;
        }
        MultiIndex ks = packing::unpack(t.key, n - 1);
        if (!staircase_contains(n, ks)) continue;
        BigInt wm = summer.term(ks, t.degree, coeff);
        BigInt wu = rpow_box[Dbox - t.degree] * coeff;
        m_all += wm;
        u_all += wu;
        if (t.degree <= d.tau) {
            m_T += wm;
            u_T += wu;
            if (coeff > 0) {
                m_Tp += wm;
                u_Tp += wu;
            } else {
                m_Tm -= wm;
                u_Tm -= wu;
            }
        } else {
            m_R += wm;
            u_R += wu;
        }
    }
    for (const auto& t : Chat.terms()) bh_all += rpow_box[Dbox - t.degree] * t.coeff;

    const BigInt u_den = rpow_box[Dbox];
    d.CMR = summer.finish(m_all);
    d.CMR_T = summer.finish(m_T);
    d.CMR_R = summer.finish(m_R);
    d.CMR_T_plus = summer.finish(m_Tp);
    d.CMR_T_minus = summer.finish(m_Tm);
    d.CR = BigRat(u_all, u_den);
    d.CR_T = BigRat(u_T, u_den);
    d.CR_R = BigRat(u_R, u_den);
    d.CR_T_plus = BigRat(u_Tp, u_den);
    d.CR_T_minus = BigRat(u_Tm, u_den);
    d.CR_inf_box = BigRat(b_all, u_den);
    d.CR_inf_plus_box = BigRat(b_p, u_den);
    d.CR_inf_minus_box = BigRat(b_m, u_den);
    d.CRhat_inf_box = BigRat(bh_all, u_den);

    // everything outside the rectangle has total degree > n
    const unsigned H = static_cast<unsigned>(n) + 64;
    UniSeries<BigInt> chat = diagonal_C_hat_formula(n, H);
    BigRat tail(0);
    BigRat rinv(1, r);
    BigRat rp = rpow(rinv, static_cast<unsigned>(n) + 1);
    for (unsigned h = static_cast<unsigned>(n) + 1; h <= H; ++h) {
        tail += BigRat(chat[h]) * rp;
        rp *= rinv;
    }
    const BigRat rho(2, 5);
    BigRat q = BigRat(1) / (rho * r);
    tail += eval_diag_grouping8<BigRat>(n, rho, true) * rpow(q, H + 1) / (1 - q);
    d.box_tail = tail;

    d.CR_inf_exact = eval_diag_grouping8<BigRat>(n, rinv, false);
    d.CRhat_inf_exact = eval_diag_grouping8<BigRat>(n, rinv, true);

    d.identities_ok = (d.CMR == d.CMR_T + d.CMR_R) && (d.CMR_T == d.CMR_T_plus - d.CMR_T_minus) &&
                      (d.CR == d.CR_T + d.CR_R) && (d.CR_T == d.CR_T_plus - d.CR_T_minus);
    // CR_inf+ + CR_inf- <= CRhat_inf: pointwise |C| <= Chat on the box, and the
    // full-sum comparison holds once the shared tail is attached to the right.
    d.majorant_split_ok = (d.CR_inf_plus_box + d.CR_inf_minus_box <= d.CRhat_inf_box) &&
                          (d.CR_inf_plus_box + d.CR_inf_minus_box <=
                           d.CRhat_inf_exact + d.box_tail);

    Real half_expm1 = (exp(Real(17) * n / (Real(r) * r)) - 1) / 2;
    d.ineq_10_2_ok =
        to_real(d.CR_inf_minus_box + d.box_tail) <= half_expm1 * to_real(d.CR_inf_plus_box);

    d.min_M_on_window = BigRat(1);
    for_each_staircase(n, [&](const MultiIndex& ks) {
        if (ks.total_degree() > d.tau) return;
        BigRat m = multinomial_quotient(n, ks);
        if (m < d.min_M_on_window) d.min_M_on_window = m;
    });
    d.minoration_derived = std::exp(-4.0 / (c * c));
    d.minoration_quoted = std::exp(-2.0 / (c * c));
    d.min_M_meets_derived = to_real(d.min_M_on_window) >= Real(d.minoration_derived) * 0.9999999;
    d.min_M_meets_quoted = to_real(d.min_M_on_window) >= Real(d.minoration_quoted) * 0.9999999;
    d.prop54_constant_note =
        "the cited Proposition 5.4 constant e^{-2/c^2} has no stated proof; the bound "
        "derivable from Lemma 5.3 is e^{-4/c^2}";
    return d;
}

}  // namespace hyperbounds
