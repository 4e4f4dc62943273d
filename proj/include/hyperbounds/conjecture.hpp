#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hyperbounds/genfun.hpp"

namespace hyperbounds {

class SeriesCache;  // cache.hpp

enum class VerdictMode { exact, certified, inconclusive };

std::string to_string(VerdictMode mode);

struct ConjectureReport {
    int n = 0;
    long long r = 0;
    BigInt I0_tilde;
    BigRat CA;      // exact value, or the certified lower bound
    BigRat I0;      // CA * I0_tilde in exact mode
    BigRat margin;  // CA - 1
    VerdictMode mode = VerdictMode::exact;
    unsigned trunc = 0;  // threshold T in certified mode
    double elapsed_seconds = 0.0;
};

struct CAOptions {
    int exact_cutoff = 6;
    std::size_t coefficient_budget = 2'000'000;
    unsigned certified_trunc = 12;
    int workers = 1;
    SeriesCache* cache = nullptr;
};

// (n^2)!/(n!)^n * r^{n n(n-1)/2}
BigInt central_monomial(int n, long long r);

// M^n_{k} = prod_lambda n!/i_lambda!; requires ks in the staircase.
BigRat multinomial_quotient(int n, const MultiIndex& ks);

// CA = sum_{k in staircase} M^n_k r^{-sum k} C_k, exact.
ConjectureReport compute_CA_exact(int n, long long r, const CAOptions& opts = {});

// Lower bound: the exact sum restricted to sum k <= T minus a majorant tail
// sum_{h>T} Chat_h r^{-h} (exact diagonal coefficients up to a high order,
// then a geometric cap with ratio 1/(rho r), rho = 2/5 < sqrt(2)-1).
ConjectureReport compute_CA_certified(int n, long long r, unsigned T,
                                      const CAOptions& opts = {});

struct RatioRow {
    int n;
    long long r;
    BigRat CA;
    std::string ca_decimal;
    double log_ca_over_n;
    VerdictMode mode;
};

std::vector<RatioRow> ratio_table(int n_lo, int n_hi, long long r, const CAOptions& opts = {});

// Lemma 2.1 by full enumeration of the compositions of n^2 into n parts.
bool verify_central_dominance(int n);

struct MinorationReport {
    bool lemma53_first_ok = false;
    bool lemma53_second_ok = false;
    bool uniform_ok = false;
    bool lemma52_grid_ok = false;
    bool lemma52_sharp_683_ok = false;
    bool lemma52_fails_at_070 = false;
    bool all_ok() const {
        return lemma53_first_ok && lemma53_second_ok && uniform_ok && lemma52_grid_ok &&
               lemma52_sharp_683_ok && lemma52_fails_at_070;
    }
    std::string witness;
};

// Lemma 5.3 / Lemma 5.2 inequality grid.
MinorationReport minoration_suite(int n, int k_max, int ell_max);

struct CmrDecomposition {
    int n = 0;
    long long r = 0;
    double c = 0.0;
    unsigned tau = 0;  // floor(sqrt(n)/c)

    // exact sums over the staircase
    BigRat CMR, CMR_T, CMR_R, CMR_T_plus, CMR_T_minus;
    BigRat CR, CR_T, CR_R, CR_T_plus, CR_T_minus;

    // box-truncated values of the full-lattice sums, with a shared majorant
    // bound on everything outside the box
    BigRat CR_inf_box, CR_inf_plus_box, CR_inf_minus_box, CRhat_inf_box;
    BigRat box_tail;

    // rational-function values of the same full sums (cross-check)
    BigRat CR_inf_exact, CRhat_inf_exact;

    bool identities_ok = false;       // CMR = CMR_T + CMR_R, T = T+ - T-, CR likewise
    bool majorant_split_ok = false;   // CR_inf+ + CR_inf- <= CRhat_inf within tails
    bool ineq_10_2_ok = false;        // CR- <= (e^{17 n/r^2}-1)/2 CR+ (conservative sides)
    BigRat min_M_on_window;           // min M over staircase with sum k <= tau
    double minoration_derived = 0.0;  // e^{-4/c^2}
    double minoration_quoted = 0.0;   // e^{-2/c^2}; see prop54 note
    bool min_M_meets_derived = false;
    bool min_M_meets_quoted = false;
    std::string prop54_constant_note;
};

CmrDecomposition cmr_decomposition(int n, long long r, double c, const CAOptions& opts = {});

}  // namespace hyperbounds
