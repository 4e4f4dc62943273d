#include "hyperbounds/series.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace hyperbounds {

namespace packing {

PackedKey pack(const MultiIndex& idx) {
    PackedKey key = 0;
    for (int j = 0; j < idx.n_vars(); ++j) {
        key |= static_cast<PackedKey>(idx[j] & 0xffu) << (8 * (7 - j));
    }
    return key;
}

MultiIndex unpack(PackedKey key, int n_vars) {
    MultiIndex idx = MultiIndex::zeros(n_vars);
    for (int j = 0; j < n_vars; ++j) {
        idx[j] = static_cast<std::uint32_t>((key >> (8 * (7 - j))) & 0xffu);
    }
    return idx;
}

}  // namespace packing

namespace {

constexpr PackedKey kHighBits = 0x8080808080808080ull;
// Dense accumulation buffer cap; larger lattices fall back to hashing.
constexpr std::size_t kDenseBudget = 2'500'000;

// Adding this constant to a packed key sets the high bit of every byte whose
// exponent exceeds its cap (no carries: all bytes involved stay < 255).
PackedKey swar_bias(const TruncationBox& box) {
    PackedKey bias = 0;
    for (int j = 0; j < 8; ++j) {
        std::uint32_t cap = j < box.n_vars() ? box.caps[j] : 0;
        bias |= static_cast<PackedKey>(127 - cap) << (8 * (7 - j));
    }
    return bias;
}

bool fits(PackedKey key, PackedKey bias) { return ((key + bias) & kHighBits) == 0; }

std::vector<std::uint64_t> rank_strides(const TruncationBox& box) {
    std::vector<std::uint64_t> strides(box.n_vars());
    std::uint64_t s = 1;
    for (int j = box.n_vars() - 1; j >= 0; --j) {
        strides[j] = s;
        s *= box.caps[j] + 1;
    }
    return strides;
}

std::uint64_t rank_of(const MultiIndex& idx, const std::vector<std::uint64_t>& strides) {
    std::uint64_t r = 0;
    for (int j = 0; j < idx.n_vars(); ++j) r += idx[j] * strides[j];
    return r;
}

struct FlatTerm {
    PackedKey key;
    std::uint64_t rank;
    std::uint32_t degree;
    const BigInt* coeff;
};

std::vector<FlatTerm> admissible_terms(const MultiSeries& s, const TruncationBox& box,
                                       const std::vector<std::uint64_t>& strides) {
    std::vector<FlatTerm> out;
    out.reserve(s.term_count());
    for (const auto& t : s.terms()) {
        MultiIndex idx = packing::unpack(t.key, s.n_vars());
        if (!box.admits(idx)) continue;
        out.push_back({t.key, rank_of(idx, strides), t.degree, &t.coeff});
    }
    return out;
}

}  // namespace

bool TruncationBox::admits(const MultiIndex& idx) const {
    if (idx.n_vars() != n_vars()) return false;
    for (int j = 0; j < n_vars(); ++j) {
        if (idx[j] > caps[j]) return false;
    }
    return !total_cap || idx.total_degree() <= *total_cap;
}

std::size_t TruncationBox::lattice_size() const {
    std::size_t s = 1;
    for (auto c : caps) {
        std::size_t next = s * (c + 1);
        if (next / (c + 1) != s) return SIZE_MAX;  // saturate on overflow
        s = next;
    }
    return s;
}

void MultiSeries::validate_box() const {
    if (box_.n_vars() < 1 || box_.n_vars() > packing::kMaxVars) {
        throw ResourceLimitError("MultiSeries: variable count outside 1.." +
                                 std::to_string(packing::kMaxVars));
    }
    for (auto c : box_.caps) {
        if (c > packing::kMaxCap) {
            throw ResourceLimitError("MultiSeries: per-variable cap exceeds " +
                                     std::to_string(packing::kMaxCap));
        }
    }
}

MultiSeries MultiSeries::constant(const TruncationBox& box, BigInt value) {
    MultiSeries s(box);
    if (value != 0) {
        s.terms_.push_back({packing::pack(MultiIndex::zeros(box.n_vars())), 0, std::move(value)});
    }
    return s;
}

MultiSeries MultiSeries::monomial(const TruncationBox& box, const MultiIndex& idx, BigInt value) {
    return from_terms(box, {{idx, std::move(value)}});
}

MultiSeries MultiSeries::from_terms(const TruncationBox& box,
                                    std::vector<std::pair<MultiIndex, BigInt>> entries) {
    MultiSeries s(box);
    s.terms_.reserve(entries.size());
    for (auto& [idx, c] : entries) {
        if (!box.admits(idx)) throw std::domain_error("MultiSeries: index outside box");
        if (c == 0) continue;
        s.terms_.push_back({packing::pack(idx), idx.total_degree(), std::move(c)});
    }
    std::sort(s.terms_.begin(), s.terms_.end(),
              [](const Term& a, const Term& b) { return a.key < b.key; });
    // combine duplicates
    std::size_t w = 0;
    for (std::size_t i = 0; i < s.terms_.size();) {
        Term merged = std::move(s.terms_[i]);
        std::size_t j = i + 1;
        while (j < s.terms_.size() && s.terms_[j].key == merged.key) {
            merged.coeff += s.terms_[j].coeff;
            ++j;
        }
        if (merged.coeff != 0) s.terms_[w++] = std::move(merged);
        i = j;
    }
    s.terms_.resize(w);
    return s;
}

BigInt MultiSeries::coefficient(const MultiIndex& idx) const {
    if (!box_.admits(idx)) {
        throw std::domain_error("MultiSeries::coefficient: index outside truncation box");
    }
    PackedKey key = packing::pack(idx);
    auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                               [](const Term& t, PackedKey k) { return t.key < k; });
    if (it != terms_.end() && it->key == key) return it->coeff;
    return BigInt(0);
}

bool MultiSeries::same_coefficients(const MultiSeries& other) const {
    if (term_count() != other.term_count()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].key != other.terms_[i].key || terms_[i].coeff != other.terms_[i].coeff) {
            return false;
        }
    }
    return true;
}

MultiSeries ms_mul(const MultiSeries& a, const MultiSeries& b, const TruncationBox& box) {
    if (a.n_vars() != b.n_vars() || a.n_vars() != box.n_vars()) {
        throw std::invalid_argument("ms_mul: variable count mismatch");
    }
    MultiSeries out(box);
    const auto strides = rank_strides(box);
    const auto ta = admissible_terms(a, box, strides);
    const auto tb = admissible_terms(b, box, strides);
    if (ta.empty() || tb.empty()) return out;

    const PackedKey bias = swar_bias(box);
    const bool has_total = box.total_cap.has_value();
    const std::uint32_t total = has_total ? *box.total_cap : 0;
    const std::size_t lattice = box.lattice_size();

    if (lattice <= kDenseBudget) {
        std::vector<BigInt> dense(lattice);
        for (const auto& x : ta) {
            for (const auto& y : tb) {
                if (has_total && x.degree + y.degree > total) continue;
                if (!fits(x.key + y.key, bias)) continue;
                mpz_addmul(dense[x.rank + y.rank].backend().data(), x.coeff->backend().data(),
                           y.coeff->backend().data());
            }
        }
        // walk the lattice in lexicographic (= rank) order
        MultiIndex idx = MultiIndex::zeros(box.n_vars());
        const int nv = box.n_vars();
        for (std::uint64_t r = 0; r < lattice; ++r) {
            if (dense[r] != 0) {
                out.terms_.push_back(
                    {packing::pack(idx), idx.total_degree(), std::move(dense[r])});
            }
            for (int j = nv - 1; j >= 0; --j) {
                if (idx[j] < box.caps[j]) {
                    ++idx[j];
                    break;
                }
                idx[j] = 0;
            }
        }
    } else {
        std::unordered_map<PackedKey, BigInt> acc;
        acc.reserve(std::min<std::size_t>(ta.size() * tb.size(), std::size_t(1) << 22));
        for (const auto& x : ta) {
            for (const auto& y : tb) {
                if (has_total && x.degree + y.degree > total) continue;
                PackedKey key = x.key + y.key;
                if (!fits(key, bias)) continue;
                mpz_addmul(acc[key].backend().data(), x.coeff->backend().data(),
                           y.coeff->backend().data());
            }
        }
        out.terms_.reserve(acc.size());
        for (auto& [key, c] : acc) {
            if (c == 0) continue;
            out.terms_.push_back(
                {key, packing::unpack(key, box.n_vars()).total_degree(), std::move(c)});
        }
        std::sort(out.terms_.begin(), out.terms_.end(),
                  [](const MultiSeries::Term& p, const MultiSeries::Term& q) {
                      return p.key < q.key;
                  });
    }
    return out;
}

MultiSeries ms_add(const MultiSeries& a, const MultiSeries& b) {
    if (a.box() != b.box()) throw std::invalid_argument("ms_add: boxes differ");
    MultiSeries out(a.box());
    out.terms_.reserve(a.term_count() + b.term_count());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
        if (j >= b.terms_.size() || (i < a.terms_.size() && a.terms_[i].key < b.terms_[j].key)) {
            out.terms_.push_back(a.terms_[i++]);
        } else if (i >= a.terms_.size() || b.terms_[j].key < a.terms_[i].key) {
            out.terms_.push_back(b.terms_[j++]);
        } else {
            BigInt c = a.terms_[i].coeff + b.terms_[j].coeff;
            if (c != 0) out.terms_.push_back({a.terms_[i].key, a.terms_[i].degree, std::move(c)});
            ++i;
            ++j;
        }
    }
    return out;
}

MultiSeries geometric_inverse(const MultiSeries& u, const TruncationBox& box) {
    if (!u.is_zero() && u.terms().front().degree == 0) {
        throw std::domain_error("geometric_inverse: constant term must vanish");
    }
    MultiSeries acc = MultiSeries::constant(box, BigInt(1));
    MultiSeries power = acc;
    while (true) {
        power = ms_mul(power, u, box);
        if (power.is_zero()) break;
        acc = ms_add(acc, power);
    }
    return acc;
}

UniSeries<BigInt> diagonal(const MultiSeries& s) {
    if (!s.box().total_cap) {
        throw std::invalid_argument("diagonal: total degree cap required");
    }
    UniSeries<BigInt> out(*s.box().total_cap);
    for (const auto& t : s.terms()) out[t.degree] += t.coeff;
    return out;
}

MultiSeries restrict_to(const MultiSeries& s, const TruncationBox& smaller) {
    if (smaller.n_vars() != s.n_vars()) {
        throw std::invalid_argument("restrict_to: variable count mismatch");
    }
    MultiSeries out(smaller);
    for (const auto& t : s.terms()) {
        if (smaller.admits(packing::unpack(t.key, s.n_vars()))) out.terms_.push_back(t);
    }
    return out;
}

void write_series(std::ostream& os, const MultiSeries& s) {
    os << "hbseries 1\n";
    os << "vars " << s.n_vars() << "\n";
    os << "caps";
    for (auto c : s.box().caps) os << ' ' << c;
    os << "\n";
    if (s.box().total_cap) {
        os << "total " << *s.box().total_cap << "\n";
    } else {
        os << "total none\n";
    }
    os << "terms " << s.term_count() << "\n";
    for (const auto& t : s.terms()) {
        MultiIndex idx = packing::unpack(t.key, s.n_vars());
        for (int j = 0; j < s.n_vars(); ++j) {
            if (j) os << ',';
            os << idx[j];
        }
        os << ':' << t.coeff.str() << "\n";
    }
}

MultiSeries read_series(std::istream& is) {
    auto fail = [](const std::string& why) -> std::runtime_error {
        return std::runtime_error("read_series: " + why);
    };
    std::string tag;
    int version = 0;
    if (!(is >> tag >> version) || tag != "hbseries" || version != 1) throw fail("bad header");
    int nv = 0;
    if (!(is >> tag >> nv) || tag != "vars" || nv < 1 || nv > packing::kMaxVars) {
        throw fail("bad vars");
    }
    TruncationBox box;
    box.caps.resize(nv);
    if (!(is >> tag) || tag != "caps") throw fail("bad caps");
    for (auto& c : box.caps) {
        if (!(is >> c)) throw fail("bad caps");
    }
    std::string total;
    if (!(is >> tag >> total) || tag != "total") throw fail("bad total");
    if (total != "none") box.total_cap = static_cast<std::uint32_t>(std::stoul(total));
    std::size_t count = 0;
    if (!(is >> tag >> count) || tag != "terms") throw fail("bad term count");

    MultiSeries out(box);
    out.terms_.reserve(count);
    std::string rest;
    std::getline(is, rest);  // finish the header line
    {
        std::ostringstream bulk;
        bulk << is.rdbuf();
        rest = std::move(bulk).str();
    }
    const char* p = rest.c_str();
    const char* end = p + rest.size();
    MultiIndex idx = MultiIndex::zeros(nv);
    std::string digits;
    for (std::size_t i = 0; i < count; ++i) {
        while (p < end && *p == '\n') ++p;
        for (int j = 0; j < nv; ++j) {
            std::uint32_t v = 0;
            bool any = false;
            while (p < end && *p >= '0' && *p <= '9') {
                v = v * 10 + static_cast<std::uint32_t>(*p - '0');
                ++p;
                any = true;
            }
            if (!any) throw fail("malformed exponents");
            idx[j] = v;
            if (j + 1 < nv) {
                if (p >= end || *p != ',') throw fail("malformed exponents");
                ++p;
            }
        }
        if (p >= end || *p != ':') throw fail("malformed term line");
        ++p;
        const char* coeff_begin = p;
        while (p < end && *p != '\n') ++p;
        digits.assign(coeff_begin, p);
        if (!box.admits(idx)) throw fail("index outside box");
        BigInt c(digits);
        if (c == 0) throw fail("explicit zero coefficient");
        PackedKey key = packing::pack(idx);
        if (!out.terms_.empty() && key <= out.terms_.back().key) throw fail("terms out of order");
        out.terms_.push_back({key, idx.total_degree(), std::move(c)});
    }
    return out;
}

}  // namespace hyperbounds
