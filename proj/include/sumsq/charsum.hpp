#pragma once

// Exact additive-character sums. The character is psi(a) = zeta_p^{Tr(a)}, so a
// sum of psi over a multiset is an element of Z[zeta_p], stored as the vector of
// multiplicities per trace residue. Since 1 + zeta + ... + zeta^{p-1} = 0, two
// vectors denote the same number iff they differ by a constant; the canonical
// form subtracts the minimum entry.

#include "sumsq/bigint.hpp"
#include "sumsq/field.hpp"
#include "sumsq/hankel.hpp"
#include "sumsq/multiset.hpp"
#include "sumsq/parallel.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sumsq {

class CharSumValue {
public:
    CharSumValue(int p, std::vector<BigInt> residue_counts) : p_(p), counts_(std::move(residue_counts)) {
        if (counts_.size() != static_cast<std::size_t>(p)) throw Error(ErrorCode::LengthMismatch, "need p residue counts");
        canonicalize();
    }

    static CharSumValue integer(int p, const BigInt& v) {
        std::vector<BigInt> c(static_cast<std::size_t>(p), BigInt(0));
        if (v >= 0) {
            c[0] = v;
        } else {
            // -k = k (zeta + ... + zeta^{p-1})
            for (std::size_t r = 1; r < c.size(); ++r) c[r] = -v;
        }
        return CharSumValue(p, std::move(c));
    }

    int p() const noexcept { return p_; }
    const std::vector<BigInt>& residue_counts() const noexcept { return counts_; }

    /// The rational integer this value equals, if it is one (all non-zero
    /// residues carry the same count).
    std::optional<BigInt> as_integer() const {
        for (std::size_t r = 2; r < counts_.size(); ++r)
            if (counts_[r] != counts_[1]) return std::nullopt;
        return counts_[0] - counts_[1];
    }

    bool is_zero() const {
        auto v = as_integer();
        return v && *v == 0;
    }

    std::string to_string() const {
        if (auto v = as_integer()) return v->str();
        std::string s = "[";
        for (std::size_t r = 0; r < counts_.size(); ++r) {
            if (r) s += ',';
            s += counts_[r].str();
        }
        return s + "]";
    }

    friend bool operator==(const CharSumValue&, const CharSumValue&) = default;

private:
    void canonicalize() {
        const BigInt lo = *std::min_element(counts_.begin(), counts_.end());
        for (auto& c : counts_) c -= lo;
    }

    int p_;
    std::vector<BigInt> counts_;
};

/// sum_{a in A} psi(a)
inline CharSumValue char_of_multiset(const MultisetFq& a) {
    const Field& f = a.field();
    std::vector<BigInt> c(static_cast<std::size_t>(f.characteristic()), BigInt(0));
    for (std::uint32_t i = 0; i < f.order(); ++i)
        if (a.counts()[i] != 0) c[static_cast<std::size_t>(f.trace(Elem{i}))] += a.counts()[i];
    return CharSumValue(f.characteristic(), std::move(c));
}

/// Product in Z[zeta_p]: cyclic convolution of residue vectors.
inline CharSumValue charsum_mul(const CharSumValue& x, const CharSumValue& y) {
    if (x.p() != y.p()) throw Error(ErrorCode::FieldMismatch, "character sums over different characteristics");
    const auto p = static_cast<std::size_t>(x.p());
    std::vector<BigInt> c(p, BigInt(0));
    for (std::size_t i = 0; i < p; ++i) {
        if (x.residue_counts()[i] == 0) continue;
        for (std::size_t j = 0; j < p; ++j) c[(i + j) % p] += x.residue_counts()[i] * y.residue_counts()[j];
    }
    return CharSumValue(x.p(), std::move(c));
}

inline CharSumValue charsum_add(const CharSumValue& x, const CharSumValue& y) {
    if (x.p() != y.p()) throw Error(ErrorCode::FieldMismatch, "character sums over different characteristics");
    std::vector<BigInt> c(x.residue_counts());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += y.residue_counts()[i];
    return CharSumValue(x.p(), std::move(c));
}

namespace detail {

inline HankelMatrix square_on_prefix(const FieldPtr& field, const std::vector<Elem>& alpha, std::size_t size) {
    if (alpha.size() < 2 * size + 1) throw Error(ErrorCode::LengthMismatch, "alpha too short: need 2n+1 entries");
    return HankelMatrix::from_prefix(field, alpha, size + 1, size + 1);
}

inline BigInt require_integer(const CharSumValue& v, const char* what) {
    auto i = v.as_integer();
    if (!i) throw std::logic_error(std::string(what) + " is not a rational integer: " + v.to_string());
    return *i;
}

}  // namespace detail

/// (sum_e psi(e^T H e)) (sum_e psi(e^T H(-alpha) e)) with H = gamma H_{n+1,n+1}(alpha),
/// e over F_q^n x {1}, evaluated through the closed value multisets and charsum_mul.
inline BigInt pair_contribution(const FieldPtr& field, const std::vector<Elem>& alpha, std::size_t n,
                                std::optional<Elem> gamma = std::nullopt) {
    HankelMatrix h = detail::square_on_prefix(field, alpha, n);
    if (gamma) h = h.scaled(*gamma);
    const CharSumValue plus = char_of_multiset(values_closed_hankel(h));
    const CharSumValue minus = char_of_multiset(values_closed_hankel(h.negated()));
    return detail::require_integer(charsum_mul(plus, minus), "pair contribution");
}

/// Closed value of the pair: 0 if pi_s >= 2, otherwise q^{2n - rho_s}.
inline BigInt pair_contribution_closed(const FieldPtr& field, const std::vector<Elem>& alpha, std::size_t n) {
    const auto [rho, pi] = strict_rho_pi(detail::square_on_prefix(field, alpha, n));
    if (pi >= 2) return 0;
    return ipow(field->order(), static_cast<std::int64_t>(2 * n) - static_cast<std::int64_t>(rho));
}

/// The same pair by literal double enumeration over (e, e') in (F_q^n x {1})^2.
inline BigInt pair_contribution_direct(const FieldPtr& field, const std::vector<Elem>& alpha, std::size_t n) {
    const Field& f = *field;
    const HankelMatrix h = detail::square_on_prefix(field, alpha, n);
    const Matrix plus = h.dense();
    const Matrix minus = h.negated().dense();
    std::vector<int> tr_plus, tr_minus;
    for_each_vector(f, n, [&](const std::vector<Elem>& head) {
        std::vector<Elem> e = head;
        e.push_back(f.one());
        tr_plus.push_back(f.trace(quadratic_form(f, plus, e)));
        tr_minus.push_back(f.trace(quadratic_form(f, minus, e)));
    });
    const int p = f.characteristic();
    std::vector<BigInt> c(static_cast<std::size_t>(p), BigInt(0));
    for (int a : tr_plus)
        for (int b : tr_minus) c[static_cast<std::size_t>((a + b) % p)] += 1;
    return detail::require_integer(CharSumValue(p, std::move(c)), "direct pair sum");
}

enum class Subcase { S1_1, S1_2, S1_3, S2_1, S2_2, S2_3, S2_4 };

inline std::string to_string(Subcase s) {
    switch (s) {
        case Subcase::S1_1: return "1.1";
        case Subcase::S1_2: return "1.2";
        case Subcase::S1_3: return "1.3";
        case Subcase::S2_1: return "2.1";
        case Subcase::S2_2: return "2.2";
        case Subcase::S2_3: return "2.3";
        case Subcase::S2_4: return "2.4";
    }
    return "?";
}

inline void validate_census_params(std::int64_t n, std::int64_t m, std::int64_t h) {
    if (n < 1 || m < 0 || m > n - 1 || h < 0 || h > 2 * n)
        throw Error(ErrorCode::BadParameters, "need n >= 1, 0 <= m <= n-1, 0 <= h <= 2n (got n=" + std::to_string(n) +
                                                  " m=" + std::to_string(m) + " h=" + std::to_string(h) + ")");
}

/// Case 1 iff m >= 1 and m+1 <= n <= 2m; Case 2 iff n >= 2m+1 (this includes m = 0).
inline Subcase classify_subcase(std::int64_t n, std::int64_t m, std::int64_t h) {
    validate_census_params(n, m, h);
    if (m >= 1 && n <= 2 * m) {
        if (h >= m) return Subcase::S1_1;
        if (h >= 2 * m - n) return Subcase::S1_2;
        return Subcase::S1_3;
    }
    if (h >= n) return Subcase::S2_1;
    if (h >= 2 * m) return Subcase::S2_2;
    if (h >= m) return Subcase::S2_3;
    return Subcase::S2_4;
}

struct CensusCell {
    std::size_t rho2 = 0;
    std::size_t rho1 = 0;
    BigInt count = 0;
    friend bool operator==(const CensusCell&, const CensusCell&) = default;
};

struct Census {
    Subcase subcase{};
    std::vector<CensusCell> cells;  // sorted by (rho2, rho1), zero cells omitted
    BigInt filtered_out = 0;        // sequences with pi_s >= 2 for either matrix (enumeration only)

    BigInt total() const {
        BigInt t = 0;
        for (const auto& c : cells) t += c.count;
        return t;
    }

    BigInt count(std::size_t rho2, std::size_t rho1) const {
        for (const auto& c : cells)
            if (c.rho2 == rho2 && c.rho1 == rho1) return c.count;
        return 0;
    }
};

namespace detail {

inline std::vector<CensusCell> cells_from_map(const std::map<std::pair<std::size_t, std::size_t>, BigInt>& m) {
    std::vector<CensusCell> out;
    for (const auto& [key, count] : m)
        if (count != 0) out.push_back(CensusCell{key.first, key.second, count});
    return out;
}

inline std::vector<Elem> alpha_from_index(const Field& f, std::size_t len, std::size_t h, std::uint64_t idx) {
    std::vector<Elem> alpha(len, f.zero());
    for (std::size_t i = h; i < len; ++i) {
        alpha[i] = Elem{static_cast<std::uint32_t>(idx % f.order())};
        idx /= f.order();
    }
    return alpha;
}

}  // namespace detail

/// N_{n,m,h}(rho2, rho1) from the subcase tables.
inline Census census_closed(std::int64_t q, std::int64_t n, std::int64_t m, std::int64_t h) {
    const Subcase sc = classify_subcase(n, m, h);
    std::map<std::pair<std::size_t, std::size_t>, BigInt> cells;
    auto put = [&](std::int64_t r2, std::int64_t r1, BigInt v) {
        cells[{static_cast<std::size_t>(r2), static_cast<std::size_t>(r1)}] += v;
    };
    put(0, 0, q);
    auto diagonal = [&] {
        for (std::int64_t r = h + 1; r <= m; ++r) put(r, r, (q - 1) * ipow(q, 2 * r - h));
    };
    auto mixed = [&](std::int64_t r2_lo) {
        for (std::int64_t r2 = r2_lo; r2 <= m; ++r2)
            for (std::int64_t r1 = 2 * m + 1 - r2; r1 <= n; ++r1)
                put(r2, r1, (q - 1) * (q - 1) * ipow(q, 2 * r1 + 2 * r2 - 2 * m - h - 1));
    };
    switch (sc) {
        case Subcase::S1_1:
        case Subcase::S2_1: break;
        case Subcase::S1_2:
            diagonal();
            mixed(h + 1);
            break;
        case Subcase::S1_3:
            diagonal();
            mixed(2 * m + 1 - n);
            break;
        case Subcase::S2_2:
            for (std::int64_t r1 = h + 1; r1 <= n; ++r1) put(0, r1, (q - 1) * ipow(q, 2 * r1 - h));
            break;
        case Subcase::S2_3:
            for (std::int64_t r1 = 2 * m + 1; r1 <= n; ++r1) put(0, r1, (q - 1) * ipow(q, 2 * r1 - 2 * m));
            break;
        case Subcase::S2_4:
            for (std::int64_t r1 = 2 * m + 1; r1 <= n; ++r1) put(0, r1, (q - 1) * ipow(q, 2 * r1 - 2 * m));
            diagonal();
            mixed(h + 1);
            break;
    }
    return Census{sc, detail::cells_from_map(cells), 0};
}

/// N_{n,m,h}(rho2, rho1) by scanning all alpha in L_{2n}^h.
inline Census census_enumerate(const FieldPtr& field, std::int64_t n, std::int64_t m, std::int64_t h, unsigned shards = 1) {
    const Subcase sc = classify_subcase(n, m, h);
    const Field& f = *field;
    const auto len = static_cast<std::size_t>(2 * n + 1);
    const auto free = static_cast<unsigned>(static_cast<std::int64_t>(len) - h);
    const std::uint64_t total = upow(f.order(), free);

    struct Partial {
        std::map<std::pair<std::size_t, std::size_t>, BigInt> cells;
        BigInt filtered = 0;
    };
    auto partials = run_shards<Partial>(total, shards, [&](std::uint64_t begin, std::uint64_t end) {
        Partial part;
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            const auto alpha = detail::alpha_from_index(f, len, static_cast<std::size_t>(h), idx);
            const RhoPi small = strict_rho_pi(detail::square_on_prefix(field, alpha, static_cast<std::size_t>(m)));
            const RhoPi big = strict_rho_pi(detail::square_on_prefix(field, alpha, static_cast<std::size_t>(n)));
            if (small.pi <= 1 && big.pi <= 1) part.cells[{small.rho, big.rho}] += 1;
            else part.filtered += 1;
        }
        return part;
    });
    std::map<std::pair<std::size_t, std::size_t>, BigInt> merged;
    BigInt filtered = 0;
    for (const auto& p : partials) {
        for (const auto& [k, v] : p.cells) merged[k] += v;
        filtered += p.filtered;
    }
    return Census{sc, detail::cells_from_map(merged), filtered};
}

enum class CensusMode { Closed, Enumerate };

inline Census census_N(const FieldPtr& field, std::int64_t n, std::int64_t m, std::int64_t h, CensusMode mode,
                       unsigned shards = 1) {
    if (mode == CensusMode::Closed) return census_closed(field->order(), n, m, h);
    return census_enumerate(field, n, m, h, shards);
}

/// q^{2m+2h-1} sum N(rho2, rho1) q^{-rho1-rho2}, evaluated exactly.
inline BigInt square_sum_from_census(std::int64_t q, std::int64_t m, std::int64_t h, const Census& census) {
    std::int64_t top = 0;
    for (const auto& c : census.cells) top = std::max<std::int64_t>(top, static_cast<std::int64_t>(c.rho1 + c.rho2));
    BigInt num = 0;
    for (const auto& c : census.cells)
        num += c.count * ipow(q, top - static_cast<std::int64_t>(c.rho1 + c.rho2));
    // value = num * q^{2m+2h-1-top}
    const std::int64_t shift = 2 * m + 2 * h - 1 - top;
    if (shift >= 0) return num * ipow(q, shift);
    const BigInt den = ipow(q, -shift);
    if (num % den != 0) throw std::logic_error("character-side square sum is not an integer");
    return num / den;
}

inline BigInt interval_square_sum_via_characters(const FieldPtr& field, std::int64_t n, std::int64_t m, std::int64_t h,
                                                 CensusMode mode = CensusMode::Closed, unsigned shards = 1) {
    return square_sum_from_census(field->order(), m, h, census_N(field, n, m, h, mode, shards));
}

/// q^{-(2n-2h+1)} sum_{alpha in L_{2n}^h} pair_n(alpha) pair_m(gamma alpha), with every
/// pair evaluated through value multisets (no (rho, pi) filter applied).
inline BigInt interval_square_sum_via_pairs(const FieldPtr& field, std::int64_t n, std::int64_t m, std::int64_t h,
                                            Elem gamma) {
    validate_census_params(n, m, h);
    const Field& f = *field;
    const auto len = static_cast<std::size_t>(2 * n + 1);
    const std::uint64_t total = upow(f.order(), static_cast<unsigned>(static_cast<std::int64_t>(len) - h));
    BigInt acc = 0;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        const auto alpha = detail::alpha_from_index(f, len, static_cast<std::size_t>(h), idx);
        const BigInt big = pair_contribution(field, alpha, static_cast<std::size_t>(n));
        if (big == 0) continue;
        acc += big * pair_contribution(field, alpha, static_cast<std::size_t>(m), gamma);
    }
    const BigInt den = ipow(f.order(), 2 * n - 2 * h + 1);
    // 2n - 2h + 1 may be negative for large h, in which case we multiply instead.
    if (2 * n - 2 * h + 1 < 0) return acc * ipow(f.order(), -(2 * n - 2 * h + 1));
    if (acc % den != 0) throw std::logic_error("pair-side square sum is not an integer");
    return acc / den;
}

}  // namespace sumsq
