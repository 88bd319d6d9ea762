#pragma once

// S_{gamma;m}(B) = #{(E, F) in M_n x M_m : E^2 + gamma F^2 = B}, its sums over
// intervals I(A;h), and the mean and variance over A in M_{2n}, both by brute
// force and by closed form. Values are exact rationals with denominator a
// power of q.

#include "sumsq/bigint.hpp"
#include "sumsq/charsum.hpp"
#include "sumsq/field.hpp"
#include "sumsq/parallel.hpp"
#include "sumsq/poly.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sumsq {

/// num / q^exp
struct ScaledRational {
    BigInt num = 0;
    std::int64_t q = 1;
    std::int64_t exp = 0;

    int sign() const { return num.sign(); }

    friend bool operator==(const ScaledRational& a, const ScaledRational& b) {
        // a.num q_b^{e_b} == b.num q_a^{e_a}
        return a.num * ipow(b.q, b.exp) == b.num * ipow(a.q, a.exp);
    }

    /// Lowest terms, e.g. "2/9"; integers print without a denominator.
    std::string to_string() const {
        BigInt n = num;
        BigInt d = ipow(q, exp);
        const BigInt g = boost::multiprecision::gcd(n < 0 ? BigInt(-n) : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        if (d == 1) return n.str();
        return n.str() + "/" + d.str();
    }
};

inline void validate_variance_params(std::int64_t n, std::int64_t m, std::int64_t h) {
    if (n < 1 || m < 0 || m > n - 1 || h < 0 || h > 2 * n)
        throw Error(ErrorCode::BadParameters, "need n >= 1, 0 <= m <= n-1, 0 <= h <= 2n (got n=" + std::to_string(n) +
                                                  " m=" + std::to_string(m) + " h=" + std::to_string(h) + ")");
}

/// S_{gamma;m}(B) for every monic B of degree 2n, indexed by the base-q value
/// of the 2n low coefficients of B.
struct STable {
    std::int64_t q = 0;
    std::int64_t n = 0;
    std::int64_t m = 0;
    Elem gamma{};
    std::vector<std::uint64_t> counts;

    std::uint64_t mass() const {
        std::uint64_t s = 0;
        for (auto c : counts) s += c;
        return s;
    }
};

namespace detail {

/// Coefficients of P^2 (scaled by c) for every monic P of degree d, as low-2n
/// digit vectors of length len.
inline std::vector<std::vector<std::uint32_t>> scaled_squares_of_monic(const FieldPtr& field, int d, Elem c,
                                                                      std::size_t len) {
    std::vector<std::vector<std::uint32_t>> out;
    for_each_monic(field, d, [&](const FqPoly& p) {
        const FqPoly sq = (p * p).scaled(c);
        std::vector<std::uint32_t> digits(len, 0);
        for (std::size_t i = 0; i < len; ++i) digits[i] = sq.coefficient(i).index;
        out.push_back(std::move(digits));
    });
    return out;
}

}  // namespace detail

/// Forward enumeration of all q^{n+m} pairs (E, F).
inline STable build_stable(const FieldPtr& field, std::int64_t n, std::int64_t m, Elem gamma, unsigned shards = 1) {
    validate_variance_params(n, m, 0);
    if (gamma.is_zero()) throw Error(ErrorCode::GammaZero, "gamma must be nonzero");
    const Field& f = *field;
    const auto len = static_cast<std::size_t>(2 * n);
    const auto e_sq = detail::scaled_squares_of_monic(field, static_cast<int>(n), f.one(), len);
    const auto f_sq = detail::scaled_squares_of_monic(field, static_cast<int>(m), gamma, len);
    const std::uint64_t size = upow(f.order(), static_cast<unsigned>(len));

    auto partials = run_shards<std::vector<std::uint64_t>>(e_sq.size(), shards, [&](std::uint64_t begin, std::uint64_t end) {
        std::vector<std::uint64_t> local(size, 0);
        for (std::uint64_t ei = begin; ei < end; ++ei) {
            for (const auto& fd : f_sq) {
                std::uint64_t idx = 0;
                for (std::size_t i = len; i-- > 0;)
                    idx = idx * f.order() + f.add(Elem{e_sq[ei][i]}, Elem{fd[i]}).index;
                ++local[idx];
            }
        }
        return local;
    });
    STable t{f.order(), n, m, gamma, std::vector<std::uint64_t>(size, 0)};
    for (const auto& p : partials)
        for (std::uint64_t i = 0; i < size; ++i) t.counts[i] += p[i];
    return t;
}

/// S_{gamma;m}(B) by direct enumeration of pairs.
inline std::uint64_t s_gamma_m(const FqPoly& b, Elem gamma, std::int64_t m) {
    if (b.is_zero() || b.degree() < 2 || b.degree() % 2 != 0 || !b.is_monic())
        throw Error(ErrorCode::BadDegree, "B must be monic of even degree 2n >= 2");
    if (gamma.is_zero()) throw Error(ErrorCode::GammaZero, "gamma must be nonzero");
    const int n = b.degree() / 2;
    if (m < 0 || m > n - 1) throw Error(ErrorCode::BadDegree, "need 0 <= m <= n-1");
    const auto& field = b.field_ptr();
    const auto fs = enumerate_monic(field, static_cast<int>(m));
    std::uint64_t count = 0;
    for_each_monic(field, n, [&](const FqPoly& e) {
        const FqPoly e2 = e * e;
        for (const auto& fp : fs)
            if (e2 + (fp * fp).scaled(gamma) == b) ++count;
    });
    return count;
}

/// Sum over A in M_{2n} of (sum_{B in I(A;h)} S(B))^2. B is grouped by its
/// coefficients h..2n-1; each group is one interval, shared by q^h choices of A.
inline BigInt square_sum_from_table(const STable& t, std::int64_t h) {
    validate_variance_params(t.n, t.m, h);
    if (h == 2 * t.n) {
        const BigInt total = t.mass();
        return ipow(t.q, h) * total * total;
    }
    const std::uint64_t group = upow(static_cast<std::uint64_t>(t.q), static_cast<unsigned>(h));
    BigInt acc = 0;
    for (std::uint64_t start = 0; start < t.counts.size(); start += group) {
        std::uint64_t s = 0;
        for (std::uint64_t i = start; i < start + group; ++i) s += t.counts[i];
        acc += BigInt(s) * s;
    }
    return acc * group;
}

inline BigInt square_sum_brute(const FieldPtr& field, std::int64_t n, std::int64_t m, std::int64_t h, Elem gamma,
                               unsigned shards = 1) {
    validate_variance_params(n, m, h);
    return square_sum_from_table(build_stable(field, n, m, gamma, shards), h);
}

/// (1/q^{2n}) sum_A sum_{B in I(A;h)} S(B), from the table.
inline ScaledRational mean_brute(const STable& t, std::int64_t h) {
    validate_variance_params(t.n, t.m, h);
    return ScaledRational{ipow(t.q, h) * t.mass(), t.q, 2 * t.n};
}

/// q^{m+h-n}
inline ScaledRational mean_closed(std::int64_t q, std::int64_t n, std::int64_t m, std::int64_t h) {
    validate_variance_params(n, m, h);
    return ScaledRational{ipow(q, m + h), q, n};
}

inline ScaledRational variance_from_square_sum(std::int64_t q, std::int64_t n, std::int64_t m, std::int64_t h,
                                               const BigInt& square_sum) {
    return ScaledRational{square_sum - ipow(q, 2 * m + 2 * h), q, 2 * n};
}

inline ScaledRational variance_brute(const FieldPtr& field, std::int64_t n, std::int64_t m, std::int64_t h, Elem gamma,
                                     unsigned shards = 1) {
    return variance_from_square_sum(field->order(), n, m, h, square_sum_brute(field, n, m, h, gamma, shards));
}

struct ClosedVariance {
    ScaledRational value;
    std::string case_label;      // which parameter block of the theorem
    std::string subrange_label;  // which h-range inside it
};

enum class ClosedVariant {
    Derived,    // summed directly from the census tables
    Flipped,    // +q^h / +q^m in the two n <= 2m blocks
};

/// Closed-form variance; every value has denominator q^{2n}.
inline ClosedVariance variance_closed(std::int64_t q, std::int64_t n, std::int64_t m, std::int64_t h,
                                      ClosedVariant variant = ClosedVariant::Derived) {
    validate_variance_params(n, m, h);
    auto P = [q](std::int64_t e) { return ipow(q, e); };
    auto make = [&](BigInt num, std::string c, std::string s) {
        return ClosedVariance{ScaledRational{std::move(num), q, 2 * n}, std::move(c), std::move(s)};
    };
    const int sgn = variant == ClosedVariant::Derived ? -1 : 1;

    if (m == 0) {
        if (h >= n) return make(0, "m=0", "h>=n");
        return make(P(h) * (P(n) - P(h)), "m=0", "h<=n-1");
    }
    if (n <= 2 * m - 1) {
        const std::string c = "m+1<=n<=2m-1";
        if (h >= m) return make(0, c, "h>=m");
        if (h >= 2 * m - n) return make(P(n + h) * (P(m) + sgn * P(h)), c, "2m-n<=h<=m-1");
        return make(P(m + h) * (P(n) + sgn * P(m) + BigInt(2 * m - n - h) * (q - 1) * P(m - 1)), c, "h<=2m-n-1");
    }
    if (n == 2 * m) {
        if (h >= m) return make(0, "n=2m", "h>=m");
        return make(P(n + h) * (P(m) + sgn * P(h)), "n=2m", "h<=m-1");
    }
    if (n >= 2 * m + 1) {
        const std::string c = "n>=2m+1";
        if (h >= n) return make(0, c, "h>=n");
        if (h >= 2 * m) return make(P(2 * m + h) * (P(n) - P(h)), c, "2m<=h<=n-1");
        if (h >= m) return make(P(2 * h) * (P(n) - P(2 * m)), c, "m<=h<=2m-1");
        return make(P(m + h) * (P(n) - P(m + h)), c, "h<=m-1");
    }
    throw Error(ErrorCode::BadParameters, "no closed form applies");
}

/// sum_A (sum_{B in I(A;h)} S(B))^2 by subcase of the census.
inline BigInt square_sum_closed(std::int64_t q, std::int64_t n, std::int64_t m, std::int64_t h,
                                ClosedVariant variant = ClosedVariant::Derived) {
    auto P = [q](std::int64_t e) { return ipow(q, e); };
    const int sgn = variant == ClosedVariant::Derived ? -1 : 1;
    switch (classify_subcase(n, m, h)) {
        case Subcase::S1_1:
        case Subcase::S2_1: return P(2 * m + 2 * h);
        case Subcase::S1_2: return P(2 * m + 2 * h) + P(n + m + h) + sgn * P(n + 2 * h);
        case Subcase::S1_3:
            return P(2 * m + 2 * h) + BigInt(2 * m - n - h) * (q - 1) * P(2 * m + h - 1) + P(n + m + h) +
                   sgn * P(2 * m + h);
        case Subcase::S2_2: return P(n + 2 * m + h);
        case Subcase::S2_3: return P(n + 2 * h);
        case Subcase::S2_4: return P(n + m + h);
    }
    throw Error(ErrorCode::BadParameters, "no subcase applies");
}

}  // namespace sumsq
