#pragma once

// Oracle-versus-closed-form comparisons, one function per acceptance criterion.
// Each returns the number of cases compared, the failures (first few spelled
// out) and a short summary. Shared by the CLI `verify-all` and the acceptance
// test binary.

#include "sumsq/charsum.hpp"
#include "sumsq/hankel.hpp"
#include "sumsq/multiset.hpp"
#include "sumsq/variance.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace sumsq {

struct CheckResult {
    int id = 0;
    std::string name;
    std::uint64_t cases = 0;
    std::uint64_t failures = 0;
    std::vector<std::string> failure_samples;  // at most kMaxSamples
    std::string note;

    static constexpr std::size_t kMaxSamples = 8;

    bool passed() const noexcept { return cases > 0 && failures == 0; }

    /// Counts one comparison; `what` is only rendered on failure.
    template <typename Describe>
    void expect(bool ok, Describe&& what) {
        ++cases;
        if (ok) return;
        ++failures;
        if (failure_samples.size() < kMaxSamples) failure_samples.push_back(what());
    }
};

using NMPair = std::pair<std::int64_t, std::int64_t>;

/// Every (n, m) with 1 <= n <= n_max and 0 <= m <= n-1.
inline std::vector<NMPair> nm_grid(std::int64_t n_max) {
    std::vector<NMPair> out;
    for (std::int64_t n = 1; n <= n_max; ++n)
        for (std::int64_t m = 0; m < n; ++m) out.emplace_back(n, m);
    return out;
}

namespace detail {

inline std::string params(std::int64_t q, std::int64_t n, std::int64_t m, std::int64_t h) {
    std::ostringstream s;
    s << "q=" << q << " n=" << n << " m=" << m << " h=" << h;
    return s.str();
}

inline std::vector<Elem> nonzero_elements(const Field& f) {
    std::vector<Elem> out;
    for (Elem a : f.elements())
        if (!a.is_zero()) out.push_back(a);
    return out;
}

}  // namespace detail

/// Closed variance against the brute-force variance, for every h and gamma.
inline CheckResult check_theorem_grid(const std::vector<FieldPtr>& fields, std::int64_t n_max, unsigned shards = 1) {
    CheckResult r{1, "variance closed form = brute force", 0, 0, {}, {}};
    std::uint64_t flipped_mismatch = 0;
    for (const auto& field : fields) {
        const std::int64_t q = field->order();
        for (auto [n, m] : nm_grid(n_max)) {
            for (Elem gamma : detail::nonzero_elements(*field)) {
                const STable table = build_stable(field, n, m, gamma, shards);
                for (std::int64_t h = 0; h <= 2 * n; ++h) {
                    const ScaledRational brute = variance_from_square_sum(q, n, m, h, square_sum_from_table(table, h));
                    const ClosedVariance closed = variance_closed(q, n, m, h);
                    r.expect(brute == closed.value, [&] {
                        return detail::params(q, n, m, h) + " gamma=" + field->to_string(gamma) + " brute=" +
                               brute.to_string() + " closed=" + closed.value.to_string();
                    });
                    if (!(brute == variance_closed(q, n, m, h, ClosedVariant::Flipped).value)) ++flipped_mismatch;
                }
            }
        }
    }
    r.note = "flipped-sign variant differs from brute force in " + std::to_string(flipped_mismatch) + " of " +
             std::to_string(r.cases) + " cases";
    return r;
}

/// Census tables against enumeration over L_{2n}^h, cell for cell.
inline CheckResult check_census(const FieldPtr& field, const std::vector<NMPair>& grid, unsigned shards = 1) {
    CheckResult r{2, "census closed = enumerated", 0, 0, {}, {}};
    const std::int64_t q = field->order();
    std::set<std::string> subcases;
    for (auto [n, m] : grid) {
        for (std::int64_t h = 0; h <= 2 * n; ++h) {
            const Census closed = census_closed(q, n, m, h);
            const Census enumerated = census_enumerate(field, n, m, h, shards);
            subcases.insert(to_string(closed.subcase));
            r.expect(closed.cells == enumerated.cells,
                     [&] { return detail::params(q, n, m, h) + " subcase " + to_string(closed.subcase); });
            // Every filtered-out sequence and every kept one are accounted for.
            const BigInt all = ipow(q, 2 * n + 1 - h);
            r.expect(enumerated.total() + enumerated.filtered_out == all,
                     [&] { return detail::params(q, n, m, h) + " census does not cover L_{2n}^h"; });
        }
    }
    std::string seen;
    for (const auto& s : subcases) seen += (seen.empty() ? "" : ",") + s;
    r.note = "subcases covered: " + seen;
    return r;
}

/// Brute-force square sum against the census-weighted character identity
/// (closed and enumerated census) and against the raw sum of pair products.
inline CheckResult check_character_identity(const FieldPtr& field, const std::vector<NMPair>& grid, unsigned shards = 1) {
    CheckResult r{3, "square sum brute = character identity", 0, 0, {}, {}};
    const std::int64_t q = field->order();
    for (auto [n, m] : grid) {
        const STable table = build_stable(field, n, m, field->one(), shards);
        for (std::int64_t h = 0; h <= 2 * n; ++h) {
            const BigInt brute = square_sum_from_table(table, h);
            const BigInt via_closed = interval_square_sum_via_characters(field, n, m, h, CensusMode::Closed);
            const BigInt via_enum = interval_square_sum_via_characters(field, n, m, h, CensusMode::Enumerate, shards);
            const BigInt via_pairs = interval_square_sum_via_pairs(field, n, m, h, field->one());
            r.expect(brute == via_closed && brute == via_enum && brute == via_pairs, [&] {
                return detail::params(q, n, m, h) + " brute=" + brute.str() + " closed-census=" + via_closed.str() +
                       " enum-census=" + via_enum.str() + " pairs=" + via_pairs.str();
            });
        }
    }
    return r;
}

/// Pair contributions for every alpha in F_q^{2n+1}: closed value, multiset route
/// and literal double enumeration agree; pi_s >= 2 forces zero.
inline CheckResult check_pair_contribution(const FieldPtr& field, std::int64_t n) {
    CheckResult r{4, "pair contribution closed = direct", 0, 0, {}, {}};
    const auto len = static_cast<std::size_t>(2 * n + 1);
    std::uint64_t vanishing = 0;
    for_each_vector(*field, len, [&](const std::vector<Elem>& alpha) {
        const auto un = static_cast<std::size_t>(n);
        const BigInt direct = pair_contribution_direct(field, alpha, un);
        const BigInt closed = pair_contribution_closed(field, alpha, un);
        const BigInt via_multisets = pair_contribution(field, alpha, un);
        auto show = [&] {
            std::string s = "alpha=";
            for (std::size_t i = 0; i < alpha.size(); ++i) s += (i ? "," : "") + field->to_string(alpha[i]);
            return s + " direct=" + direct.str() + " closed=" + closed.str() + " multiset=" + via_multisets.str();
        };
        r.expect(direct == closed && direct == via_multisets, show);
        if (strict_rho_pi(detail::square_on_prefix(field, alpha, un)).pi >= 2) {
            ++vanishing;
            r.expect(direct == 0, show);
        }
    });
    r.note = std::to_string(vanishing) + " sequences with pi_s >= 2";
    return r;
}

/// Certificate, rank and value-multiset invariance of the reduced form.
inline CheckResult check_reduction(const FieldPtr& field, std::size_t n_max) {
    CheckResult r{5, "reduction certificate and invariants", 0, 0, {}, {}};
    const Field& f = *field;
    for (std::size_t n = 1; n <= n_max; ++n) {
        for_each_hankel(field, n, 0, std::nullopt, [&](const HankelMatrix& h) {
            const Matrix dense = h.dense();
            const Reduction red = reduce_with_certificate(h);
            const Matrix rendered = red.form.render();
            auto show = [&] { return "n=" + std::to_string(n) + " H=\n" + to_string(f, dense); };
            r.expect(congruence(f, red.transform, dense) == rendered, show);
            r.expect(invertible(f, red.transform), show);
            r.expect(rank(f, dense) == rank(f, rendered) && rank(f, dense) == red.form.partition().rank(), show);
            for (QuadMode mode : {QuadMode::Monic, QuadMode::Full, QuadMode::Last1})
                r.expect(values_quadform(field, dense, mode) == values_quadform(field, rendered, mode), show);
        });
    }
    return r;
}

/// All partitions of size n: p1' + p1'' >= 1 followed by any composition.
inline std::vector<RhoPiPartition> all_partitions(std::size_t n) {
    std::vector<RhoPiPartition> out;
    // compositions of s into positive parts
    std::vector<std::vector<std::vector<std::size_t>>> comp(n + 1);
    comp[0] = {{}};
    for (std::size_t s = 1; s <= n; ++s)
        for (std::size_t first = 1; first <= s; ++first)
            for (const auto& rest : comp[s - first]) {
                std::vector<std::size_t> c{first};
                c.insert(c.end(), rest.begin(), rest.end());
                comp[s].push_back(std::move(c));
            }
    for (std::size_t k = 1; k <= n; ++k)
        for (std::size_t p1 = 0; p1 <= k; ++p1)
            for (const auto& tail : comp[n - k]) out.push_back(RhoPiPartition{p1, k - p1, tail});
    return out;
}

/// Fibre sizes, |S_red(P)| closed against enumeration and against the set of
/// forms actually reached, and the total over partitions.
inline CheckResult check_counting(const FieldPtr& field, std::size_t n_max) {
    CheckResult r{6, "counting identities", 0, 0, {}, {}};
    const std::int64_t q = field->order();
    for (std::size_t n = 1; n <= n_max; ++n) {
        std::map<ReducedForm, std::uint64_t> fibres;
        for_each_hankel(field, n, 0, std::nullopt, [&](const HankelMatrix& h) { ++fibres[reduce(h)]; });
        std::map<RhoPiPartition, std::uint64_t> reached;
        for (const auto& [form, size] : fibres) {
            ++reached[form.partition()];
            const BigInt expect = count_hankel_with_reduced(form, field, CountMode::Closed);
            r.expect(BigInt(size) == expect, [&] {
                return "n=" + std::to_string(n) + " partition " + form.partition().to_string() + " fibre " +
                       std::to_string(size) + " expected " + expect.str();
            });
        }
        BigInt total = 0;
        for (const auto& part : all_partitions(n)) {
            const BigInt closed = count_reduced_with_partition(part, field, CountMode::Closed);
            const BigInt enumerated = count_reduced_with_partition(part, field, CountMode::Enumerate);
            const BigInt hit = reached.count(part) ? BigInt(reached[part]) : BigInt(0);
            r.expect(closed == enumerated && closed == hit, [&] {
                return "n=" + std::to_string(n) + " partition " + part.to_string() + " closed=" + closed.str() +
                       " enumerated=" + enumerated.str() + " reached=" + hit.str();
            });
            total += closed * ipow(q, static_cast<std::int64_t>(part.t()) - 1);
        }
        r.expect(total == ipow(q, 2 * static_cast<std::int64_t>(n) - 1), [&] {
            return "n=" + std::to_string(n) + " sum over partitions " + total.str();
        });
        r.expect(reached.size() == all_partitions(n).size(),
                 [&] { return "n=" + std::to_string(n) + " some partition never reached"; });
    }
    return r;
}

/// values_closed_hankel against enumerated B_M for every Hankel matrix, and the
/// triangular closed forms against enumeration for every block.
inline CheckResult check_multiset_closed(const std::vector<FieldPtr>& fields, std::size_t n_max, std::size_t l_max) {
    CheckResult r{7, "value multiset closed forms", 0, 0, {}, {}};
    for (const auto& field : fields) {
        const Field& f = *field;
        for (std::size_t n = 1; n <= n_max; ++n) {
            for_each_hankel(field, n, 0, std::nullopt, [&](const HankelMatrix& h) {
                r.expect(values_closed_hankel(h) == values_quadform(h, QuadMode::Monic), [&] {
                    return "q=" + std::to_string(f.order()) + " H=\n" + to_string(f, h.dense());
                });
            });
        }
        for (std::size_t l = 1; l <= l_max; ++l) {
            for (Elem lambda : detail::nonzero_elements(f)) {
                for_each_vector(f, l - 1, [&](const std::vector<Elem>& belly) {
                    const TriangularBlock b{l, lambda, belly};
                    for (QuadMode mode : {QuadMode::Full, QuadMode::Monic}) {
                        r.expect(values_closed_triangular(field, l, lambda, mode) == values_quadform(field, b.render(), mode),
                                 [&] {
                                     return "q=" + std::to_string(f.order()) + " l=" + std::to_string(l) +
                                            " lambda=" + f.to_string(lambda);
                                 });
                    }
                });
            }
        }
    }
    return r;
}

/// Spot values: the T_q character sum, S_q(mu) + S_q(-mu) = T_q, the (0,0)
/// census cell, and the subcase square-sum values.
inline CheckResult check_spot_values(const std::vector<FieldPtr>& fields, const FieldPtr& census_field,
                                     std::int64_t n_max) {
    CheckResult r{8, "spot values", 0, 0, {}, {}};
    for (const auto& field : fields) {
        const Field& f = *field;
        const std::string qs = "q=" + std::to_string(f.order());
        r.expect(char_of_multiset(ms_tq(field)) == CharSumValue::integer(f.characteristic(), f.order()),
                 [&] { return qs + " character sum over T_q"; });
        r.expect(char_of_multiset(ms_uniform(field)).is_zero(), [&] { return qs + " character sum over F_q"; });
        for (Elem mu : detail::nonzero_elements(f))
            r.expect(ms_sumset(ms_scaled_squares(field, mu), ms_scaled_squares(field, f.neg(mu))) == ms_tq(field),
                     [&] { return qs + " S(mu)+S(-mu) for mu=" + f.to_string(mu); });
    }

    const std::int64_t q = census_field->order();
    for (auto [n, m] : nm_grid(n_max)) {
        const STable table = build_stable(census_field, n, m, census_field->one());
        for (std::int64_t h = 0; h <= 2 * n; ++h) {
            const Census closed = census_closed(q, n, m, h);
            const Census enumerated = census_enumerate(census_field, n, m, h);
            r.expect(closed.count(0, 0) == q && enumerated.count(0, 0) == q,
                     [&] { return detail::params(q, n, m, h) + " cell (0,0)"; });
            switch (closed.subcase) {
                case Subcase::S1_1:
                case Subcase::S2_1:
                case Subcase::S2_2:
                case Subcase::S2_3:
                case Subcase::S2_4: {
                    const BigInt brute = square_sum_from_table(table, h);
                    const BigInt expect = square_sum_closed(q, n, m, h);
                    r.expect(brute == expect, [&] {
                        return detail::params(q, n, m, h) + " subcase " + to_string(closed.subcase) + " brute=" +
                               brute.str() + " expected=" + expect.str();
                    });
                    break;
                }
                default: break;
            }
        }
    }
    return r;
}

struct VerifyConfig {
    std::vector<FieldPtr> fields;  // criteria 1, 7, 8 (character spot values)
    FieldPtr census_field;         // criteria 2-6, 8 (census spot values)
    std::int64_t n_max = 3;        // variance and census grids
    std::size_t reduction_n_max = 4;
    std::size_t multiset_n_max = 3;
    std::size_t triangular_l_max = 4;
    std::int64_t pair_n = 2;
    unsigned shards = 1;
};

inline std::vector<CheckResult> verify_all(const VerifyConfig& c) {
    const auto grid = nm_grid(c.n_max);
    return {
        check_theorem_grid(c.fields, c.n_max, c.shards),
        check_census(c.census_field, grid, c.shards),
        check_character_identity(c.census_field, grid, c.shards),
        check_pair_contribution(c.census_field, c.pair_n),
        check_reduction(c.census_field, c.reduction_n_max),
        check_counting(c.census_field, c.reduction_n_max),
        check_multiset_closed(c.fields, c.multiset_n_max, c.triangular_l_max),
        check_spot_values(c.fields, c.census_field, c.n_max),
    };
}

}  // namespace sumsq
