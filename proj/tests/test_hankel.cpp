#include "sumsq/hankel.hpp"
#include "sumsq/verify.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace sumsq;

namespace {

HankelMatrix H(const FieldPtr& f, std::string_view seq) { return HankelMatrix::square(f, parse_elements(*f, seq)); }

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no sumsq::Error thrown";
    return ErrorCode::Usage;
}

Matrix diag(std::size_t n, std::vector<std::uint32_t> d) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Elem{d[i]};
    return m;
}

}  // namespace

TEST(Hankel, Construction) {
    auto f = Field::prime(3);
    EXPECT_TRUE(H(f, "0,0,0").dense().is_zero());
    const HankelMatrix h = H(f, "1,0,0,0,1");
    EXPECT_EQ(h.entry(0, 0), Elem{1});
    EXPECT_EQ(h.entry(2, 2), Elem{1});
    EXPECT_EQ(h.entry(0, 2), Elem{0});
    EXPECT_EQ(h.entry(1, 1), Elem{0});
    EXPECT_EQ(code_of([&] { HankelMatrix(f, parse_elements(*f, "1,2"), 2, 2); }), ErrorCode::LengthMismatch);

    // H_{m+1,m+1}(alpha) and H_{n+1,n+1}(alpha) share the prefix
    const auto alpha = parse_elements(*f, "1,2,0,1,1");
    const auto big = HankelMatrix::from_prefix(f, alpha, 3, 3);
    const auto small = HankelMatrix::from_prefix(f, alpha, 2, 2);
    EXPECT_EQ(big.leading(2, 2), small);
    EXPECT_EQ(submatrix(big, 2, 0, 2, 0), small.dense());
}

TEST(Hankel, Submatrix) {
    auto f = Field::prime(5);
    const HankelMatrix h = H(f, "1,2,3,4,0");
    EXPECT_EQ(submatrix(h, 3, 0, 3, 0), h.dense());
    const Matrix corners = submatrix(h, 1, 1, 1, 1);
    ASSERT_EQ(corners.rows, 2u);
    EXPECT_EQ(corners(0, 0), h.entry(0, 0));
    EXPECT_EQ(corners(0, 1), h.entry(0, 2));
    EXPECT_EQ(corners(1, 0), h.entry(2, 0));
    EXPECT_EQ(corners(1, 1), h.entry(2, 2));
    EXPECT_EQ(code_of([&] { submatrix(h, 2, 2, 1, 0); }), ErrorCode::OutOfRange);
}

TEST(Hankel, RankAndRhoPi) {
    auto f = Field::prime(3);
    EXPECT_EQ(rank(H(f, "0,0,0,0,0")), 0u);
    EXPECT_EQ(rank(H(f, "1,0,0,0,1")), 2u);
    EXPECT_EQ(strict_rho_pi(H(f, "0,0,0,0,0")), (RhoPi{0, 0}));
    EXPECT_EQ(strict_rho_pi(H(f, "1,0,0,0,1")), (RhoPi{1, 1}));
    // lower skew-triangular: all proper leading blocks singular
    EXPECT_EQ(strict_rho_pi(H(f, "0,0,2,1,1")), (RhoPi{0, 3}));
    EXPECT_EQ(rank(H(f, "0,0,2,1,1")), 3u);
    // an invertible matrix has rho_s < n by definition
    EXPECT_EQ(strict_rho_pi(H(f, "1,0,1")), (RhoPi{1, 1}));
}

TEST(Hankel, Stage1Example) {
    auto f = Field::prime(3);
    const Stage1Result s = stage1_reduce(H(f, "1,0,0,0,1"));
    EXPECT_EQ(s.rho, 1u);
    EXPECT_EQ(s.pi, 1u);
    ASSERT_EQ(s.x.size(), 1u);
    EXPECT_EQ(s.x[0], Elem{0});
    EXPECT_EQ(s.zero_block_size, 1u);
    ASSERT_TRUE(s.final_block);
    EXPECT_EQ(s.final_block->lambda, Elem{1});
    EXPECT_EQ(s.rendered, diag(3, {1, 0, 1}));

    // rho_s = 0 returns H unchanged
    const HankelMatrix tri = H(f, "0,0,2,1,1");
    const Stage1Result t = stage1_reduce(tri);
    EXPECT_EQ(t.rendered, tri.dense());
    EXPECT_EQ(t.transform, Matrix::identity(3));
}

TEST(Hankel, ReduceExamples) {
    auto f = Field::prime(3);
    const ReducedForm zero = reduce(H(f, "0,0,0,0,0"));
    EXPECT_EQ(zero.partition(), (RhoPiPartition{0, 3, {}}));
    EXPECT_TRUE(zero.render().is_zero());

    const ReducedForm r = reduce(H(f, "1,0,0,0,1"));
    EXPECT_EQ(r.render(), diag(3, {1, 0, 1}));
    EXPECT_EQ(r.partition(), (RhoPiPartition{1, 1, {1}}));
    EXPECT_EQ(partition(H(f, "1,0,0,0,1")).to_string(), "(1,1,1)");

    const HankelMatrix tri = H(f, "0,0,2,1,1");
    EXPECT_EQ(reduce(tri).render(), tri.dense());
    EXPECT_EQ(partition(tri), (RhoPiPartition{3, 0, {}}));
}

// rho_s = sum of tail, pi_s = p1', size = n; idempotence; leading-block commutation.
TEST(Hankel, ReductionPropertiesExhaustive) {
    for (int p : {3, 5}) {
        auto f = Field::prime(p);
        const std::size_t n_max = p == 3 ? 4 : 3;
        for (std::size_t n = 1; n <= n_max; ++n) {
            for_each_hankel(f, n, 0, std::nullopt, [&](const HankelMatrix& h) {
                const ReducedForm form = reduce(h);
                const RhoPiPartition part = form.partition();
                const RhoPi rp = strict_rho_pi(h);
                ASSERT_EQ(part.rho_s(), rp.rho);
                ASSERT_EQ(part.pi_s(), rp.pi);
                ASSERT_EQ(part.size(), n);
                ASSERT_EQ(part.rank(), rank(h));

                const Matrix rendered = form.render();
                // each triangular block is already reduced
                for (const auto& b : form.blocks()) {
                    const ReducedForm again = reduce(HankelMatrix::square(f, b.sequence()));
                    ASSERT_TRUE(again.blocks().empty());
                    ASSERT_EQ(again.zero_block_size(), 0u);
                    ASSERT_EQ(*again.final_block(), b);
                }
                for (std::size_t i = 1; i <= n; ++i)
                    ASSERT_EQ(reduce(h.leading(i, i)).render(), submatrix(rendered, i, 0, i, 0))
                        << "n=" << n << " i=" << i << "\n"
                        << to_string(*f, h.dense());
            });
        }
    }
}

TEST(Hankel, ReduceIdempotentOnReducedHankel) {
    // A reduced form that is itself Hankel (a single block, or zeros) reduces to itself.
    auto f = Field::prime(5);
    for (const char* s : {"0,0,0,0,0", "0,0,3,1,4", "0,0,0,0,0,0,2", "0,0,0,1,2,3,4"}) {
        const HankelMatrix h = H(f, s);
        EXPECT_EQ(reduce(h).render(), h.dense()) << s;
        const ReducedForm once = reduce(h);
        EXPECT_EQ(reduce(HankelMatrix::square(f, parse_elements(*f, s))), once);
    }
}

TEST(Hankel, CountingExamples) {
    auto f = Field::prime(3);
    for (CountMode mode : {CountMode::Closed, CountMode::Enumerate}) {
        EXPECT_EQ(count_reduced_with_partition({1, 1, {1}}, f, mode), 4);
        EXPECT_EQ(count_reduced_with_partition({0, 3, {}}, f, mode), 1);
        EXPECT_EQ(count_reduced_with_partition({2, 0, {}}, f, mode), 6);
    }
    EXPECT_EQ(code_of([&] { count_reduced_with_partition({0, 0, {2}}, f, CountMode::Closed); }),
              ErrorCode::InvalidPartition);
    EXPECT_EQ(code_of([&] { count_reduced_with_partition({1, 0, {0}}, f, CountMode::Closed); }),
              ErrorCode::InvalidPartition);

    const ReducedForm zero = reduce(H(f, "0,0,0,0,0"));
    const ReducedForm d101 = reduce(H(f, "1,0,0,0,1"));
    for (CountMode mode : {CountMode::Closed, CountMode::Enumerate}) {
        EXPECT_EQ(count_hankel_with_reduced(zero, f, mode), 1);
        EXPECT_EQ(count_hankel_with_reduced(d101, f, mode), 3);
    }

    // fibres over all 3 x 3 Hankel matrices conserve the total 3^5
    std::map<ReducedForm, int> fibres;
    for_each_hankel(f, 3, 0, std::nullopt, [&](const HankelMatrix& h) { ++fibres[reduce(h)]; });
    BigInt total = 0;
    for (const auto& [form, size] : fibres) {
        EXPECT_EQ(BigInt(size), count_hankel_with_reduced(form, f, CountMode::Closed));
        total += size;
    }
    EXPECT_EQ(total, 243);
}

TEST(Hankel, PartitionCounts) {
    EXPECT_EQ(all_partitions(1).size(), 2u);
    EXPECT_EQ(all_partitions(2).size(), 5u);
    EXPECT_EQ(all_partitions(3).size(), 11u);
    EXPECT_EQ(all_partitions(4).size(), 23u);
    for (const auto& p : all_partitions(4)) {
        EXPECT_NO_THROW(p.validate());
        EXPECT_EQ(p.size(), 4u);
    }
}

TEST(Hankel, EnumerateCounts) {
    auto f = Field::prime(3);
    EXPECT_EQ(enumerate_hankel(f, 2, 3).size(), 1u);
    EXPECT_EQ(enumerate_hankel(f, 2, 0).size(), 27u);
    EXPECT_EQ(enumerate_hankel(f, 3, 2).size(), 27u);
    // full-rank count with h = 1 equals the sum over full-rank partitions of the fibres reached
    const auto full = enumerate_hankel(f, 2, 1, 2);
    std::size_t by_partition = 0;
    for (const auto& h : enumerate_hankel(f, 2, 1))
        if (partition(h).rank() == 2) ++by_partition;
    EXPECT_EQ(full.size(), by_partition);
    EXPECT_EQ(full.size(), 6u);  // beta_0 = 0 forces beta_1 != 0: 2 * 3
    for (const auto& h : enumerate_hankel(f, 3, 3)) {
        EXPECT_TRUE(h.seq()[0].is_zero());
        EXPECT_TRUE(h.seq()[2].is_zero());
    }
    EXPECT_EQ(code_of([&] { enumerate_hankel(f, 2, 4); }), ErrorCode::BadParameters);
}

TEST(Hankel, CertificateQ5Sampled) {
    auto f = Field::prime(5);
    std::size_t seen = 0;
    for_each_hankel(f, 4, 0, std::nullopt, [&](const HankelMatrix& h) {
        if (++seen % 37 != 0) return;
        const Reduction red = reduce_with_certificate(h);
        ASSERT_EQ(congruence(*f, red.transform, h.dense()), red.form.render());
        ASSERT_TRUE(invertible(*f, red.transform));
    });
}
