#include "sumsq/hankel.hpp"
#include "sumsq/poly.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace sumsq;

namespace {

FqPoly P(const FieldPtr& f, std::string_view s) { return parse_poly(f, s); }

}  // namespace

TEST(Poly, ArithmeticExamples) {
    auto f = Field::prime(3);
    EXPECT_EQ(P(f, "1,1") * P(f, "2,1"), P(f, "2,0,1"));
    EXPECT_TRUE((P(f, "1,1") * FqPoly(f)).is_zero());
    EXPECT_TRUE((P(f, "1,1") + P(f, "2,2")).is_zero());
    EXPECT_EQ((P(f, "1,1") + P(f, "2,2")).degree(), FqPoly::kDegZero);
    EXPECT_EQ(P(f, "0,0,0").to_string(), "0");
    EXPECT_EQ((P(f, "1,1") - P(f, "1,1")).degree(), FqPoly::kDegZero);
    EXPECT_EQ((-P(f, "1,2")), P(f, "2,1"));
    EXPECT_TRUE(P(f, "2,0,1").is_monic());
    EXPECT_FALSE(P(f, "1,2").is_monic());
}

TEST(Poly, FieldMismatch) {
    auto a = P(Field::prime(3), "1,1");
    auto b = P(Field::prime(5), "1,1");
    try {
        (void)(a * b);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::FieldMismatch);
    }
}

TEST(Poly, Coefficients) {
    auto f = Field::prime(3);
    EXPECT_EQ(P(f, "2,0,1").coefficient(0), Elem{2});
    EXPECT_EQ(P(f, "2,0,1").coefficient(5), Elem{0});
    const FqPoly t1 = P(f, "1,1");
    EXPECT_EQ((t1 * t1).coefficient(1), Elem{2});
}

TEST(Poly, MonicEnumeration) {
    auto f3 = Field::prime(3);
    auto m0 = enumerate_monic(f3, 0);
    ASSERT_EQ(m0.size(), 1u);
    EXPECT_EQ(m0[0], P(f3, "1"));
    auto m1 = enumerate_monic(f3, 1);
    ASSERT_EQ(m1.size(), 3u);
    EXPECT_EQ(m1[0], P(f3, "0,1"));
    EXPECT_EQ(m1[1], P(f3, "1,1"));
    EXPECT_EQ(m1[2], P(f3, "2,1"));
    auto m3 = enumerate_monic(Field::prime(5), 3);
    EXPECT_EQ(m3.size(), 125u);
    std::set<std::string> distinct;
    for (const auto& p : m3) {
        EXPECT_TRUE(p.is_monic());
        EXPECT_EQ(p.degree(), 3);
        distinct.insert(p.to_string());
    }
    EXPECT_EQ(distinct.size(), 125u);
}

TEST(Poly, IntervalMembership) {
    auto f = Field::prime(3);
    const FqPoly a = P(f, "0,0,1");
    for (int h = 0; h <= 3; ++h) EXPECT_TRUE(in_interval(a, a, h));
    EXPECT_FALSE(in_interval(P(f, "0,1,1"), a, 1));
    EXPECT_TRUE(in_interval(P(f, "2,0,1"), a, 1));
}

// |I(A;h) n M_{2n}| = q^h, and generation agrees with the membership test.
TEST(Poly, IntervalSizeExhaustive) {
    for (int p : {3, 5}) {
        auto f = Field::prime(p);
        for (int n = 1; n <= 2; ++n) {
            const auto monics = enumerate_monic(f, 2 * n);
            for (int h = 0; h <= 2 * n; ++h) {
                for (std::size_t k = 0; k < monics.size(); k += 7) {
                    const FqPoly& a = monics[k];
                    const auto iv = interval(a, h);
                    EXPECT_EQ(iv.size(), upow(p, h));
                    std::size_t members = 0;
                    for (const auto& b : monics) members += in_interval(b, a, h);
                    EXPECT_EQ(members, upow(p, h));
                    for (const auto& b : iv) EXPECT_TRUE(in_interval(b, a, h));
                }
            }
        }
    }
}

// Product coefficients as a bilinear form: {AB}_k = a^T H b with H the Hankel
// matrix on the indicator sequence of k (entry (i,j) = [i+j = k]).
TEST(Poly, HankelProductOracle) {
    auto f = Field::prime(3);
    const Field& F = *f;
    for (std::size_t m = 0; m <= 3; ++m) {
        for (std::size_t n = 0; n <= 3; ++n) {
            for_each_vector(F, m + 1, [&](const std::vector<Elem>& a) {
                for_each_vector(F, n + 1, [&](const std::vector<Elem>& b) {
                    const FqPoly prod = FqPoly(f, a) * FqPoly(f, b);
                    for (std::size_t k = 0; k <= m + n; ++k) {
                        std::vector<Elem> seq(m + n + 1, F.zero());
                        seq[k] = F.one();
                        const Matrix h = HankelMatrix(f, seq, m + 1, n + 1).dense();
                        Elem acc = F.zero();
                        for (std::size_t i = 0; i <= m; ++i)
                            for (std::size_t j = 0; j <= n; ++j)
                                acc = F.add(acc, F.mul(a[i], F.mul(h(i, j), b[j])));
                        ASSERT_EQ(prod.coefficient(k), acc);
                    }
                });
            });
        }
    }
}

TEST(Poly, DegreeOfProduct) {
    auto f = Field::prime(5);
    for (const auto& a : enumerate_monic(f, 2))
        for (const auto& b : enumerate_monic(f, 1)) EXPECT_EQ((a.scaled(Elem{3}) * b).degree(), 3);
}
