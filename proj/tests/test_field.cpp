#include "sumsq/field.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace sumsq;

namespace {

FieldPtr f9() { return Field::make(3, 2, {1, 0, 1}); }  // x^2 + 1

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no sumsq::Error thrown";
    return ErrorCode::Usage;
}

std::vector<FieldPtr> small_fields() {
    return {Field::prime(3), Field::prime(5), Field::prime(7), f9(), Field::prime(11), Field::prime(13),
            Field::make(5, 2, {2, 0, 1}), Field::make(3, 3, {1, 2, 0, 1})};
}

}  // namespace

TEST(Field, Construction) {
    EXPECT_EQ(Field::prime(3)->order(), 3u);
    EXPECT_EQ(f9()->order(), 9u);
    EXPECT_EQ(f9()->spec_string(), "3^2:1,0,1");
    EXPECT_EQ(code_of([] { Field::prime(2); }), ErrorCode::EvenCharacteristic);
    EXPECT_EQ(code_of([] { Field::prime(4); }), ErrorCode::EvenCharacteristic);
    EXPECT_EQ(code_of([] { Field::prime(9); }), ErrorCode::NonPrime);
    EXPECT_EQ(code_of([] { Field::prime(1); }), ErrorCode::NonPrime);
    // x^2 + 2 = (x+1)(x+2) over F_3
    EXPECT_EQ(code_of([] { Field::make(3, 2, {2, 0, 1}); }), ErrorCode::ReducibleModulus);
    // x^3 + x + 1 vanishes at x = 1
    EXPECT_EQ(code_of([] { Field::make(3, 3, {1, 1, 0, 1}); }), ErrorCode::ReducibleModulus);
    EXPECT_EQ(code_of([] { Field::make(3, 2, {1, 0, 2}); }), ErrorCode::BadParameters);
    EXPECT_EQ(code_of([] { Field::make(3, 2, {1, 1}); }), ErrorCode::LengthMismatch);
}

TEST(Field, ParseSpec) {
    EXPECT_EQ(*parse_field_spec("5"), *Field::prime(5));
    EXPECT_EQ(*parse_field_spec("3^2:1,0,1"), *f9());
    EXPECT_EQ(code_of([] { parse_field_spec("4"); }), ErrorCode::EvenCharacteristic);
    EXPECT_EQ(code_of([] { parse_field_spec("3^2"); }), ErrorCode::Usage);
    EXPECT_EQ(code_of([] { parse_field_spec("abc"); }), ErrorCode::Usage);
}

TEST(Field, ArithmeticExamples) {
    auto f = Field::prime(3);
    EXPECT_EQ(f->mul(Elem{2}, Elem{2}), Elem{1});
    EXPECT_EQ(f->inv(Elem{2}), Elem{2});
    EXPECT_EQ(code_of([&] { f->inv(Elem{0}); }), ErrorCode::DivisionByZero);
    EXPECT_EQ(code_of([&] { f->div(Elem{1}, Elem{0}); }), ErrorCode::DivisionByZero);
    EXPECT_EQ(f->from_int(-1), Elem{2});

    auto g = f9();
    const Elem x = g->from_coeffs(std::vector<int>{0, 1});
    EXPECT_EQ(x.index, 3u);
    EXPECT_EQ(g->mul(x, x), g->from_int(2));
    EXPECT_EQ(g->to_string(x), "(0,1)");
}

TEST(Field, TraceExamples) {
    auto f = Field::prime(3);
    EXPECT_EQ(f->trace(Elem{2}), 2);
    EXPECT_EQ(f->trace(Elem{0}), 0);
    auto g = f9();
    EXPECT_EQ(g->trace(g->from_coeffs(std::vector<int>{0, 1})), 0);
    EXPECT_EQ(g->trace(g->one()), 2);  // 1 + 1
}

TEST(Field, Enumeration) {
    auto f = Field::prime(5);
    auto els = f->elements();
    ASSERT_EQ(els.size(), 5u);
    for (std::uint32_t i = 0; i < 5; ++i) EXPECT_EQ(els[i].index, i);
    auto g = f9()->elements();
    EXPECT_EQ(std::set<Elem>(g.begin(), g.end()).size(), 9u);
    EXPECT_TRUE(g.front().is_zero());
    EXPECT_EQ(code_of([] { f9()->from_index(9); }), ErrorCode::OutOfRange);
}

// Exhaustive axioms, Fermat and trace linearity/surjectivity for small q.
TEST(Field, AxiomsExhaustive) {
    for (const auto& fp : small_fields()) {
        const Field& f = *fp;
        if (f.order() > 27) continue;
        std::set<int> trace_image;
        for (Elem a : f.elements()) {
            EXPECT_EQ(f.pow(a, f.order()), a) << f.spec_string();
            EXPECT_EQ(f.add(a, f.neg(a)), f.zero());
            trace_image.insert(f.trace(a));
            if (!a.is_zero()) {
                EXPECT_EQ(f.mul(a, f.inv(a)), f.one());
            }
            for (Elem b : f.elements()) {
                EXPECT_EQ(f.add(a, b), f.add(b, a));
                EXPECT_EQ(f.mul(a, b), f.mul(b, a));
                EXPECT_EQ(f.trace(f.add(a, b)), (f.trace(a) + f.trace(b)) % f.characteristic());
                for (Elem c : f.elements()) {
                    EXPECT_EQ(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    EXPECT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
            // F_p-linearity: Tr(c a) = c Tr(a) for c in the prime field
            for (int c = 0; c < f.characteristic(); ++c)
                EXPECT_EQ(f.trace(f.mul(f.from_int(c), a)), (c * f.trace(a)) % f.characteristic());
        }
        EXPECT_EQ(trace_image.size(), static_cast<std::size_t>(f.characteristic())) << f.spec_string();
    }
}

// Table-driven and on-the-fly arithmetic must agree: F_{3^7} has no tables.
TEST(Field, LargeFieldWithoutTables) {
    auto big = Field::make(3, 7, {1, 0, 2, 0, 0, 0, 0, 1});  // x^7 + 2x^2 + 1
    const Elem a = big->from_index(1234);
    const Elem b = big->from_index(999);
    EXPECT_EQ(big->mul(a, big->inv(a)), big->one());
    EXPECT_EQ(big->pow(a, big->order()), a);
    EXPECT_EQ(big->mul(big->add(a, b), big->sub(a, b)), big->sub(big->mul(a, a), big->mul(b, b)));
    EXPECT_EQ(big->trace(big->add(a, b)), (big->trace(a) + big->trace(b)) % 3);
}

TEST(Field, ParseElements) {
    auto f = Field::prime(3);
    auto v = parse_elements(*f, "1,-1,0,2");
    ASSERT_EQ(v.size(), 4u);
    EXPECT_EQ(v[1], Elem{2});
    EXPECT_EQ(code_of([&] { parse_elements(*f, "3"); }), ErrorCode::OutOfRange);
}
