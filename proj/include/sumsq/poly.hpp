#pragma once

#include "sumsq/field.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace sumsq {

/// Polynomial over F_q with little-endian coefficients (index = power of T).
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
class FqPoly {
public:
    /// deg 0 = -infinity.
    static constexpr int kDegZero = std::numeric_limits<int>::min();

    explicit FqPoly(FieldPtr field) : field_(std::move(field)) {}

    FqPoly(FieldPtr field, std::vector<Elem> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
        trim();
    }

    static FqPoly monomial(FieldPtr field, int power, Elem c) {
        std::vector<Elem> cs(static_cast<std::size_t>(power) + 1, field->zero());
        cs.back() = c;
        return FqPoly(std::move(field), std::move(cs));
    }

    const Field& field() const noexcept { return *field_; }
    const FieldPtr& field_ptr() const noexcept { return field_; }
    const std::vector<Elem>& coeffs() const noexcept { return coeffs_; }

    bool is_zero() const noexcept { return coeffs_.empty(); }
    int degree() const noexcept { return is_zero() ? kDegZero : static_cast<int>(coeffs_.size()) - 1; }
    bool is_monic() const noexcept { return !is_zero() && coeffs_.back() == field_->one(); }

    /// {C}_i: the coefficient of T^i, zero beyond the degree.
    Elem coefficient(std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : field_->zero(); }

    FqPoly operator+(const FqPoly& rhs) const { return combine(rhs, false); }
    FqPoly operator-(const FqPoly& rhs) const { return combine(rhs, true); }

    FqPoly operator-() const {
        std::vector<Elem> out;
        out.reserve(coeffs_.size());
        for (Elem c : coeffs_) out.push_back(field_->neg(c));
        return FqPoly(field_, std::move(out));
    }

    FqPoly operator*(const FqPoly& rhs) const {
        require_same_field(*field_, *rhs.field_);
        if (is_zero() || rhs.is_zero()) return FqPoly(field_);
        const Field& f = *field_;
        std::vector<Elem> out(coeffs_.size() + rhs.coeffs_.size() - 1, f.zero());
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i].is_zero()) continue;
            for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j)
                out[i + j] = f.add(out[i + j], f.mul(coeffs_[i], rhs.coeffs_[j]));
        }
        return FqPoly(field_, std::move(out));
    }

    FqPoly scaled(Elem c) const {
        std::vector<Elem> out;
        out.reserve(coeffs_.size());
        for (Elem x : coeffs_) out.push_back(field_->mul(c, x));
        return FqPoly(field_, std::move(out));
    }

    friend bool operator==(const FqPoly& a, const FqPoly& b) noexcept {
        return *a.field_ == *b.field_ && a.coeffs_ == b.coeffs_;
    }

    /// Comma-separated coefficients low-to-high; the zero polynomial prints as "0".
    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(coeffs_[i].index);
        }
        return s;
    }

private:
    FqPoly combine(const FqPoly& rhs, bool subtract) const {
        require_same_field(*field_, *rhs.field_);
        const Field& f = *field_;
        std::vector<Elem> out(std::max(coeffs_.size(), rhs.coeffs_.size()), f.zero());
        for (std::size_t i = 0; i < out.size(); ++i) {
            Elem b = rhs.coefficient(i);
            out[i] = subtract ? f.sub(coefficient(i), b) : f.add(coefficient(i), b);
        }
        return FqPoly(field_, std::move(out));
    }

    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    FieldPtr field_;
    std::vector<Elem> coeffs_;
};

inline FqPoly parse_poly(const FieldPtr& field, std::string_view text) {
    return FqPoly(field, parse_elements(*field, text));
}

/// B lies in I(A;h) iff deg(B - A) < h.
inline bool in_interval(const FqPoly& b, const FqPoly& a, int h) {
    if (h < 0) throw Error(ErrorCode::BadParameters, "interval radius must be >= 0");
    const FqPoly diff = b - a;
    return diff.is_zero() || diff.degree() < h;
}

/// Calls fn(low) for every coefficient vector of length `len` over F_q, in
/// ascending base-q order with low[0] varying fastest.
template <typename Fn>
void for_each_vector(const Field& f, std::size_t len, Fn&& fn) {
    std::vector<Elem> v(len, f.zero());
    const std::uint32_t q = f.order();
    while (true) {
        fn(static_cast<const std::vector<Elem>&>(v));
        std::size_t i = 0;
        while (i < len) {
            if (++v[i].index < q) break;
            v[i].index = 0;
            ++i;
        }
        if (i == len) return;
    }
}

/// Visits all q^n monic polynomials of degree n; the i-th visited polynomial has
/// low coefficients equal to the base-q digits of i.
template <typename Fn>
void for_each_monic(const FieldPtr& field, int n, Fn&& fn) {
    if (n < 0) throw Error(ErrorCode::BadDegree, "degree must be >= 0");
    for_each_vector(*field, static_cast<std::size_t>(n), [&](const std::vector<Elem>& low) {
        std::vector<Elem> cs = low;
        cs.push_back(field->one());
        fn(FqPoly(field, std::move(cs)));
    });
}

inline std::vector<FqPoly> enumerate_monic(const FieldPtr& field, int n) {
    std::vector<FqPoly> out;
    for_each_monic(field, n, [&](FqPoly p) { out.push_back(std::move(p)); });
    return out;
}

/// All B with deg(B - A) < h, generated by varying the h low coefficients of A.
inline std::vector<FqPoly> interval(const FqPoly& a, int h) {
    if (h < 0) throw Error(ErrorCode::BadParameters, "interval radius must be >= 0");
    std::vector<FqPoly> out;
    const auto& field = a.field_ptr();
    const std::size_t len = std::max<std::size_t>(a.coeffs().size(), static_cast<std::size_t>(h));
    for_each_vector(*field, static_cast<std::size_t>(h), [&](const std::vector<Elem>& low) {
        std::vector<Elem> cs(len, field->zero());
        for (std::size_t i = 0; i < len; ++i) cs[i] = i < low.size() ? low[i] : a.coefficient(i);
        out.emplace_back(field, std::move(cs));
    });
    return out;
}

}  // namespace sumsq
