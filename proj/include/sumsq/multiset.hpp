#pragma once

// Multisets over F_q as dense multiplicity vectors, with the union (pointwise
// addition of multiplicities) and sumset (additive convolution) operations, the
// named multisets F_q, T_q, Z_q(n), S_q(lambda), and the value distributions of
// quadratic forms v^T M v.

#include "sumsq/bigint.hpp"
#include "sumsq/field.hpp"
#include "sumsq/hankel.hpp"
#include "sumsq/matrix.hpp"
#include "sumsq/poly.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace sumsq {

class MultisetFq {
public:
    /// The empty multiset.
    explicit MultisetFq(FieldPtr field) : field_(std::move(field)), counts_(field_->order(), BigInt(0)) {}

    MultisetFq(FieldPtr field, std::vector<BigInt> counts) : field_(std::move(field)), counts_(std::move(counts)) {
        if (counts_.size() != field_->order()) throw Error(ErrorCode::LengthMismatch, "multiset needs q counts");
        for (const auto& c : counts_)
            if (c < 0) throw Error(ErrorCode::BadParameters, "negative multiplicity");
    }

    const Field& field() const noexcept { return *field_; }
    const FieldPtr& field_ptr() const noexcept { return field_; }
    const std::vector<BigInt>& counts() const noexcept { return counts_; }

    /// m_A(a)
    const BigInt& multiplicity(Elem a) const { return counts_.at(a.index); }

    void add(Elem a, const BigInt& times = 1) { counts_.at(a.index) += times; }

    BigInt total() const {
        BigInt t = 0;
        for (const auto& c : counts_) t += c;
        return t;
    }

    bool empty() const { return total() == 0; }

    /// [c a : a in A]
    MultisetFq scaled(Elem c) const {
        MultisetFq out(field_);
        for (std::uint32_t i = 0; i < counts_.size(); ++i)
            if (counts_[i] != 0) out.counts_[field_->mul(c, Elem{i}).index] += counts_[i];
        return out;
    }

    std::string to_string() const {
        std::string s = "{";
        bool first = true;
        for (std::uint32_t i = 0; i < counts_.size(); ++i) {
            if (counts_[i] == 0) continue;
            if (!first) s += ", ";
            first = false;
            s += field_->to_string(Elem{i}) + ":" + counts_[i].str();
        }
        return s + "}";
    }

    friend bool operator==(const MultisetFq& a, const MultisetFq& b) {
        return *a.field_ == *b.field_ && a.counts_ == b.counts_;
    }

private:
    FieldPtr field_;
    std::vector<BigInt> counts_;
};

/// A u B: multiplicities add.
inline MultisetFq ms_union(const MultisetFq& a, const MultisetFq& b) {
    require_same_field(a.field(), b.field());
    std::vector<BigInt> out(a.counts());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b.counts()[i];
    return MultisetFq(a.field_ptr(), std::move(out));
}

/// A + B: m_{A+B}(c) = sum_{a+b=c} m_A(a) m_B(b).
inline MultisetFq ms_sumset(const MultisetFq& a, const MultisetFq& b) {
    require_same_field(a.field(), b.field());
    const Field& f = a.field();
    std::vector<BigInt> out(f.order(), BigInt(0));
    for (std::uint32_t i = 0; i < f.order(); ++i) {
        if (a.counts()[i] == 0) continue;
        for (std::uint32_t j = 0; j < f.order(); ++j) {
            if (b.counts()[j] == 0) continue;
            out[f.add(Elem{i}, Elem{j}).index] += a.counts()[i] * b.counts()[j];
        }
    }
    return MultisetFq(a.field_ptr(), std::move(out));
}

/// [a]
inline MultisetFq ms_singleton(const FieldPtr& field, Elem a) {
    MultisetFq m(field);
    m.add(a);
    return m;
}

/// nA = A + ... + A, with 0A = [0].
inline MultisetFq ms_nfold(const MultisetFq& a, std::uint64_t n) {
    MultisetFq result = ms_singleton(a.field_ptr(), a.field().zero());
    MultisetFq base = a;
    while (n > 0) {
        if (n & 1) result = ms_sumset(result, base);
        n >>= 1;
        if (n) base = ms_sumset(base, base);
    }
    return result;
}

/// F_q: every element once.
inline MultisetFq ms_uniform(const FieldPtr& field) {
    return MultisetFq(field, std::vector<BigInt>(field->order(), BigInt(1)));
}

/// T_q: 0 with multiplicity 2q-1, every nonzero element with multiplicity q-1.
inline MultisetFq ms_tq(const FieldPtr& field) {
    const std::int64_t q = field->order();
    std::vector<BigInt> c(static_cast<std::size_t>(q), BigInt(q - 1));
    c[0] = 2 * q - 1;
    return MultisetFq(field, std::move(c));
}

/// Z_q(n): zero with multiplicity n.
inline MultisetFq ms_zeros(const FieldPtr& field, const BigInt& n) {
    MultisetFq m(field);
    m.add(field->zero(), n);
    return m;
}

/// S_q(lambda) = [lambda a^2 : a in F_q].
inline MultisetFq ms_scaled_squares(const FieldPtr& field, Elem lambda) {
    MultisetFq m(field);
    for (Elem a : field->elements()) m.add(field->mul(lambda, field->mul(a, a)));
    return m;
}

enum class NamedMultiset { Fq, Tq, Zq, Sq };

/// `param` is n for Z_q(n) and the element index of lambda for S_q(lambda).
inline MultisetFq ms_named(const FieldPtr& field, NamedMultiset which, std::uint64_t param = 0) {
    switch (which) {
        case NamedMultiset::Fq: return ms_uniform(field);
        case NamedMultiset::Tq: return ms_tq(field);
        case NamedMultiset::Zq:
            if (param < 1) throw Error(ErrorCode::BadParameters, "Z_q(n) needs n >= 1");
            return ms_zeros(field, BigInt(param));
        case NamedMultiset::Sq: return ms_scaled_squares(field, field->from_index(param));
    }
    throw Error(ErrorCode::BadParameters, "unknown named multiset");
}

enum class QuadMode {
    Full,   // B(M): v over F_q^n
    Monic,  // B_M(M): v over F_q^{n-1} x {1}
    Last1,  // B_1(M): v with last nonzero entry 1
};

/// Multiset of v^T M v by direct enumeration. Last1 mode uses the union of
/// B_M over the leading i x i blocks, i = 1..n.
inline MultisetFq values_quadform(const FieldPtr& field, const Matrix& m, QuadMode mode) {
    if (!m.is_square() || m.rows == 0) throw Error(ErrorCode::LengthMismatch, "quadratic form needs a square matrix");
    const Field& f = *field;
    const std::size_t n = m.rows;
    std::vector<std::uint64_t> counts(f.order(), 0);
    auto tally_monic = [&](const Matrix& mm) {
        const std::size_t k = mm.rows;
        for_each_vector(f, k - 1, [&](const std::vector<Elem>& head) {
            std::vector<Elem> v = head;
            v.push_back(f.one());
            ++counts[quadratic_form(f, mm, v).index];
        });
    };
    switch (mode) {
        case QuadMode::Full:
            for_each_vector(f, n, [&](const std::vector<Elem>& v) { ++counts[quadratic_form(f, m, v).index]; });
            break;
        case QuadMode::Monic: tally_monic(m); break;
        case QuadMode::Last1:
            for (std::size_t i = 1; i <= n; ++i) tally_monic(submatrix(m, i, 0, i, 0));
            break;
    }
    std::vector<BigInt> out(counts.begin(), counts.end());
    return MultisetFq(field, std::move(out));
}

inline MultisetFq values_quadform(const HankelMatrix& h, QuadMode mode) {
    return values_quadform(h.field_ptr(), h.dense(), mode);
}

/// Value multiset of an l x l non-strict lower skew-triangular Hankel matrix with
/// skew-diagonal lambda, from the closed forms (Full or Monic mode only).
inline MultisetFq values_closed_triangular(const FieldPtr& field, std::size_t l, Elem lambda, QuadMode mode) {
    if (l < 1) throw Error(ErrorCode::BadParameters, "block size must be >= 1");
    if (lambda.is_zero()) throw Error(ErrorCode::BadParameters, "lambda must be nonzero");
    const MultisetFq tq = ms_tq(field);
    switch (mode) {
        case QuadMode::Full:
            if (l % 2 == 0) return ms_nfold(tq, l / 2);
            return ms_sumset(ms_nfold(tq, (l - 1) / 2), ms_scaled_squares(field, lambda));
        case QuadMode::Monic:
            if (l == 1) return ms_singleton(field, lambda);
            if (l % 2 == 0) return ms_sumset(ms_uniform(field), ms_nfold(tq, (l - 2) / 2));
            return ms_sumset(ms_sumset(ms_uniform(field), ms_nfold(tq, (l - 3) / 2)), ms_scaled_squares(field, lambda));
        case QuadMode::Last1: break;
    }
    throw Error(ErrorCode::BadParameters, "closed triangular form exists for Full and Monic modes only");
}

/// B_M of a reduced form, assembled from its partition data:
/// ((p2+...+pt) - s)/2 T_q + S_q(lambda_{i_1}) + ... + S_q(lambda_{i_s}) + G.
inline MultisetFq values_closed_reduced(const FieldPtr& field, const ReducedForm& form) {
    const RhoPiPartition part = form.partition();
    std::size_t odd = 0;
    MultisetFq squares = ms_singleton(field, field->zero());
    for (const auto& b : form.blocks()) {
        if (b.size % 2 == 1) {
            ++odd;
            squares = ms_sumset(squares, ms_scaled_squares(field, b.lambda));
        }
    }
    const std::size_t rho = part.rho_s();
    MultisetFq acc = ms_sumset(ms_nfold(ms_tq(field), (rho - odd) / 2), squares);

    const std::int64_t q = field->order();
    const std::size_t p1 = part.p1_prime;
    const auto p2 = static_cast<std::int64_t>(part.p1_dblprime);
    MultisetFq g(field);
    if (p1 == 0) {
        g = ms_zeros(field, ipow(q, p2 - 1));
    } else if (p1 == 1) {
        g = ms_sumset(ms_zeros(field, ipow(q, p2)), ms_singleton(field, form.final_block()->lambda));
    } else {
        g = ms_sumset(ms_zeros(field, ipow(q, p2)), values_closed_triangular(field, p1, form.final_block()->lambda, QuadMode::Monic));
    }
    return ms_sumset(acc, g);
}

inline MultisetFq values_closed_hankel(const HankelMatrix& h) { return values_closed_reduced(h.field_ptr(), reduce(h)); }

}  // namespace sumsq
