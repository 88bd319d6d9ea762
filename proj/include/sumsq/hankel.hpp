#pragma once

// Square and rectangular Hankel matrices over F_q, their strict (rho, pi)
// characteristic, and the reduced (rho, pi)-form obtained by recursive
// congruence elimination.
//
// A reduced form is block diagonal, top-left to bottom-right:
//
//     H_t, ..., H_2, H_1'' (zero), H_1'
//
// where every H_i and H_1' is a non-strict lower skew-triangular Hankel block
// (zero above the main skew-diagonal, lambda != 0 on it). The partition
// (p1', p1'', p2, ..., pt) lists the block sizes starting from the bottom-right.

#include "sumsq/bigint.hpp"
#include "sumsq/field.hpp"
#include "sumsq/matrix.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sumsq {

class HankelMatrix {
public:
    /// rows x cols matrix whose (i, j) entry (0-based) is seq[i + j].
    HankelMatrix(FieldPtr field, std::vector<Elem> seq, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), seq_(std::move(seq)) {
        if (rows == 0 || cols == 0 || seq_.size() != rows + cols - 1)
            throw Error(ErrorCode::LengthMismatch, "Hankel sequence length must equal rows + cols - 1");
    }

    /// Square n x n matrix from a length 2n-1 sequence.
    static HankelMatrix square(FieldPtr field, std::vector<Elem> seq) {
        if (seq.empty() || seq.size() % 2 == 0)
            throw Error(ErrorCode::LengthMismatch, "square Hankel sequence must have odd length");
        const std::size_t n = (seq.size() + 1) / 2;
        return HankelMatrix(std::move(field), std::move(seq), n, n);
    }

    /// H_{l,m}(alpha): the l x m Hankel matrix on the prefix alpha_0..alpha_{l+m-2}.
    static HankelMatrix from_prefix(FieldPtr field, const std::vector<Elem>& alpha, std::size_t l, std::size_t m) {
        if (l + m - 1 > alpha.size()) throw Error(ErrorCode::OutOfRange, "sequence too short for requested Hankel size");
        return HankelMatrix(std::move(field), std::vector<Elem>(alpha.begin(), alpha.begin() + static_cast<std::ptrdiff_t>(l + m - 1)), l, m);
    }

    const Field& field() const noexcept { return *field_; }
    const FieldPtr& field_ptr() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    const std::vector<Elem>& seq() const noexcept { return seq_; }

    Elem entry(std::size_t i, std::size_t j) const noexcept { return seq_[i + j]; }

    Matrix dense() const {
        Matrix m(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(i, j) = seq_[i + j];
        return m;
    }

    /// H[l; m], itself a Hankel matrix on the sequence prefix.
    HankelMatrix leading(std::size_t l, std::size_t m) const {
        if (l == 0 || m == 0 || l > rows_ || m > cols_) throw Error(ErrorCode::OutOfRange, "leading block out of range");
        return from_prefix(field_, seq_, l, m);
    }

    HankelMatrix negated() const {
        std::vector<Elem> s;
        s.reserve(seq_.size());
        for (Elem e : seq_) s.push_back(field_->neg(e));
        return HankelMatrix(field_, std::move(s), rows_, cols_);
    }

    HankelMatrix scaled(Elem c) const {
        std::vector<Elem> s;
        s.reserve(seq_.size());
        for (Elem e : seq_) s.push_back(field_->mul(c, e));
        return HankelMatrix(field_, std::move(s), rows_, cols_);
    }

    friend bool operator==(const HankelMatrix& a, const HankelMatrix& b) noexcept {
        return *a.field_ == *b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.seq_ == b.seq_;
    }

private:
    FieldPtr field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Elem> seq_;
};

inline HankelMatrix hankel_from_seq(FieldPtr field, std::vector<Elem> seq, std::size_t rows, std::size_t cols) {
    return HankelMatrix(std::move(field), std::move(seq), rows, cols);
}

/// M[l1,-l2; m1,-m2] as a dense view.
inline Matrix submatrix(const HankelMatrix& h, std::size_t l1, std::size_t l2, std::size_t m1, std::size_t m2) {
    return submatrix(h.dense(), l1, l2, m1, m2);
}

inline std::size_t rank(const HankelMatrix& h) { return rank(h.field(), h.dense()); }

struct RhoPi {
    std::size_t rho = 0;
    std::size_t pi = 0;
    friend bool operator==(const RhoPi&, const RhoPi&) = default;
};

/// rho_s = largest r in {1, ..., n-1} with H[r, r] invertible (0 if none);
/// pi_s = rank(H) - rho_s.
inline RhoPi strict_rho_pi(const HankelMatrix& h) {
    if (!h.is_square()) throw Error(ErrorCode::LengthMismatch, "strict (rho, pi) needs a square matrix");
    const std::size_t n = h.rows();
    std::size_t rho = 0;
    for (std::size_t r = n - 1; r >= 1; --r) {
        if (invertible(h.field(), h.leading(r, r).dense())) {
            rho = r;
            break;
        }
    }
    return RhoPi{rho, rank(h) - rho};
}

/// Non-strict lower skew-triangular Hankel block of size l: underlying sequence
/// (0, ..., 0, lambda, beta_2, ..., beta_l) with l-1 leading zeros.
struct TriangularBlock {
    std::size_t size = 0;
    Elem lambda{};
    std::vector<Elem> belly;  // beta_2 .. beta_l

    std::vector<Elem> sequence() const {
        std::vector<Elem> s(size - 1, Elem{0});
        s.push_back(lambda);
        s.insert(s.end(), belly.begin(), belly.end());
        return s;
    }

    Matrix render() const {
        Matrix m(size, size);
        const auto s = sequence();
        for (std::size_t i = 0; i < size; ++i)
            for (std::size_t j = 0; j < size; ++j) m(i, j) = s[i + j];
        return m;
    }

    friend bool operator==(const TriangularBlock&, const TriangularBlock&) = default;
    friend auto operator<=>(const TriangularBlock&, const TriangularBlock&) = default;
};

/// True iff `m` is an l x l Hankel matrix that is zero strictly above the main
/// skew-diagonal and nonzero on it.
inline bool is_lower_skew_triangular(const Matrix& m) {
    if (!m.is_square() || m.rows == 0) return false;
    const std::size_t l = m.rows;
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < l; ++j) {
            if (i + j + 1 < l && !m(i, j).is_zero()) return false;
            if (i + j + 1 == l && m(i, j).is_zero()) return false;
            if (i > 0 && j + 1 < l && m(i, j) != m(i - 1, j + 1)) return false;
        }
    return true;
}

/// Reads a block back from a rendered lower skew-triangular matrix (its last row).
inline TriangularBlock block_from_dense(const Matrix& m) {
    if (!is_lower_skew_triangular(m)) throw std::logic_error("block is not non-strict lower skew-triangular Hankel");
    TriangularBlock b;
    b.size = m.rows;
    b.lambda = m(m.rows - 1, 0);
    for (std::size_t j = 1; j < m.cols; ++j) b.belly.push_back(m(m.rows - 1, j));
    return b;
}

struct RhoPiPartition {
    std::size_t p1_prime = 0;
    std::size_t p1_dblprime = 0;
    std::vector<std::size_t> tail;  // p2, ..., pt

    /// Number of parts after (p1', p1''), plus one: the t of (p1', p1'', p2, ..., pt).
    std::size_t t() const noexcept { return tail.size() + 1; }
    /// Number of non-empty skew-triangular blocks (H_1' counts iff p1' >= 1).
    std::size_t triangular_blocks() const noexcept { return tail.size() + (p1_prime >= 1 ? 1 : 0); }
    std::size_t rho_s() const noexcept {
        std::size_t s = 0;
        for (auto p : tail) s += p;
        return s;
    }
    std::size_t pi_s() const noexcept { return p1_prime; }
    std::size_t rank() const noexcept { return p1_prime + rho_s(); }
    std::size_t size() const noexcept { return p1_prime + p1_dblprime + rho_s(); }

    void validate() const {
        if (p1_prime + p1_dblprime < 1) throw Error(ErrorCode::InvalidPartition, "p1' + p1'' must be >= 1");
        for (auto p : tail)
            if (p < 1) throw Error(ErrorCode::InvalidPartition, "tail parts must be >= 1");
    }

    std::string to_string() const {
        std::string s = "(" + std::to_string(p1_prime) + "," + std::to_string(p1_dblprime);
        for (auto p : tail) s += "," + std::to_string(p);
        return s + ")";
    }

    friend bool operator==(const RhoPiPartition&, const RhoPiPartition&) = default;
    friend auto operator<=>(const RhoPiPartition&, const RhoPiPartition&) = default;
};

class ReducedForm {
public:
    /// `blocks` lists H_t, ..., H_2 (top-left first).
    ReducedForm(std::vector<TriangularBlock> blocks, std::size_t zero_block_size, std::optional<TriangularBlock> final_block)
        : blocks_(std::move(blocks)), zero_size_(zero_block_size), final_(std::move(final_block)) {
        if (zero_size_ == 0 && !final_) throw Error(ErrorCode::InvalidPartition, "H_1' and H_1'' cannot both be empty");
    }

    const std::vector<TriangularBlock>& blocks() const noexcept { return blocks_; }
    std::size_t zero_block_size() const noexcept { return zero_size_; }
    const std::optional<TriangularBlock>& final_block() const noexcept { return final_; }

    std::size_t size() const noexcept {
        std::size_t n = zero_size_ + (final_ ? final_->size : 0);
        for (const auto& b : blocks_) n += b.size;
        return n;
    }

    RhoPiPartition partition() const {
        RhoPiPartition p;
        p.p1_prime = final_ ? final_->size : 0;
        p.p1_dblprime = zero_size_;
        for (auto it = blocks_.rbegin(); it != blocks_.rend(); ++it) p.tail.push_back(it->size);
        return p;
    }

    Matrix render() const {
        const std::size_t n = size();
        Matrix m(n, n);
        std::size_t off = 0;
        auto place = [&](const TriangularBlock& b) {
            const Matrix r = b.render();
            for (std::size_t i = 0; i < b.size; ++i)
                for (std::size_t j = 0; j < b.size; ++j) m(off + i, off + j) = r(i, j);
            off += b.size;
        };
        for (const auto& b : blocks_) place(b);
        off += zero_size_;
        if (final_) place(*final_);
        return m;
    }

    friend bool operator==(const ReducedForm&, const ReducedForm&) = default;
    friend auto operator<=>(const ReducedForm&, const ReducedForm&) = default;

private:
    std::vector<TriangularBlock> blocks_;
    std::size_t zero_size_;
    std::optional<TriangularBlock> final_;
};

/// Decomposition of a square dense matrix that is block diagonal as
/// (zero block of size z) + (lower skew-triangular block of size l), z + l = size.
inline std::pair<std::size_t, std::optional<TriangularBlock>> split_zero_and_triangle(const Matrix& m, std::size_t tri_size) {
    const std::size_t n = m.rows;
    const std::size_t z = n - tri_size;
    std::optional<TriangularBlock> tri;
    if (tri_size > 0) tri = block_from_dense(submatrix(m, 0, tri_size, 0, tri_size));
    Matrix expect(n, n);
    if (tri) {
        const Matrix r = tri->render();
        for (std::size_t i = 0; i < tri_size; ++i)
            for (std::size_t j = 0; j < tri_size; ++j) expect(z + i, z + j) = r(i, j);
    }
    if (expect != m) throw std::logic_error("matrix is not (zero block) + (skew-triangular block)");
    return {z, tri};
}

struct Stage1Result {
    std::size_t rho = 0;
    std::size_t pi = 0;
    std::vector<Elem> x;                     // solution of H[rho,rho] x = (alpha_rho .. alpha_{2rho-1})
    std::size_t zero_block_size = 0;         // p1''
    std::optional<TriangularBlock> final_block;  // H_1'
    Matrix transform;                        // L with L H L^T = red_1(H)
    Matrix rendered;                         // red_1(H)
};

/// First elimination stage. When rho_s(H) = 0 the result is H itself with an
/// identity transform.
inline Stage1Result stage1_reduce(const HankelMatrix& h) {
    const Field& f = h.field();
    const std::size_t n = h.rows();
    const auto [rho, pi] = strict_rho_pi(h);
    Stage1Result out;
    out.rho = rho;
    out.pi = pi;
    const Matrix dense = h.dense();
    if (rho == 0) {
        out.transform = Matrix::identity(n);
        out.rendered = dense;
        auto [z, tri] = split_zero_and_triangle(dense, pi);
        out.zero_block_size = z;
        out.final_block = std::move(tri);
        return out;
    }
    std::vector<Elem> rhs(h.seq().begin() + static_cast<std::ptrdiff_t>(rho),
                          h.seq().begin() + static_cast<std::ptrdiff_t>(2 * rho));
    auto x = solve(f, h.leading(rho, rho).dense(), std::move(rhs));
    if (!x) throw std::logic_error("leading rho_s block is singular");
    out.x = *x;

    // R_i <- R_i - x_0 R_{i-rho} - ... - x_{rho-1} R_{i-1}, i = n..rho+1, and the same on columns.
    Matrix l = Matrix::identity(n);
    for (std::size_t i = rho; i < n; ++i)
        for (std::size_t j = 0; j < rho; ++j) l(i, i - rho + j) = f.neg(out.x[j]);
    out.transform = l;
    out.rendered = congruence(f, l, dense);

    const Matrix& red = out.rendered;
    for (std::size_t i = 0; i < rho; ++i)
        for (std::size_t j = rho; j < n; ++j)
            if (!red(i, j).is_zero() || !red(j, i).is_zero())
                throw std::logic_error("stage 1 elimination left off-diagonal entries");
    auto [z, tri] = split_zero_and_triangle(submatrix(red, 0, n - rho, 0, n - rho), pi);
    out.zero_block_size = z;
    out.final_block = std::move(tri);
    return out;
}

struct Reduction {
    ReducedForm form;
    Matrix transform;  // P with P H P^T = render(form)
};

namespace detail {

inline Matrix embed_top_left(const Matrix& small, std::size_t n) {
    Matrix m = Matrix::identity(n);
    for (std::size_t i = 0; i < small.rows; ++i)
        for (std::size_t j = 0; j < small.cols; ++j) m(i, j) = small(i, j);
    return m;
}

}  // namespace detail

/// red(H) together with the accumulated congruence transform.
inline Reduction reduce_with_certificate(const HankelMatrix& h) {
    if (!h.is_square()) throw Error(ErrorCode::LengthMismatch, "reduction needs a square matrix");
    Stage1Result s1 = stage1_reduce(h);
    if (s1.rho == 0)
        return Reduction{ReducedForm({}, s1.zero_block_size, std::move(s1.final_block)), std::move(s1.transform)};

    Reduction inner = reduce_with_certificate(h.leading(s1.rho, s1.rho));
    // The leading block is invertible, so its own reduction has no zero block and
    // its H_1' becomes our H_2.
    if (inner.form.zero_block_size() != 0 || !inner.form.final_block())
        throw std::logic_error("invertible leading block reduced to a singular form");
    std::vector<TriangularBlock> blocks = inner.form.blocks();
    blocks.push_back(*inner.form.final_block());
    const Field& f = h.field();
    Matrix p = multiply(f, detail::embed_top_left(inner.transform, h.rows()), s1.transform);
    return Reduction{ReducedForm(std::move(blocks), s1.zero_block_size, std::move(s1.final_block)), std::move(p)};
}

inline ReducedForm reduce(const HankelMatrix& h) { return reduce_with_certificate(h).form; }

inline RhoPiPartition partition(const HankelMatrix& h) { return reduce(h).partition(); }

/// Visits every n x n Hankel matrix whose first h skew-diagonals vanish,
/// optionally restricted to rank r. Sequences are visited in ascending base-q
/// order of (alpha_h, ..., alpha_{2n-2}) with alpha_h varying fastest.
template <typename Fn>
void for_each_hankel(const FieldPtr& field, std::size_t n, std::size_t h, std::optional<std::size_t> r, Fn&& fn) {
    if (n == 0 || h > 2 * n - 1) throw Error(ErrorCode::BadParameters, "need n >= 1 and 0 <= h <= 2n-1");
    const std::size_t len = 2 * n - 1;
    std::vector<Elem> seq(len, field->zero());
    const std::uint32_t q = field->order();
    while (true) {
        HankelMatrix hm(field, seq, n, n);
        if (!r || rank(hm) == *r) fn(static_cast<const HankelMatrix&>(hm));
        std::size_t i = h;
        while (i < len) {
            if (++seq[i].index < q) break;
            seq[i].index = 0;
            ++i;
        }
        if (i == len) return;
    }
}

inline std::vector<HankelMatrix> enumerate_hankel(const FieldPtr& field, std::size_t n, std::size_t h,
                                                  std::optional<std::size_t> r = std::nullopt) {
    std::vector<HankelMatrix> out;
    for_each_hankel(field, n, h, r, [&](const HankelMatrix& m) { out.push_back(m); });
    return out;
}

enum class CountMode { Closed, Enumerate };

/// |S_red(P)|: closed form (q-1)^t q^{r-t} with t the number of non-empty
/// skew-triangular blocks, or an explicit enumeration of rendered reduced matrices.
inline BigInt count_reduced_with_partition(const RhoPiPartition& part, const FieldPtr& field, CountMode mode) {
    part.validate();
    const std::int64_t q = field->order();
    if (mode == CountMode::Closed) {
        const auto t = static_cast<std::int64_t>(part.triangular_blocks());
        const auto r = static_cast<std::int64_t>(part.rank());
        return ipow(q - 1, t) * ipow(q, r - t);
    }

    // Block sizes in render order: H_t..H_2, then H_1'.
    std::vector<std::size_t> sizes(part.tail.rbegin(), part.tail.rend());
    if (part.p1_prime) sizes.push_back(part.p1_prime);

    // Candidate blocks of each size: every l x l Hankel matrix passing the shape predicate.
    std::map<std::size_t, std::vector<TriangularBlock>> candidates;
    for (auto l : sizes) {
        if (candidates.count(l)) continue;
        auto& list = candidates[l];
        for_each_hankel(field, l, 0, std::nullopt, [&](const HankelMatrix& m) {
            const Matrix d = m.dense();
            if (is_lower_skew_triangular(d)) list.push_back(block_from_dense(d));
        });
    }

    std::set<Matrix> seen;
    std::vector<std::size_t> pick(sizes.size(), 0);
    while (true) {
        std::vector<TriangularBlock> blocks;
        for (std::size_t i = 0; i < part.tail.size(); ++i) blocks.push_back(candidates[sizes[i]][pick[i]]);
        std::optional<TriangularBlock> fin;
        if (part.p1_prime) fin = candidates[sizes.back()][pick.back()];
        ReducedForm form(std::move(blocks), part.p1_dblprime, std::move(fin));
        if (form.partition() == part) seen.insert(form.render());
        std::size_t i = 0;
        while (i < sizes.size()) {
            if (++pick[i] < candidates[sizes[i]].size()) break;
            pick[i] = 0;
            ++i;
        }
        if (i == sizes.size()) break;
    }
    return BigInt(seen.size());
}

/// |S_hank(M)|: closed form q^{t-1}, or a scan of all q^{2n-1} Hankel matrices.
inline BigInt count_hankel_with_reduced(const ReducedForm& form, const FieldPtr& field, CountMode mode) {
    if (mode == CountMode::Closed) return ipow(field->order(), static_cast<std::int64_t>(form.partition().t()) - 1);
    BigInt count = 0;
    for_each_hankel(field, form.size(), 0, std::nullopt, [&](const HankelMatrix& h) {
        if (reduce(h) == form) ++count;
    });
    return count;
}

}  // namespace sumsq
