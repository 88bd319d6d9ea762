#pragma once

// Finite fields F_q, q = p^k with p odd. Elements are stored as a single index
// index = c_0 + c_1 p + ... + c_{k-1} p^{k-1} over the coefficient vector of the
// polynomial basis, so ascending index order is lexicographic on the coefficient
// vector read from the highest power down (zero first, one second).

#include "sumsq/error.hpp"

#include <charconv>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sumsq {

/// An element of F_q, meaningful only together with the Field that produced it.
struct Elem {
    std::uint32_t index = 0;

    constexpr bool is_zero() const noexcept { return index == 0; }
    friend constexpr auto operator<=>(Elem, Elem) = default;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
public:
    /// Fields above this size compute arithmetic on the fly instead of via tables.
    static constexpr std::uint64_t kTableLimit = 729;
    static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 31;

    static FieldPtr make(int p, int k = 1, std::vector<int> modulus = {}) {
        return FieldPtr(new Field(p, k, std::move(modulus)));
    }

    static FieldPtr prime(int p) { return make(p, 1); }

    int characteristic() const noexcept { return p_; }
    int degree() const noexcept { return k_; }
    std::uint32_t order() const noexcept { return q_; }
    const std::vector<int>& modulus() const noexcept { return modulus_; }

    Elem zero() const noexcept { return Elem{0}; }
    Elem one() const noexcept { return Elem{1}; }

    /// Image of an integer in the prime subfield.
    Elem from_int(std::int64_t v) const noexcept {
        std::int64_t r = v % p_;
        if (r < 0) r += p_;
        return Elem{static_cast<std::uint32_t>(r)};
    }

    Elem from_index(std::uint64_t idx) const {
        if (idx >= q_) throw Error(ErrorCode::OutOfRange, "element index " + std::to_string(idx) + " >= q");
        return Elem{static_cast<std::uint32_t>(idx)};
    }

    /// Coefficients low-to-high; reduced mod p; length must not exceed k.
    Elem from_coeffs(std::span<const int> coeffs) const {
        if (static_cast<int>(coeffs.size()) > k_)
            throw Error(ErrorCode::LengthMismatch, "element has more than k coefficients");
        std::uint32_t idx = 0;
        std::uint32_t scale = 1;
        for (int c : coeffs) {
            int r = c % p_;
            if (r < 0) r += p_;
            idx += static_cast<std::uint32_t>(r) * scale;
            scale *= static_cast<std::uint32_t>(p_);
        }
        return Elem{idx};
    }

    std::vector<int> coeffs(Elem a) const {
        std::vector<int> out(static_cast<std::size_t>(k_));
        std::uint32_t v = a.index;
        for (int i = 0; i < k_; ++i) {
            out[static_cast<std::size_t>(i)] = static_cast<int>(v % static_cast<std::uint32_t>(p_));
            v /= static_cast<std::uint32_t>(p_);
        }
        return out;
    }

    Elem add(Elem a, Elem b) const noexcept {
        if (!add_table_.empty()) return Elem{add_table_[a.index * q_ + b.index]};
        return Elem{add_digits(a.index, b.index)};
    }

    Elem neg(Elem a) const noexcept {
        if (!neg_table_.empty()) return Elem{neg_table_[a.index]};
        return Elem{neg_digits(a.index)};
    }

    Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

    Elem mul(Elem a, Elem b) const noexcept {
        if (!mul_table_.empty()) return Elem{mul_table_[a.index * q_ + b.index]};
        return Elem{mul_slow(a.index, b.index)};
    }

    Elem pow(Elem a, std::uint64_t e) const noexcept {
        Elem result = one();
        while (e > 0) {
            if (e & 1) result = mul(result, a);
            a = mul(a, a);
            e >>= 1;
        }
        return result;
    }

    Elem inv(Elem a) const {
        if (a.is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
        if (!inv_table_.empty()) return Elem{inv_table_[a.index]};
        return pow(a, q_ - 2);
    }

    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    /// Absolute trace to F_p, returned as a residue in [0, p).
    int trace(Elem a) const noexcept {
        if (!trace_table_.empty()) return trace_table_[a.index];
        return trace_slow(a);
    }

    std::vector<Elem> elements() const {
        std::vector<Elem> out;
        out.reserve(q_);
        for (std::uint32_t i = 0; i < q_; ++i) out.push_back(Elem{i});
        return out;
    }

    std::string to_string(Elem a) const {
        if (k_ == 1) return std::to_string(a.index);
        std::string s = "(";
        auto cs = coeffs(a);
        for (std::size_t i = 0; i < cs.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(cs[i]);
        }
        return s + ")";
    }

    /// `p` or `p^k:c0,...,ck`.
    std::string spec_string() const {
        if (k_ == 1) return std::to_string(p_);
        std::string s = std::to_string(p_) + "^" + std::to_string(k_) + ":";
        for (std::size_t i = 0; i < modulus_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(modulus_[i]);
        }
        return s;
    }

    friend bool operator==(const Field& a, const Field& b) noexcept {
        return a.p_ == b.p_ && a.k_ == b.k_ && a.modulus_ == b.modulus_;
    }

private:
    Field(int p, int k, std::vector<int> modulus) : p_(p), k_(k), modulus_(std::move(modulus)) {
        if (p < 2) throw Error(ErrorCode::NonPrime, std::to_string(p) + " is not prime");
        if (p % 2 == 0) throw Error(ErrorCode::EvenCharacteristic, "q must be odd, got p=" + std::to_string(p));
        if (!is_prime(p)) throw Error(ErrorCode::NonPrime, std::to_string(p) + " is not prime");
        if (k < 1) throw Error(ErrorCode::BadParameters, "extension degree must be >= 1");

        std::uint64_t q = 1;
        for (int i = 0; i < k; ++i) {
            q *= static_cast<std::uint64_t>(p);
            if (q > kMaxOrder) throw Error(ErrorCode::BadParameters, "field order too large");
        }
        q_ = static_cast<std::uint32_t>(q);

        if (k == 1) {
            if (!modulus_.empty()) throw Error(ErrorCode::BadParameters, "prime fields take no modulus");
        } else {
            if (static_cast<int>(modulus_.size()) != k + 1)
                throw Error(ErrorCode::LengthMismatch, "modulus must have k+1 coefficients");
            for (int& c : modulus_) {
                if (c < 0 || c >= p) throw Error(ErrorCode::BadParameters, "modulus coefficient out of range [0,p)");
            }
            if (modulus_.back() != 1) throw Error(ErrorCode::BadParameters, "modulus must be monic");
            if (!modulus_irreducible()) throw Error(ErrorCode::ReducibleModulus, "modulus is reducible over F_p");
        }
        build_tables();
    }

    static bool is_prime(int n) noexcept {
        if (n < 2) return false;
        for (int d = 2; static_cast<long long>(d) * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    std::uint32_t add_digits(std::uint32_t a, std::uint32_t b) const noexcept {
        std::uint32_t out = 0, scale = 1;
        const auto pp = static_cast<std::uint32_t>(p_);
        for (int i = 0; i < k_; ++i) {
            out += ((a % pp + b % pp) % pp) * scale;
            a /= pp;
            b /= pp;
            scale *= pp;
        }
        return out;
    }

    std::uint32_t neg_digits(std::uint32_t a) const noexcept {
        std::uint32_t out = 0, scale = 1;
        const auto pp = static_cast<std::uint32_t>(p_);
        for (int i = 0; i < k_; ++i) {
            out += ((pp - a % pp) % pp) * scale;
            a /= pp;
            scale *= pp;
        }
        return out;
    }

    std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b) const {
        if (k_ == 1) return static_cast<std::uint32_t>((std::uint64_t{a} * b) % static_cast<std::uint64_t>(p_));
        auto ca = coeffs(Elem{a});
        auto cb = coeffs(Elem{b});
        std::vector<long long> prod(static_cast<std::size_t>(2 * k_ - 1), 0);
        for (int i = 0; i < k_; ++i)
            for (int j = 0; j < k_; ++j)
                prod[static_cast<std::size_t>(i + j)] =
                    (prod[static_cast<std::size_t>(i + j)] + static_cast<long long>(ca[i]) * cb[j]) % p_;
        // x^k = -(m_0 + ... + m_{k-1} x^{k-1})
        for (int d = 2 * k_ - 2; d >= k_; --d) {
            long long c = prod[static_cast<std::size_t>(d)];
            if (c == 0) continue;
            prod[static_cast<std::size_t>(d)] = 0;
            for (int i = 0; i < k_; ++i) {
                auto& slot = prod[static_cast<std::size_t>(d - k_ + i)];
                slot = ((slot - c * modulus_[static_cast<std::size_t>(i)]) % p_ + p_) % p_;
            }
        }
        std::vector<int> out(static_cast<std::size_t>(k_));
        for (int i = 0; i < k_; ++i) out[static_cast<std::size_t>(i)] = static_cast<int>(prod[static_cast<std::size_t>(i)]);
        return from_coeffs(out).index;
    }

    int trace_slow(Elem a) const noexcept {
        Elem acc = zero();
        Elem conj = a;
        for (int i = 0; i < k_; ++i) {
            acc = add(acc, conj);
            conj = pow(conj, static_cast<std::uint64_t>(p_));
        }
        // The trace lies in the prime subfield, i.e. only the constant coefficient is set.
        return static_cast<int>(acc.index);
    }

    // Remainder of f modulo monic g over F_p; both low-to-high.
    std::vector<int> poly_mod(std::vector<int> f, const std::vector<int>& g) const {
        const int dg = static_cast<int>(g.size()) - 1;
        for (int d = static_cast<int>(f.size()) - 1; d >= dg; --d) {
            int c = f[static_cast<std::size_t>(d)];
            if (c == 0) continue;
            for (int i = 0; i <= dg; ++i) {
                auto& slot = f[static_cast<std::size_t>(d - dg + i)];
                slot = ((slot - c * g[static_cast<std::size_t>(i)]) % p_ + p_) % p_;
            }
        }
        f.resize(static_cast<std::size_t>(dg));
        return f;
    }

    // Trial division by every monic polynomial of degree 1..k/2.
    bool modulus_irreducible() const {
        for (int d = 1; d <= k_ / 2; ++d) {
            std::uint64_t count = 1;
            for (int i = 0; i < d; ++i) count *= static_cast<std::uint64_t>(p_);
            for (std::uint64_t idx = 0; idx < count; ++idx) {
                std::vector<int> g(static_cast<std::size_t>(d + 1));
                std::uint64_t v = idx;
                for (int i = 0; i < d; ++i) {
                    g[static_cast<std::size_t>(i)] = static_cast<int>(v % static_cast<std::uint64_t>(p_));
                    v /= static_cast<std::uint64_t>(p_);
                }
                g[static_cast<std::size_t>(d)] = 1;
                auto r = poly_mod(modulus_, g);
                bool divides = true;
                for (int c : r) divides = divides && c == 0;
                if (divides) return false;
            }
        }
        return true;
    }

    void build_tables() {
        if (q_ > kTableLimit) return;
        const std::size_t q = q_;
        std::vector<std::uint32_t> add(q * q), mul(q * q);
        for (std::uint32_t a = 0; a < q_; ++a) {
            for (std::uint32_t b = 0; b < q_; ++b) {
                add[a * q + b] = add_digits(a, b);
                mul[a * q + b] = mul_slow(a, b);
            }
        }
        std::vector<std::uint32_t> neg(q), inv(q, 0);
        for (std::uint32_t a = 0; a < q_; ++a) {
            neg[a] = neg_digits(a);
            for (std::uint32_t b = 1; b < q_ && a != 0; ++b) {
                if (mul[a * q + b] == 1) {
                    inv[a] = b;
                    break;
                }
            }
        }
        add_table_ = std::move(add);
        mul_table_ = std::move(mul);
        neg_table_ = std::move(neg);
        inv_table_ = std::move(inv);
        std::vector<int> tr(q);
        for (std::uint32_t a = 0; a < q_; ++a) tr[a] = trace_slow(Elem{a});
        trace_table_ = std::move(tr);
    }

    int p_;
    int k_;
    std::uint32_t q_ = 0;
    std::vector<int> modulus_;
    std::vector<std::uint32_t> add_table_, mul_table_, neg_table_, inv_table_;
    std::vector<int> trace_table_;
};

inline void require_same_field(const Field& a, const Field& b) {
    if (!(a == b)) throw Error(ErrorCode::FieldMismatch, "operands live in different fields");
}

namespace detail {

inline std::optional<long long> parse_int(std::string_view s) {
    long long v = 0;
    auto first = s.data();
    auto last = s.data() + s.size();
    if (!s.empty() && s.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || first == last) return std::nullopt;
    return v;
}

inline std::vector<long long> parse_int_list(std::string_view s) {
    std::vector<long long> out;
    if (s.empty()) return out;
    std::size_t start = 0;
    while (true) {
        auto comma = s.find(',', start);
        auto tok = s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        auto v = parse_int(tok);
        if (!v) throw Error(ErrorCode::Usage, "bad integer '" + std::string(tok) + "'");
        out.push_back(*v);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace detail

/// Parses `p` or `p^k:c0,c1,...,ck` (modulus low-to-high, ck = 1).
inline FieldPtr parse_field_spec(std::string_view spec) {
    auto caret = spec.find('^');
    if (caret == std::string_view::npos) {
        auto p = detail::parse_int(spec);
        if (!p) throw Error(ErrorCode::Usage, "bad field spec '" + std::string(spec) + "'");
        return Field::make(static_cast<int>(*p));
    }
    auto colon = spec.find(':', caret);
    auto p = detail::parse_int(spec.substr(0, caret));
    auto k = detail::parse_int(spec.substr(caret + 1, colon == std::string_view::npos ? std::string_view::npos : colon - caret - 1));
    if (!p || !k) throw Error(ErrorCode::Usage, "bad field spec '" + std::string(spec) + "'");
    std::vector<int> modulus;
    if (colon != std::string_view::npos) {
        for (long long c : detail::parse_int_list(spec.substr(colon + 1))) modulus.push_back(static_cast<int>(c));
    }
    if (*k > 1 && modulus.empty())
        throw Error(ErrorCode::Usage, "extension field spec needs a modulus: p^k:c0,...,ck");
    return Field::make(static_cast<int>(*p), static_cast<int>(*k), std::move(modulus));
}

/// Parses a comma-separated list of element indices (prime fields: residues).
inline std::vector<Elem> parse_elements(const Field& f, std::string_view s) {
    std::vector<Elem> out;
    for (long long v : detail::parse_int_list(s)) {
        if (v < 0) out.push_back(f.from_int(v));
        else out.push_back(f.from_index(static_cast<std::uint64_t>(v)));
    }
    return out;
}

}  // namespace sumsq
