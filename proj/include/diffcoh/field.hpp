#pragma once

// Exact arithmetic in F_{p^n} = F_p[u]/(modulus) with a designated
// power-of-Frobenius endomorphism c -> c^{p^s}.
//
// Elements are encoded as integers 0 <= e < q whose base-p digits are the
// coefficients in the power basis {1, u, ..., u^{n-1}}.  All tables are
// built once per field and shared between copies of the handle.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "diffcoh/error.hpp"

namespace diffcoh {

/// A field element; the integer is the base-p packing of its coordinates.
struct FqElem {
    std::uint32_t value = 0;

    friend constexpr auto operator<=>(const FqElem&, const FqElem&) = default;
};

namespace detail {

inline bool is_prime(std::uint32_t p)
{
    if (p < 2) return false;
    for (std::uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Dense polynomials over F_p, low degree first, used only while building
// tables and testing irreducibility.
using PrimePoly = std::vector<std::uint32_t>;

inline void trim(PrimePoly& f)
{
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p)
{
    std::uint32_t result = 1, base = a % p, e = p - 2;
    while (e) {
        if (e & 1) result = static_cast<std::uint32_t>(std::uint64_t(result) * base % p);
        base = static_cast<std::uint32_t>(std::uint64_t(base) * base % p);
        e >>= 1;
    }
    return result;
}

// Remainder of f modulo monic-or-not g (g nonzero, trimmed).
inline PrimePoly poly_rem(PrimePoly f, const PrimePoly& g, std::uint32_t p)
{
    trim(f);
    const std::uint32_t lead_inv = inv_mod(g.back(), p);
    while (f.size() >= g.size()) {
        const std::uint32_t factor = f.back() * lead_inv % p;
        const std::size_t shift = f.size() - g.size();
        for (std::size_t i = 0; i < g.size(); ++i)
            f[shift + i] = (f[shift + i] + (p - factor) * g[i]) % p;
        trim(f);
    }
    return f;
}

inline bool is_irreducible(const PrimePoly& modulus, std::uint32_t p)
{
    const std::size_t n = modulus.size() - 1;
    // Trial division by every monic polynomial of degree 1..n/2.
    for (std::size_t deg = 1; deg <= n / 2; ++deg) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < deg; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            PrimePoly d(deg + 1, 0);
            std::uint64_t rest = idx;
            for (std::size_t i = 0; i < deg; ++i) {
                d[i] = static_cast<std::uint32_t>(rest % p);
                rest /= p;
            }
            d[deg] = 1;
            if (poly_rem(modulus, d, p).empty()) return false;
        }
    }
    return true;
}

struct FieldTables {
    std::uint32_t p = 2;
    std::uint32_t n = 1;
    std::uint32_t q = 2;
    std::vector<std::uint32_t> modulus;  // length n+1, monic
    std::vector<std::uint32_t> powers;   // p^k for k = 0..n
    std::vector<std::uint32_t> exp_table;  // generator^i, i in [0, 2(q-1))
    std::vector<std::uint32_t> log_table;  // log of nonzero elements
    std::vector<std::uint32_t> neg_table;
    std::vector<std::uint32_t> inv_table;
    std::vector<std::uint32_t> frob_table;  // c -> c^p
    std::vector<std::uint32_t> add_table;   // only for small q, q*q entries
};

}  // namespace detail

/// The field F_{p^n} together with its difference endomorphism c -> c^{p^s}.
///
/// Cheap to copy: all copies share the same immutable tables.
class Field {
public:
    Field() : Field(2, 1, {0, 1}, 0) {}

    /// Throws NotPrime, BadModulus, ReducibleModulus or BadSigmaPower.
    Field(std::uint32_t p, std::uint32_t n, std::vector<std::uint32_t> modulus, std::uint32_t sigma_power)
        : sigma_power_(sigma_power)
    {
        if (!detail::is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
        if (n == 0) throw Error(ErrorCode::BadModulus, "extension degree must be at least 1");
        if (modulus.size() != n + 1 || modulus.back() != 1)
            throw Error(ErrorCode::BadModulus, "modulus must be monic of degree " + std::to_string(n));
        for (auto c : modulus)
            if (c >= p) throw Error(ErrorCode::BadModulus, "modulus coefficient out of range");
        if (sigma_power >= n)
            throw Error(ErrorCode::BadSigmaPower, "sigma_power must be < n (got " + std::to_string(sigma_power) + ")");
        if (!detail::is_irreducible(modulus, p))
            throw Error(ErrorCode::ReducibleModulus, "modulus is reducible over F_" + std::to_string(p));
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < n; ++i) q *= p;
        if (q > (1u << 20)) throw Error(ErrorCode::BadModulus, "field too large for table arithmetic");
        tables_ = build(p, n, std::move(modulus), static_cast<std::uint32_t>(q));
    }

    std::uint32_t characteristic() const { return tables_->p; }
    std::uint32_t degree() const { return tables_->n; }
    std::uint32_t order() const { return tables_->q; }
    std::uint32_t sigma_power() const { return sigma_power_; }
    const std::vector<std::uint32_t>& modulus() const { return tables_->modulus; }
    bool is_prime_field() const { return tables_->n == 1; }

    /// Same field with a different difference endomorphism.
    Field with_sigma_power(std::uint32_t s) const
    {
        if (s >= degree()) throw Error(ErrorCode::BadSigmaPower, "sigma_power must be < n");
        Field f = *this;
        f.sigma_power_ = s;
        return f;
    }

    /// The prime subfield (F_p, id).
    Field prime_field() const { return Field(characteristic(), 1, {0, 1}, 0); }

    bool same_field(const Field& other) const
    {
        return tables_->p == other.tables_->p && tables_->modulus == other.tables_->modulus;
    }
    friend bool operator==(const Field& a, const Field& b)
    {
        return a.same_field(b) && a.sigma_power_ == b.sigma_power_;
    }

    // Raw arithmetic on element codes.
    std::uint32_t zero() const { return 0; }
    std::uint32_t one() const { return 1; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const
    {
        const auto& t = *tables_;
        if (t.n == 1) {
            const std::uint32_t s = a + b;
            return s >= t.p ? s - t.p : s;
        }
        if (!t.add_table.empty()) return t.add_table[a * t.q + b];
        std::uint32_t result = 0;
        for (std::uint32_t k = 0; k < t.n; ++k) {
            const std::uint32_t da = a % t.p, db = b % t.p;
            a /= t.p;
            b /= t.p;
            result += ((da + db) % t.p) * t.powers[k];
        }
        return result;
    }
    std::uint32_t neg(std::uint32_t a) const { return tables_->neg_table[a]; }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const
    {
        const auto& t = *tables_;
        if (t.n == 1) return a * b % t.p;
        if (a == 0 || b == 0) return 0;
        return t.exp_table[t.log_table[a] + t.log_table[b]];
    }
    /// Multiplicative inverse; inv(0) is 0 by convention and callers never rely on it.
    std::uint32_t inv(std::uint32_t a) const { return tables_->inv_table[a]; }

    /// c -> c^{p^s} for any s >= 0.
    std::uint32_t frob(std::uint32_t a, std::uint32_t s = 1) const
    {
        s %= degree();
        for (std::uint32_t i = 0; i < s; ++i) a = tables_->frob_table[a];
        return a;
    }
    /// The designated endomorphism sigma_A.
    std::uint32_t sigma(std::uint32_t a) const { return frob(a, sigma_power_); }
    /// sigma_A^{-1}; sigma_A is always an automorphism of a finite field.
    std::uint32_t sigma_inv(std::uint32_t a) const { return frob(a, (degree() - sigma_power_) % degree()); }

    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const
    {
        std::uint32_t result = 1;
        while (e) {
            if (e & 1) result = mul(result, a);
            a = mul(a, a);
            e >>= 1;
        }
        return result;
    }

    /// Embedding of the prime field: the integer k mod p.
    std::uint32_t from_int(std::int64_t k) const
    {
        const std::int64_t p = characteristic();
        return static_cast<std::uint32_t>(((k % p) + p) % p);
    }

    std::vector<std::uint32_t> coeffs(std::uint32_t a) const
    {
        std::vector<std::uint32_t> c(degree());
        for (auto& x : c) {
            x = a % characteristic();
            a /= characteristic();
        }
        return c;
    }
    std::uint32_t from_coeffs(const std::vector<std::uint32_t>& c) const
    {
        if (c.size() > degree()) throw Error(ErrorCode::DimensionMismatch, "too many coefficients for field element");
        std::uint32_t result = 0;
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (c[k] >= characteristic()) throw Error(ErrorCode::DimensionMismatch, "coefficient out of range");
            result += c[k] * tables_->powers[k];
        }
        return result;
    }
    /// Coordinate k of a in the power basis.
    std::uint32_t coeff(std::uint32_t a, std::uint32_t k) const { return a / tables_->powers[k] % characteristic(); }
    /// The basis element u^k.
    std::uint32_t basis(std::uint32_t k) const { return tables_->powers[k]; }

    // Typed wrappers.
    FqElem add(FqElem a, FqElem b) const { return {add(a.value, b.value)}; }
    FqElem sub(FqElem a, FqElem b) const { return {sub(a.value, b.value)}; }
    FqElem mul(FqElem a, FqElem b) const { return {mul(a.value, b.value)}; }
    FqElem neg(FqElem a) const { return {neg(a.value)}; }
    FqElem inv(FqElem a) const { return {inv(a.value)}; }
    FqElem sigma(FqElem a) const { return {sigma(a.value)}; }
    FqElem sigma_inv(FqElem a) const { return {sigma_inv(a.value)}; }

    std::string describe() const
    {
        std::string s = "F_" + std::to_string(order());
        if (degree() > 1) {
            s += " = F_" + std::to_string(characteristic()) + "[u]/(";
            bool first = true;
            for (std::size_t k = modulus().size(); k-- > 0;) {
                const auto c = modulus()[k];
                if (c == 0) continue;
                if (!first) s += " + ";
                first = false;
                if (c != 1 || k == 0) s += std::to_string(c);
                if (k >= 1) s += "u";
                if (k >= 2) s += "^" + std::to_string(k);
            }
            s += ")";
        }
        s += sigma_power_ == 0 ? ", sigma = id" : ", sigma = Frob^" + std::to_string(sigma_power_);
        return s;
    }

private:
    static std::shared_ptr<const detail::FieldTables> build(std::uint32_t p, std::uint32_t n,
                                                             std::vector<std::uint32_t> modulus, std::uint32_t q)
    {
        auto t = std::make_shared<detail::FieldTables>();
        t->p = p;
        t->n = n;
        t->q = q;
        t->modulus = std::move(modulus);
        t->powers.resize(n + 1);
        t->powers[0] = 1;
        for (std::uint32_t k = 1; k <= n; ++k) t->powers[k] = t->powers[k - 1] * p;

        auto digits = [&](std::uint32_t a) {
            detail::PrimePoly f(n);
            for (auto& x : f) {
                x = a % p;
                a /= p;
            }
            return f;
        };
        auto pack = [&](const detail::PrimePoly& f) {
            std::uint32_t r = 0;
            for (std::size_t k = 0; k < f.size() && k < n; ++k) r += f[k] * t->powers[k];
            return r;
        };
        auto slow_mul = [&](std::uint32_t a, std::uint32_t b) {
            const auto fa = digits(a), fb = digits(b);
            detail::PrimePoly prod(2 * n, 0);
            for (std::uint32_t i = 0; i < n; ++i)
                for (std::uint32_t j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + fa[i] * fb[j]) % p;
            return pack(detail::poly_rem(prod, t->modulus, p));
        };

        t->neg_table.resize(q);
        for (std::uint32_t a = 0; a < q; ++a) {
            auto f = digits(a);
            for (auto& x : f) x = (p - x) % p;
            t->neg_table[a] = pack(f);
        }

        // A generator of the cyclic group F_q^*: the first element of order q-1.
        std::uint32_t generator = 0;
        for (std::uint32_t g = 1; g < q && generator == 0; ++g) {
            std::uint32_t x = g, order = 1;
            while (x != 1) {
                x = slow_mul(x, g);
                ++order;
            }
            if (order == q - 1) generator = g;
        }
        t->exp_table.resize(2 * (q - 1));
        t->log_table.assign(q, 0);
        std::uint32_t x = 1;
        for (std::uint32_t i = 0; i < q - 1; ++i) {
            t->exp_table[i] = x;
            t->exp_table[i + q - 1] = x;
            t->log_table[x] = i;
            x = slow_mul(x, generator);
        }
        t->inv_table.assign(q, 0);
        for (std::uint32_t a = 1; a < q; ++a) t->inv_table[a] = t->exp_table[(q - 1 - t->log_table[a]) % (q - 1)];

        t->frob_table.resize(q);
        for (std::uint32_t a = 0; a < q; ++a) {
            if (a == 0) {
                t->frob_table[a] = 0;
                continue;
            }
            t->frob_table[a] = t->exp_table[static_cast<std::uint64_t>(t->log_table[a]) * p % (q - 1)];
        }

        if (n > 1 && q <= 256) {
            t->add_table.resize(static_cast<std::size_t>(q) * q);
            for (std::uint32_t a = 0; a < q; ++a)
                for (std::uint32_t b = 0; b < q; ++b) {
                    const auto fa = digits(a), fb = digits(b);
                    detail::PrimePoly s(n);
                    for (std::uint32_t k = 0; k < n; ++k) s[k] = (fa[k] + fb[k]) % p;
                    t->add_table[a * q + b] = pack(s);
                }
        }
        return t;
    }

    std::shared_ptr<const detail::FieldTables> tables_;
    std::uint32_t sigma_power_ = 0;
};

/// Builds and validates a field; the modulus is given low degree first.
inline Field make_field(std::uint32_t p, std::uint32_t n, std::vector<std::uint32_t> modulus,
                        std::uint32_t sigma_power)
{
    return Field(p, n, std::move(modulus), sigma_power);
}

/// Shipped moduli for the common small fields (u for prime fields).
inline std::optional<std::vector<std::uint32_t>> builtin_modulus(std::uint32_t p, std::uint32_t n)
{
    if (n == 1) return std::vector<std::uint32_t>{0, 1};
    if (p == 2 && n == 2) return std::vector<std::uint32_t>{1, 1, 1};     // u^2 + u + 1
    if (p == 2 && n == 3) return std::vector<std::uint32_t>{1, 1, 0, 1};  // u^3 + u + 1
    if (p == 3 && n == 2) return std::vector<std::uint32_t>{1, 0, 1};     // u^2 + 1
    if (p == 5 && n == 2) return std::vector<std::uint32_t>{2, 0, 1};     // u^2 + 2
    return std::nullopt;
}

inline Field builtin_field(std::uint32_t p, std::uint32_t n, std::uint32_t sigma_power = 0)
{
    auto modulus = builtin_modulus(p, n);
    if (!modulus)
        throw Error(ErrorCode::BadModulus,
                    "no shipped modulus for p=" + std::to_string(p) + ", n=" + std::to_string(n));
    return Field(p, n, *modulus, sigma_power);
}

/// x^{p^s}.
inline FqElem frobenius_power(const Field& field, FqElem x, std::uint32_t s)
{
    return {field.frob(x.value, s)};
}

}  // namespace diffcoh
