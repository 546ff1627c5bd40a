#pragma once

// Independent brute-force oracles shared by the test suites.  None of these
// go through the library's elimination code.

#include <algorithm>
#include <set>
#include <cstdint>
#include <vector>

#include "diffcoh/diffcoh.hpp"
#include "diffcoh/random.hpp"

namespace oracle {

using namespace diffcoh;

/// Schoolbook product of power-basis coefficient vectors, reduced by the modulus.
inline std::vector<std::uint32_t> poly_mul_mod(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                                               const std::vector<std::uint32_t>& modulus, std::uint32_t p)
{
    const std::size_t n = modulus.size() - 1;
    std::vector<std::uint64_t> prod(2 * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    for (std::size_t k = 2 * n - 1; k >= n; --k) {
        const auto c = prod[k];
        if (!c) continue;
        prod[k] = 0;
        for (std::size_t i = 0; i < n; ++i) prod[k - n + i] = (prod[k - n + i] + (p - c) * modulus[i]) % p;
    }
    return {prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(n)};
}

/// x^{p^s} by repeated multiplication.
inline std::uint32_t slow_frob(const Field& f, std::uint32_t x, std::uint32_t s)
{
    for (std::uint32_t i = 0; i < s; ++i) {
        std::uint32_t y = 1;
        for (std::uint32_t k = 0; k < f.characteristic(); ++k) y = f.mul(y, x);
        x = y;
    }
    return x;
}

inline std::size_t log_p(std::size_t count, std::uint32_t p)
{
    std::size_t d = 0;
    while (count > 1) {
        count /= p;
        ++d;
    }
    return d;
}

/// dims over F_p of ker and coker of c -> Frob^s(c) - a c, by enumerating all of F_q.
inline std::pair<std::size_t, std::size_t> eigen(const Field& f, std::uint32_t s, std::uint32_t a)
{
    std::size_t fixed = 0;
    std::vector<bool> hit(f.order(), false);
    for (std::uint32_t c = 0; c < f.order(); ++c) {
        const auto v = f.sub(f.frob(c, s), f.mul(a, c));
        if (v == 0) ++fixed;
        hit[v] = true;
    }
    std::size_t image = 0;
    for (bool h : hit) image += h;
    const auto p = f.characteristic();
    return {log_p(fixed, p), log_p(f.order() / image, p)};
}

/// All vectors of F_p^n, as a flat list.
inline std::vector<Vector> all_vectors(std::uint32_t p, std::size_t n)
{
    std::vector<Vector> out;
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= p;
    for (std::size_t code = 0; code < total; ++code) {
        Vector v(n);
        auto c = code;
        for (auto& x : v) {
            x = static_cast<std::uint32_t>(c % p);
            c /= p;
        }
        out.push_back(std::move(v));
    }
    return out;
}

inline Vector apply_mod(const Matrix& a, const Vector& v, std::uint32_t p)
{
    Vector out(a.rows, 0);
    for (std::size_t i = 0; i < a.rows; ++i) {
        std::uint64_t s = 0;
        for (std::size_t j = 0; j < a.cols; ++j) s += static_cast<std::uint64_t>(a(i, j)) * v[j];
        out[i] = static_cast<std::uint32_t>(s % p);
    }
    return out;
}

/// dims of ker and coker of a square matrix over F_p by enumeration.
inline std::pair<std::size_t, std::size_t> ker_coker(const Matrix& a, std::uint32_t p)
{
    std::size_t zero = 0;
    std::set<Vector> image;
    for (const auto& v : all_vectors(p, a.cols)) {
        auto w = apply_mod(a, v, p);
        if (std::all_of(w.begin(), w.end(), [](auto x) { return x == 0; })) ++zero;
        image.insert(std::move(w));
    }
    return {log_p(zero, p), a.rows - log_p(image.size(), p)};
}

/// H^n_sigma(Z/p, F_p) with sigma_G = multiplication by t of order r, for n >= 1,
/// from the closed form; degree 0 is the invariants alone.
inline std::size_t cyclic_closed_form(std::size_t n, std::size_t r)
{
    // t acts on H^n(Z/p, F_p) by t^{ceil(n/2)}: count trivial actions on H^n and H^{n-1}.
    if (n == 0) return 1;
    return ((n + 1) / 2 % r == 0) + (n / 2 % r == 0);
}

inline std::size_t order_mod(std::uint32_t t, std::uint32_t p)
{
    std::size_t r = 1;
    for (std::uint64_t x = t % p; x != 1; x = x * t % p) ++r;
    return r;
}

/// A random graded module over F_p with weights drawn from a small window.
inline GradedDiffModule random_graded(Rng& rng, std::uint32_t p)
{
    const Field f = builtin_field(p, 1);
    const auto pp = static_cast<std::int64_t>(p);
    GradedDiffModule m{f, {}, {}};
    const std::vector<std::int64_t> pool{0, 1, -1, 2, -2, pp, -pp, 2 * pp, pp * pp, 4, 5, 4 * pp, 5 * pp};
    for (auto w : pool)
        if (rng.below(2)) m.weights[w] = 1 + rng.below(2);
    m.weights[0] = 1 + rng.below(3);
    for (const auto& [w, d] : m.weights) {
        const auto target = pp * w;
        const auto dt = m.dim_at(target);
        if (dt == 0) continue;
        if (w != 0 && rng.below(3) == 0) continue;  // leave some maps implicit (zero)
        m.xmaps[w] = {random_matrix(rng, f, dt, d), std::nullopt};
    }
    return m;
}

/// A valid random module over one of the suite fields and groups.
inline DiffModule random_valid_module(Rng& rng, std::size_t max_dim = 3)
{
    const auto fields = suite_fields();
    const auto groups = suite_groups();
    return random_module(rng, rng.pick(fields), rng.pick(groups), 1 + rng.below(max_dim));
}

}  // namespace oracle
