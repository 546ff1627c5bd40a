#pragma once

// Univariate polynomials over a Field and square polynomial matrices, used
// to present a periodic shift system as a finitely generated F_q[z]-module.

#include <cstdint>
#include <optional>
#include <vector>

#include "diffcoh/field.hpp"

namespace diffcoh {

/// Coefficients low degree first, trailing zeros trimmed.
using Poly = std::vector<std::uint32_t>;

namespace poly {

inline void trim(Poly& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline long degree(const Poly& a) { return static_cast<long>(a.size()) - 1; }

inline Poly sub(const Field& f, const Poly& a, const Poly& b)
{
    Poly c(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
        const std::uint32_t x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        c[i] = f.sub(x, y);
    }
    trim(c);
    return c;
}

inline Poly mul(const Field& f, const Poly& a, const Poly& b)
{
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i])
            for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = f.add(c[i + j], f.mul(a[i], b[j]));
    trim(c);
    return c;
}

/// Quotient of a by nonzero b.
inline Poly quotient(const Field& f, Poly a, const Poly& b)
{
    trim(a);
    if (a.size() < b.size()) return {};
    Poly q(a.size() - b.size() + 1, 0);
    const auto lead_inv = f.inv(b.back());
    while (a.size() >= b.size() && !a.empty()) {
        const std::size_t shift = a.size() - b.size();
        const auto factor = f.mul(a.back(), lead_inv);
        q[shift] = factor;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = f.sub(a[shift + i], f.mul(factor, b[i]));
        trim(a);
    }
    trim(q);
    return q;
}

}  // namespace poly

using PolyMatrix = std::vector<std::vector<Poly>>;

/// Degree of det(A) for square A over F_q[z], or nullopt when det(A) = 0.
///
/// Euclidean row reduction to upper-triangular form; only unimodular row
/// operations are used, so det changes by a unit.
inline std::optional<std::size_t> determinant_degree(const Field& f, PolyMatrix a)
{
    const std::size_t n = a.size();
    std::size_t total = 0;
    for (std::size_t c = 0; c < n; ++c) {
        while (true) {
            std::optional<std::size_t> pivot;
            std::size_t nonzero = 0;
            for (std::size_t r = c; r < n; ++r) {
                if (a[r][c].empty()) continue;
                ++nonzero;
                if (!pivot || a[r][c].size() < a[*pivot][c].size()) pivot = r;
            }
            if (!pivot) return std::nullopt;
            std::swap(a[c], a[*pivot]);
            if (nonzero == 1) break;
            for (std::size_t r = c + 1; r < n; ++r) {
                if (a[r][c].empty()) continue;
                const auto q = poly::quotient(f, a[r][c], a[c][c]);
                for (std::size_t k = c; k < n; ++k) a[r][k] = poly::sub(f, a[r][k], poly::mul(f, q, a[c][k]));
            }
        }
        total += static_cast<std::size_t>(poly::degree(a[c][c]));
    }
    return total;
}

}  // namespace diffcoh
