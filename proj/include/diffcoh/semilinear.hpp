#pragma once

// Frobenius-semilinear maps v -> S * v^{(s)} on F_q^d, their restriction of
// scalars to F_p, and the invariant / coinvariant dimensions that all
// difference-cohomology counts reduce to.

#include <cstdint>
#include <vector>

#include "diffcoh/field.hpp"
#include "diffcoh/linalg.hpp"

namespace diffcoh {

/// v -> S * (entrywise c -> c^{p^twist})(v).
struct SemilinearMap {
    Matrix matrix;
    std::uint32_t twist = 0;

    std::size_t dim() const { return matrix.rows; }

    Vector operator()(const Field& f, std::span<const std::uint32_t> v) const
    {
        return linalg::apply(f, matrix, linalg::frobenius_entries(f, v, twist));
    }
};

/// An F_p-matrix; rows and cols count prime-field coordinates.
using PrimeFieldMatrix = Matrix;

/// F_p coordinates of a vector over F_q: entry i contributes n consecutive
/// coordinates (its power-basis coefficients).
inline Vector prime_coords(const Field& f, std::span<const std::uint32_t> v)
{
    const std::uint32_t n = f.degree();
    Vector out(v.size() * n);
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::uint32_t k = 0; k < n; ++k) out[i * n + k] = f.coeff(v[i], k);
    return out;
}

inline Vector from_prime_coords(const Field& f, std::span<const std::uint32_t> c)
{
    const std::uint32_t n = f.degree();
    Vector out(c.size() / n, 0);
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::uint32_t k = 0; k < n; ++k)
            if (c[i * n + k]) out[i] = f.add(out[i], f.mul(c[i * n + k], f.basis(k)));
    return out;
}

/// Restriction of scalars of an F_q-linear map.
inline PrimeFieldMatrix restrict_scalars(const Field& f, const Matrix& a)
{
    const std::uint32_t n = f.degree();
    if (n == 1) return a;
    PrimeFieldMatrix r(a.rows * n, a.cols * n);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) {
            const auto x = a(i, j);
            if (!x) continue;
            for (std::uint32_t k = 0; k < n; ++k) {
                const auto image = f.mul(x, f.basis(k));
                for (std::uint32_t l = 0; l < n; ++l) r(i * n + l, j * n + k) = f.coeff(image, l);
            }
        }
    return r;
}

/// Matrix over F_p of c -> c^{p^s} on F_q in the power basis.
inline PrimeFieldMatrix frobenius_matrix(const Field& f, std::uint32_t s)
{
    const std::uint32_t n = f.degree();
    PrimeFieldMatrix m(n, n);
    for (std::uint32_t k = 0; k < n; ++k) {
        const auto image = f.frob(f.basis(k), s);
        for (std::uint32_t l = 0; l < n; ++l) m(l, k) = f.coeff(image, l);
    }
    return m;
}

/// Restriction of scalars of a semilinear map: R(S) * blockdiag(R(Frob^s)).
inline PrimeFieldMatrix restrict_scalars(const Field& f, const SemilinearMap& map)
{
    const std::uint32_t n = f.degree();
    PrimeFieldMatrix linear = restrict_scalars(f, map.matrix);
    if (map.twist % n == 0) return linear;
    const auto frob = frobenius_matrix(f, map.twist);
    PrimeFieldMatrix out(linear.rows, linear.cols);
    const std::uint32_t p = f.characteristic();
    // Right-multiply each n-column block by the Frobenius matrix.
    for (std::size_t r = 0; r < linear.rows; ++r)
        for (std::size_t block = 0; block < linear.cols / n; ++block)
            for (std::uint32_t k = 0; k < n; ++k) {
                std::uint32_t acc = 0;
                for (std::uint32_t l = 0; l < n; ++l) acc = (acc + linear(r, block * n + l) * frob(l, k)) % p;
                out(r, block * n + k) = acc;
            }
    return out;
}

/// R(f) - Id over F_p.
inline PrimeFieldMatrix restricted_minus_identity(const Field& f, const SemilinearMap& map)
{
    const Field fp = f.prime_field();
    auto m = restrict_scalars(f, map);
    for (std::size_t i = 0; i < m.rows; ++i) m(i, i) = fp.sub(m(i, i), 1);
    return m;
}

struct InvariantSpace {
    std::size_t dim = 0;               // over F_p
    std::vector<Vector> basis;         // F_p coordinates
};

/// ker(f - id), computed over the prime field.
inline InvariantSpace semilinear_invariants(const Field& f, const SemilinearMap& map)
{
    const Field fp = f.prime_field();
    const auto m = restricted_minus_identity(f, map);
    InvariantSpace out;
    out.basis = linalg::kernel(fp, m);
    out.dim = out.basis.size();
    return out;
}

/// dim over F_p of coker(f - id).
inline std::size_t semilinear_coinvariants(const Field& f, const SemilinearMap& map)
{
    const Field fp = f.prime_field();
    const auto m = restricted_minus_identity(f, map);
    return m.rows - linalg::rank(fp, m);
}

struct EigenspaceResult {
    std::uint32_t value = 1;
    std::size_t dim_invariant = 0;    // dim_Fp ker(F - a)
    std::size_t dim_coinvariant = 0;  // dim_Fp coker(F - a)
};

/// Eigenspace and co-eigenspace of F = Frob^s on the field, viewed F_p-linearly.
inline EigenspaceResult eigenspace(const Field& f, std::uint32_t s, std::int64_t a)
{
    const Field fp = f.prime_field();
    const std::uint32_t value = fp.from_int(a);
    if (value == 0) throw Error(ErrorCode::ZeroEigenvalue, "eigenvalue must be a unit of F_p");
    auto m = frobenius_matrix(f, s);
    for (std::size_t i = 0; i < m.rows; ++i) m(i, i) = fp.sub(m(i, i), value);
    const std::size_t r = linalg::rank(fp, m);
    return {value, m.cols - r, m.rows - r};
}

}  // namespace diffcoh
