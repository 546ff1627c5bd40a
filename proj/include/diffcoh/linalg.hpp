#pragma once

// Dense linear algebra over a Field.  Matrices hold raw element codes.
// Elimination always picks the first nonzero entry in column order as
// pivot, so every result here is deterministic.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "diffcoh/error.hpp"
#include "diffcoh/field.hpp"

namespace diffcoh {

using Vector = std::vector<std::uint32_t>;

struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint32_t> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::uint32_t& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    std::uint32_t operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    std::span<std::uint32_t> row(std::size_t r) { return {data.data() + r * cols, cols}; }
    std::span<const std::uint32_t> row(std::size_t r) const { return {data.data() + r * cols, cols}; }

    Vector column(std::size_t c) const
    {
        Vector v(rows);
        for (std::size_t r = 0; r < rows; ++r) v[r] = (*this)(r, c);
        return v;
    }
    void set_column(std::size_t c, std::span<const std::uint32_t> v)
    {
        for (std::size_t r = 0; r < rows; ++r) (*this)(r, c) = v[r];
    }

    bool is_zero() const
    {
        for (auto x : data)
            if (x) return false;
        return true;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;
};

/// Matrix whose columns are the given vectors (all of length `height`).
inline Matrix from_columns(const std::vector<Vector>& columns, std::size_t height)
{
    Matrix m(height, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) m.set_column(c, columns[c]);
    return m;
}

namespace linalg {

inline Matrix transpose(const Matrix& a)
{
    Matrix t(a.cols, a.rows);
    for (std::size_t r = 0; r < a.rows; ++r)
        for (std::size_t c = 0; c < a.cols; ++c) t(c, r) = a(r, c);
    return t;
}

inline Matrix mul(const Field& f, const Matrix& a, const Matrix& b)
{
    if (a.cols != b.rows) throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
    Matrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            const auto x = a(i, k);
            if (!x) continue;
            for (std::size_t j = 0; j < b.cols; ++j) {
                const auto y = b(k, j);
                if (y) c(i, j) = f.add(c(i, j), f.mul(x, y));
            }
        }
    return c;
}

inline Vector apply(const Field& f, const Matrix& a, std::span<const std::uint32_t> v)
{
    if (a.cols != v.size()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector shape mismatch");
    Vector out(a.rows, 0);
    for (std::size_t i = 0; i < a.rows; ++i) {
        std::uint32_t acc = 0;
        const auto row = a.row(i);
        for (std::size_t k = 0; k < a.cols; ++k)
            if (row[k] && v[k]) acc = f.add(acc, f.mul(row[k], v[k]));
        out[i] = acc;
    }
    return out;
}

inline Matrix add(const Field& f, const Matrix& a, const Matrix& b)
{
    if (a.rows != b.rows || a.cols != b.cols) throw Error(ErrorCode::DimensionMismatch, "matrix sum shape mismatch");
    Matrix c(a.rows, a.cols);
    for (std::size_t i = 0; i < a.data.size(); ++i) c.data[i] = f.add(a.data[i], b.data[i]);
    return c;
}

inline Matrix sub(const Field& f, const Matrix& a, const Matrix& b)
{
    if (a.rows != b.rows || a.cols != b.cols) throw Error(ErrorCode::DimensionMismatch, "matrix difference shape mismatch");
    Matrix c(a.rows, a.cols);
    for (std::size_t i = 0; i < a.data.size(); ++i) c.data[i] = f.sub(a.data[i], b.data[i]);
    return c;
}

inline Matrix scale(const Field& f, std::uint32_t s, const Matrix& a)
{
    Matrix c = a;
    for (auto& x : c.data) x = f.mul(s, x);
    return c;
}

/// Entrywise c -> c^{p^s}.
inline Matrix frobenius_entries(const Field& f, const Matrix& a, std::uint32_t s)
{
    Matrix c = a;
    if (s % f.degree() == 0) return c;
    for (auto& x : c.data) x = f.frob(x, s);
    return c;
}

inline Vector frobenius_entries(const Field& f, std::span<const std::uint32_t> v, std::uint32_t s)
{
    Vector c(v.begin(), v.end());
    if (s % f.degree() == 0) return c;
    for (auto& x : c) x = f.frob(x, s);
    return c;
}

namespace detail {

// dst -= factor * src over columns [from, cols).
inline void row_axpy(const Field& f, std::span<std::uint32_t> dst, std::span<const std::uint32_t> src,
                     std::uint32_t factor, std::size_t from)
{
    if (f.is_prime_field()) {
        const std::uint32_t p = f.characteristic();
        const std::uint32_t m = p - factor;
        for (std::size_t k = from; k < dst.size(); ++k)
            if (src[k]) dst[k] = (dst[k] + m * src[k]) % p;
        return;
    }
    const std::uint32_t m = f.neg(factor);
    for (std::size_t k = from; k < dst.size(); ++k)
        if (src[k]) dst[k] = f.add(dst[k], f.mul(m, src[k]));
}

inline void row_scale(const Field& f, std::span<std::uint32_t> row, std::uint32_t s, std::size_t from)
{
    for (std::size_t k = from; k < row.size(); ++k)
        if (row[k]) row[k] = f.mul(s, row[k]);
}

}  // namespace detail

struct Echelon {
    Matrix reduced;                   // reduced row echelon form
    std::vector<std::size_t> pivots;  // pivot column of row i
    std::size_t rank() const { return pivots.size(); }
};

/// Reduced row echelon form by Gauss-Jordan elimination.
inline Echelon rref(const Field& f, Matrix a)
{
    Echelon e;
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < a.cols && pivot_row < a.rows; ++c) {
        std::size_t r = pivot_row;
        while (r < a.rows && a(r, c) == 0) ++r;
        if (r == a.rows) continue;
        if (r != pivot_row)
            for (std::size_t k = c; k < a.cols; ++k) std::swap(a(r, k), a(pivot_row, k));
        detail::row_scale(f, a.row(pivot_row), f.inv(a(pivot_row, c)), c);
        for (std::size_t i = 0; i < a.rows; ++i) {
            if (i == pivot_row) continue;
            const auto factor = a(i, c);
            if (factor) detail::row_axpy(f, a.row(i), a.row(pivot_row), factor, c);
        }
        e.pivots.push_back(c);
        ++pivot_row;
    }
    e.reduced = std::move(a);
    return e;
}

/// Rank by forward elimination only.
inline std::size_t rank(const Field& f, Matrix a)
{
    // Eliminate along the shorter side.
    if (a.rows > a.cols) a = transpose(a);
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < a.cols && pivot_row < a.rows; ++c) {
        std::size_t r = pivot_row;
        while (r < a.rows && a(r, c) == 0) ++r;
        if (r == a.rows) continue;
        if (r != pivot_row)
            for (std::size_t k = c; k < a.cols; ++k) std::swap(a(r, k), a(pivot_row, k));
        detail::row_scale(f, a.row(pivot_row), f.inv(a(pivot_row, c)), c);
        for (std::size_t i = pivot_row + 1; i < a.rows; ++i) {
            const auto factor = a(i, c);
            if (factor) detail::row_axpy(f, a.row(i), a.row(pivot_row), factor, c);
        }
        ++pivot_row;
    }
    return pivot_row;
}

/// Kernel basis read off the reduced echelon form: one vector per free
/// column, with a 1 in that column.
inline std::vector<Vector> kernel(const Field& f, const Echelon& e, std::size_t cols)
{
    std::vector<bool> is_pivot(cols, false);
    for (auto c : e.pivots) is_pivot[c] = true;
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        Vector v(cols, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = f.neg(e.reduced(i, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

inline std::vector<Vector> kernel(const Field& f, const Matrix& a) { return kernel(f, rref(f, a), a.cols); }

/// Pivot columns of `a`, which form a basis of its column space.
inline std::vector<Vector> image_basis(const Field& f, const Matrix& a)
{
    const auto e = rref(f, a);
    std::vector<Vector> basis;
    for (auto c : e.pivots) basis.push_back(a.column(c));
    return basis;
}

inline std::optional<Matrix> inverse(const Field& f, const Matrix& a)
{
    if (a.rows != a.cols) return std::nullopt;
    const std::size_t n = a.rows;
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = 1;
    }
    auto e = rref(f, aug);
    if (e.rank() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
    return inv;
}

/// Coordinates with respect to a fixed list of linearly independent vectors.
///
/// A set of pivot coordinates is chosen once; coordinates of any vector in
/// the span are then obtained from those entries alone.
class SpanCoordinates {
public:
    SpanCoordinates(const Field& f, std::vector<Vector> basis, std::size_t ambient)
        : field_(f), basis_(std::move(basis)), ambient_(ambient)
    {
        const std::size_t k = basis_.size();
        if (k == 0) return;
        // Pivot rows of the ambient x k matrix, found on its transpose.
        Matrix t(k, ambient_);
        for (std::size_t i = 0; i < k; ++i) {
            if (basis_[i].size() != ambient_) throw Error(ErrorCode::DimensionMismatch, "basis vector length");
            for (std::size_t r = 0; r < ambient_; ++r) t(i, r) = basis_[i][r];
        }
        const auto e = rref(f, t);
        if (e.rank() != k) throw Error(ErrorCode::DimensionMismatch, "SpanCoordinates basis is dependent");
        rows_ = e.pivots;
        Matrix square(k, k);
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b) square(a, b) = basis_[b][rows_[a]];
        solve_ = *inverse(f, square);
    }

    std::size_t size() const { return basis_.size(); }

    /// Coordinates of v, or nullopt when v is outside the span.
    std::optional<Vector> coordinates(std::span<const std::uint32_t> v) const
    {
        const std::size_t k = basis_.size();
        Vector rhs(k);
        for (std::size_t a = 0; a < k; ++a) rhs[a] = v[rows_[a]];
        Vector x = k ? apply(field_, solve_, rhs) : Vector{};
        // Verify the reconstruction.
        Vector recon(ambient_, 0);
        for (std::size_t b = 0; b < k; ++b)
            if (x[b])
                for (std::size_t r = 0; r < ambient_; ++r)
                    if (basis_[b][r]) recon[r] = field_.add(recon[r], field_.mul(x[b], basis_[b][r]));
        for (std::size_t r = 0; r < ambient_; ++r)
            if (recon[r] != v[r]) return std::nullopt;
        return x;
    }

private:
    Field field_;
    std::vector<Vector> basis_;
    std::size_t ambient_;
    std::vector<std::size_t> rows_;
    Matrix solve_;
};

/// Matrix power by repeated squaring.
inline Matrix power(const Field& f, Matrix a, std::uint64_t e)
{
    Matrix result = Matrix::identity(a.rows);
    while (e) {
        if (e & 1) result = mul(f, result, a);
        a = mul(f, a, a);
        e >>= 1;
    }
    return result;
}

}  // namespace linalg
}  // namespace diffcoh
