#pragma once

// Inhomogeneous bar complex C^j(G, M) = functions G^j -> M.
//
// A cochain is stored as a flat vector over F_q: tuple index * d + component,
// with the tuple (g_1, ..., g_j) read as a base-L number, g_1 most
// significant.  The normalized complex uses only tuples avoiding e
// (L = m - 1); the unnormalized one uses all tuples (L = m).

#include <cstddef>
#include <cstdint>
#include <vector>

#include "diffcoh/error.hpp"
#include "diffcoh/group.hpp"
#include "diffcoh/linalg.hpp"
#include "diffcoh/module.hpp"
#include "diffcoh/semilinear.hpp"

namespace diffcoh {

class CochainIndexer {
public:
    CochainIndexer(const FiniteDiffGroup& g, bool normalized) : normalized_(normalized)
    {
        letter_of_.assign(g.order(), npos);
        for (GroupElem x = 0; x < g.order(); ++x)
            if (!normalized || x != g.identity()) {
                letter_of_[x] = letters_.size();
                letters_.push_back(x);
            }
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    bool normalized() const { return normalized_; }
    std::size_t alphabet() const { return letters_.size(); }

    std::size_t tuple_count(std::size_t j) const
    {
        std::size_t n = 1;
        for (std::size_t i = 0; i < j; ++i) n *= letters_.size();
        return n;
    }

    std::vector<GroupElem> decode(std::size_t index, std::size_t j) const
    {
        std::vector<GroupElem> t(j);
        for (std::size_t i = j; i-- > 0;) {
            t[i] = letters_[index % letters_.size()];
            index /= letters_.size();
        }
        return t;
    }

    /// npos when the tuple uses a letter outside the alphabet (e, normalized).
    std::size_t encode(std::span<const GroupElem> t) const
    {
        std::size_t index = 0;
        for (auto x : t) {
            const auto l = letter_of_[x];
            if (l == npos) return npos;
            index = index * letters_.size() + l;
        }
        return index;
    }

private:
    bool normalized_;
    std::vector<GroupElem> letters_;
    std::vector<std::size_t> letter_of_;
};

/// The normalized complex is used exactly when sigma_G is injective.
inline bool use_normalized(const FiniteDiffGroup& g) { return g.sigma_injective(); }

inline void require_normalized_ok(const FiniteDiffGroup& g, bool normalized)
{
    if (normalized && !g.sigma_injective())
        throw Error(ErrorCode::NormalizedUnavailable, "normalized cochains need an injective sigma_G");
}

inline std::size_t cochain_dim(const DiffModule& m, std::size_t j, bool normalized)
{
    return CochainIndexer(m.group, normalized).tuple_count(j) * m.dim();
}

/// d^j : C^j -> C^{j+1},
/// (df)(g_1..g_{j+1}) = g_1 f(g_2..) + sum_i (-1)^i f(.., g_i g_{i+1}, ..) + (-1)^{j+1} f(g_1..g_j).
inline Matrix bar_differential(const FiniteDiffGroup& g, const Field& f, const std::vector<Matrix>& rho,
                               std::size_t d, std::size_t j, bool normalized)
{
    require_normalized_ok(g, normalized);
    const CochainIndexer idx(g, normalized);
    const std::size_t rows = idx.tuple_count(j + 1), cols = idx.tuple_count(j);
    Matrix out(rows * d, cols * d);
    const std::uint32_t minus_one = f.neg(1);
    std::vector<GroupElem> sub(j);
    auto add_block = [&](std::size_t row_tuple, std::size_t col_tuple, std::uint32_t sign) {
        for (std::size_t k = 0; k < d; ++k) {
            auto& x = out(row_tuple * d + k, col_tuple * d + k);
            x = f.add(x, sign);
        }
    };
    for (std::size_t r = 0; r < rows; ++r) {
        const auto t = idx.decode(r, j + 1);
        // g_1 . f(g_2, ..., g_{j+1})
        const auto first = idx.encode(std::span(t).subspan(1));
        if (first != CochainIndexer::npos) {
            const auto& act = rho[t[0]];
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = 0; b < d; ++b) {
                    auto& x = out(r * d + a, first * d + b);
                    x = f.add(x, act(a, b));
                }
        }
        for (std::size_t i = 1; i <= j; ++i) {
            for (std::size_t k = 0, pos = 0; k < j + 1; ++k) {
                if (k == i) continue;
                sub[pos++] = (k == i - 1) ? g.mul(t[i - 1], t[i]) : t[k];
            }
            const auto c = idx.encode(sub);
            if (c != CochainIndexer::npos) add_block(r, c, i % 2 ? minus_one : 1u);
        }
        const auto last = idx.encode(std::span(t).first(j));
        if (last != CochainIndexer::npos) add_block(r, last, (j + 1) % 2 ? minus_one : 1u);
    }
    return out;
}

inline Matrix bar_differential(const DiffModule& m, std::size_t j, bool normalized)
{
    return bar_differential(m.group, m.field, m.rho, m.dim(), j, normalized);
}

/// Tuple map T -> sigma_G^power(T) as an index table (npos when the image leaves the alphabet).
inline std::vector<std::size_t> pullback_table(const FiniteDiffGroup& g, std::size_t j, bool normalized,
                                               std::size_t power)
{
    const CochainIndexer idx(g, normalized);
    std::vector<std::size_t> table(idx.tuple_count(j));
    for (std::size_t r = 0; r < table.size(); ++r) {
        auto t = idx.decode(r, j);
        for (auto& x : t) x = g.sigma_power(x, power);
        table[r] = idx.encode(t);
    }
    return table;
}

/// f -> f o (sigma_G^power)^{x j}, F_q-linear.  This is the restriction map
/// H^j(G, M^{(i)}) -> H^j(G, M^{(i+power)}) on cochains.
inline Vector restrict_along_sigma(const std::vector<std::size_t>& table, std::size_t d,
                                   std::span<const std::uint32_t> cochain)
{
    Vector out(table.size() * d, 0);
    for (std::size_t r = 0; r < table.size(); ++r)
        if (table[r] != CochainIndexer::npos)
            for (std::size_t k = 0; k < d; ++k) out[r * d + k] = cochain[table[r] * d + k];
    return out;
}

/// (Phi f)(g_1..g_j) = sigma_M(f(sigma_G g_1, ..., sigma_G g_j)), applied to one cochain.
class CochainSigma {
public:
    CochainSigma(const DiffModule& m, std::size_t j, bool normalized)
        : module_(&m), table_(pullback_table(m.group, j, normalized, 1))
    {
        require_normalized_ok(m.group, normalized);
    }

    Vector operator()(std::span<const std::uint32_t> cochain) const
    {
        const auto& m = *module_;
        const std::size_t d = m.dim();
        Vector out(table_.size() * d, 0);
        for (std::size_t r = 0; r < table_.size(); ++r) {
            if (table_[r] == CochainIndexer::npos) continue;
            const auto value = m.sigma_m(m.field, cochain.subspan(table_[r] * d, d));
            std::copy(value.begin(), value.end(), out.begin() + static_cast<std::ptrdiff_t>(r * d));
        }
        return out;
    }

private:
    const DiffModule* module_;
    std::vector<std::size_t> table_;
};

/// Phi^j as an explicit semilinear map on C^j.
inline SemilinearMap sigma_on_cochains(const DiffModule& m, std::size_t j, bool normalized)
{
    require_normalized_ok(m.group, normalized);
    const auto table = pullback_table(m.group, j, normalized, 1);
    const std::size_t d = m.dim();
    SemilinearMap phi{Matrix(table.size() * d, table.size() * d), m.sigma_m.twist};
    for (std::size_t r = 0; r < table.size(); ++r) {
        if (table[r] == CochainIndexer::npos) continue;
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b) phi.matrix(r * d + a, table[r] * d + b) = m.sigma_m.matrix(a, b);
    }
    return phi;
}

}  // namespace diffcoh
