#pragma once

// Difference modules over A[G]: a representation rho of G on F_q^d and a
// semilinear sigma_M satisfying sigma_M(sigma(r) m) = r sigma_M(m).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "diffcoh/field.hpp"
#include "diffcoh/group.hpp"
#include "diffcoh/linalg.hpp"
#include "diffcoh/semilinear.hpp"

namespace diffcoh {

struct DiffModule {
    Field field;
    FiniteDiffGroup group;
    std::vector<Matrix> rho;  // one d x d matrix per group element
    SemilinearMap sigma_m;

    std::size_t dim() const { return sigma_m.matrix.rows; }
};

/// Outcome of a structural check.  `element` names the first offending
/// group element (or pair, for homomorphism failures).
struct ValidationReport {
    bool ok = true;
    std::string message;
    std::optional<GroupElem> element;
    std::optional<GroupElem> second;

    explicit operator bool() const { return ok; }
};

inline ValidationReport check_shapes(const DiffModule& m)
{
    const std::size_t d = m.dim();
    if (m.sigma_m.matrix.cols != d) return {false, "sigma_m matrix must be square", {}, {}};
    if (m.rho.size() != m.group.order()) return {false, "rho must give one matrix per group element", {}, {}};
    for (GroupElem g = 0; g < m.rho.size(); ++g)
        if (m.rho[g].rows != d || m.rho[g].cols != d)
            return {false, "rho(" + std::to_string(g) + ") has the wrong shape", g, {}};
    for (auto x : m.sigma_m.matrix.data)
        if (x >= m.field.order()) return {false, "sigma_m entry outside the field", {}, {}};
    for (const auto& r : m.rho)
        for (auto x : r.data)
            if (x >= m.field.order()) return {false, "rho entry outside the field", {}, {}};
    return {};
}

/// rho(e) = Id and rho(g) rho(h) = rho(gh).
inline ValidationReport validate_representation(const Field& f, const FiniteDiffGroup& g,
                                                const std::vector<Matrix>& rho)
{
    if (rho[g.identity()] != Matrix::identity(rho[g.identity()].rows))
        return {false, "rho(e) is not the identity", g.identity(), {}};
    for (GroupElem x = 0; x < g.order(); ++x)
        for (GroupElem y = 0; y < g.order(); ++y)
            if (linalg::mul(f, rho[x], rho[y]) != rho[g.mul(x, y)])
                return {false, "rho is not a homomorphism at (" + std::to_string(x) + ", " + std::to_string(y) + ")",
                        x, y};
    return {};
}

/// Condition (dagger): S * rho(sigma_G g)^{(twist)} = rho(g) * S for every g,
/// and the scalar twist must undo sigma_A whenever S is nonzero.
inline ValidationReport validate_left(const DiffModule& m)
{
    if (auto shapes = check_shapes(m); !shapes) return shapes;
    if (auto rep = validate_representation(m.field, m.group, m.rho); !rep) return rep;
    const auto& f = m.field;
    const auto& s = m.sigma_m;
    if (!s.matrix.is_zero() && (s.twist + f.sigma_power()) % f.degree() != 0)
        return {false, "sigma_m twist " + std::to_string(s.twist) + " does not invert sigma_A on scalars", {}, {}};
    for (GroupElem g = 0; g < m.group.order(); ++g) {
        const auto lhs = linalg::mul(f, s.matrix, linalg::frobenius_entries(f, m.rho[m.group.sigma(g)], s.twist));
        const auto rhs = linalg::mul(f, m.rho[g], s.matrix);
        if (lhs != rhs) return {false, "condition (dagger) fails at g = " + std::to_string(g), g, {}};
    }
    return {};
}

/// A right difference module: m.g = rho(g) m, so rho(gh) = rho(h) rho(g),
/// and sigma_M(m.r) = sigma_M(m).sigma(r).
struct RightDiffModule {
    Field field;
    FiniteDiffGroup group;
    std::vector<Matrix> rho;
    SemilinearMap sigma_m;

    std::size_t dim() const { return sigma_m.matrix.rows; }
};

inline ValidationReport validate_right(const RightDiffModule& m)
{
    const auto& f = m.field;
    const auto& g = m.group;
    const std::size_t d = m.dim();
    if (m.rho.size() != g.order()) return {false, "rho must give one matrix per group element", {}, {}};
    for (GroupElem x = 0; x < g.order(); ++x)
        if (m.rho[x].rows != d || m.rho[x].cols != d) return {false, "rho has the wrong shape", x, {}};
    if (m.rho[g.identity()] != Matrix::identity(d)) return {false, "rho(e) is not the identity", g.identity(), {}};
    for (GroupElem x = 0; x < g.order(); ++x)
        for (GroupElem y = 0; y < g.order(); ++y)
            if (linalg::mul(f, m.rho[y], m.rho[x]) != m.rho[g.mul(x, y)])
                return {false, "rho is not a right action", x, y};
    const auto& s = m.sigma_m;
    if (!s.matrix.is_zero() && s.twist % f.degree() != f.sigma_power() % f.degree())
        return {false, "sigma_m twist must equal sigma_A on scalars for a right module", {}, {}};
    for (GroupElem x = 0; x < g.order(); ++x) {
        const auto lhs = linalg::mul(f, s.matrix, linalg::frobenius_entries(f, m.rho[x], s.twist));
        const auto rhs = linalg::mul(f, m.rho[g.sigma(x)], s.matrix);
        if (lhs != rhs) return {false, "condition (dagger') fails at g = " + std::to_string(x), x, {}};
    }
    return {};
}

/// Basis of M^G = intersection of ker(rho(g) - Id), over F_q.
inline std::vector<Vector> fixed_space(const Field& f, const std::vector<Matrix>& rho, std::size_t d)
{
    Matrix stacked(rho.size() * d, d);
    for (std::size_t g = 0; g < rho.size(); ++g)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) stacked(g * d + i, j) = f.sub(rho[g](i, j), i == j ? 1 : 0);
    return linalg::kernel(f, stacked);
}

/// A vector v of M^G whose image sigma_M(v) leaves M^G, if any.
template <typename Module>
std::optional<Vector> invariants_stability_witness(const Module& m)
{
    const auto basis = fixed_space(m.field, m.rho, m.dim());
    for (const auto& v : basis) {
        const auto w = m.sigma_m(m.field, v);
        for (const auto& r : m.rho)
            if (linalg::apply(m.field, r, w) != w) return v;
    }
    return std::nullopt;
}

/// M^{(i)}: the action twisted through sigma_G^i.  sigma_M is unchanged.
inline DiffModule twist(const DiffModule& m, std::size_t i)
{
    DiffModule out = m;
    for (GroupElem g = 0; g < m.group.order(); ++g) out.rho[g] = m.rho[m.group.sigma_power(g, i)];
    return out;
}

enum class ReformulationStatus { Ok, Violation, NotApplicable };

/// With S invertible, (dagger) is equivalent to
/// rho(sigma_G g) = sigma_M^{-1} o rho(g) o sigma_M for every g.
inline ReformulationStatus group_hom_reformulation_check(const DiffModule& m)
{
    const auto& f = m.field;
    const auto s_inv = linalg::inverse(f, m.sigma_m.matrix);
    if (!s_inv) return ReformulationStatus::NotApplicable;
    const std::uint32_t tw = m.sigma_m.twist % f.degree();
    const std::uint32_t untwist = (f.degree() - tw) % f.degree();
    for (GroupElem g = 0; g < m.group.order(); ++g) {
        // v -> S^{-1}-frob^{-1}(rho(g) S frob(v)) is the linear map (S^{-1} rho(g) S)^{(frob^{-1})}.
        const auto conj = linalg::mul(f, *s_inv, linalg::mul(f, m.rho[g], m.sigma_m.matrix));
        if (linalg::frobenius_entries(f, conj, untwist) != m.rho[m.group.sigma(g)]) return ReformulationStatus::Violation;
    }
    return ReformulationStatus::Ok;
}

/// The system M^{(0)} -> M^{(1)} -> ... underlying M^infinity.  The structure
/// maps are the identity on the underlying space (the right shift); levels
/// i >= a repeat with period c.
struct ShiftSystem {
    std::vector<DiffModule> levels;  // levels 0 .. a+c-1
    PeriodicityProfile profile;

    std::size_t level_index(std::size_t i) const
    {
        const auto a = profile.preperiod, c = profile.period;
        return i < a ? i : a + (i - a) % c;
    }
    const DiffModule& level(std::size_t i) const { return levels[level_index(i)]; }
};

inline ShiftSystem m_infinity(const DiffModule& m)
{
    ShiftSystem s;
    s.profile = sigma_periodicity(m.group);
    for (std::size_t i = 0; i < s.profile.preperiod + s.profile.period; ++i) s.levels.push_back(twist(m, i));
    return s;
}

/// dim of the fixed vectors of the right shift on the truncation
/// M^{(0)} + ... + M^{(L)}, mapped into levels 0 .. L+1.
inline std::size_t truncated_shift_fixed_dim(const ShiftSystem& s, std::size_t truncation)
{
    const Field fp = s.levels.front().field.prime_field();
    const std::size_t d = s.levels.front().dim() * s.levels.front().field.degree();
    const std::size_t levels = truncation + 1;
    Matrix m((levels + 1) * d, levels * d);
    for (std::size_t l = 0; l < levels; ++l)
        for (std::size_t k = 0; k < d; ++k) {
            m((l + 1) * d + k, l * d + k) = 1;                  // shift
            m(l * d + k, l * d + k) = fp.neg(1);                // minus inclusion
        }
    return levels * d - linalg::rank(fp, m);
}

/// (k, id) with trivial action.
inline DiffModule trivial_module(const Field& f, const FiniteDiffGroup& g, std::size_t d = 1)
{
    DiffModule m{f, g, std::vector<Matrix>(g.order(), Matrix::identity(d)), {Matrix::identity(d), 0}};
    m.sigma_m.twist = (f.degree() - f.sigma_power()) % f.degree();
    return m;
}

inline std::vector<GroupElem> inverse_permutation(const FiniteDiffGroup& g)
{
    if (!g.sigma_injective()) throw Error(ErrorCode::NonInjectiveSigma, "sigma_G is not invertible");
    std::vector<GroupElem> inv(g.order());
    for (GroupElem x = 0; x < g.order(); ++x) inv[g.sigma(x)] = x;
    return inv;
}

/// The left regular module A[G] with sigma_M = sigma^{-1}, which satisfies
/// (dagger) whenever sigma is an automorphism.  For an involutive sigma_G and
/// sigma_A = id this is sigma itself.
inline DiffModule regular_module(const Field& f, const FiniteDiffGroup& g)
{
    const auto inv = inverse_permutation(g);
    const std::size_t m = g.order();
    DiffModule mod{f, g, {}, {Matrix(m, m), (f.degree() - f.sigma_power()) % f.degree()}};
    for (GroupElem x = 0; x < m; ++x) {
        Matrix r(m, m);
        for (GroupElem h = 0; h < m; ++h) r(g.mul(x, h), h) = 1;
        mod.rho.push_back(std::move(r));
    }
    for (GroupElem h = 0; h < m; ++h) mod.sigma_m.matrix(inv[h], h) = 1;
    return mod;
}

/// (A[G], sigma) as a right module over itself.
inline RightDiffModule right_regular_module(const Field& f, const FiniteDiffGroup& g)
{
    const std::size_t m = g.order();
    RightDiffModule mod{f, g, {}, {Matrix(m, m), f.sigma_power()}};
    for (GroupElem x = 0; x < m; ++x) {
        Matrix r(m, m);
        for (GroupElem h = 0; h < m; ++h) r(g.mul(h, x), h) = 1;
        mod.rho.push_back(std::move(r));
    }
    for (GroupElem h = 0; h < m; ++h) mod.sigma_m.matrix(g.sigma(h), h) = 1;
    return mod;
}

/// Searches the two-dimensional right difference modules over F_3 for
/// (Z/4, sigma(a) = 2a) and returns the first one whose invariants are not
/// preserved by sigma_M, with a witness vector.
inline std::optional<std::pair<RightDiffModule, Vector>> find_right_asymmetry_witness()
{
    const Field f = builtin_field(3, 1);
    const auto g = cyclic_group(4, 2);
    // All 2x2 matrices over F_3 indexed by base-3 digits.
    auto matrix_from = [](std::size_t code) {
        Matrix a(2, 2);
        for (auto& x : a.data) {
            x = static_cast<std::uint32_t>(code % 3);
            code /= 3;
        }
        return a;
    };
    for (std::size_t a_code = 0; a_code < 81; ++a_code) {
        const auto gen = matrix_from(a_code);
        std::vector<Matrix> rho{Matrix::identity(2)};
        for (int k = 1; k < 4; ++k) rho.push_back(linalg::mul(f, rho.back(), gen));
        if (linalg::mul(f, rho[3], gen) != Matrix::identity(2)) continue;
        for (std::size_t s_code = 0; s_code < 81; ++s_code) {
            RightDiffModule m{f, g, rho, {matrix_from(s_code), 0}};
            if (!validate_right(m)) continue;
            if (auto w = invariants_stability_witness(m)) return std::make_pair(m, *w);
        }
    }
    return std::nullopt;
}

}  // namespace diffcoh
