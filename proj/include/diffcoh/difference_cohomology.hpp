#pragma once

// Difference cohomology H^j_sigma(G, M), computed two independent ways:
//
//   ses  - invariants of sigma on H^j plus coinvariants of sigma on H^{j-1};
//   cone - cohomology of the mapping cone of (1 - Phi) on the bar complex.
//
// Also stable cohomology (colimit along restriction maps) and the
// comparison H^j_sigma(G, M^infinity) = H^{j-1}_st(G, M).

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "diffcoh/bar.hpp"
#include "diffcoh/cohomology.hpp"
#include "diffcoh/error.hpp"
#include "diffcoh/linalg.hpp"
#include "diffcoh/module.hpp"
#include "diffcoh/parallel.hpp"
#include "diffcoh/polynomial.hpp"
#include "diffcoh/semilinear.hpp"

namespace diffcoh {

enum class Method { Ses, Cone };

inline std::string to_string(Method m) { return m == Method::Ses ? "ses" : "cone"; }

struct DiffCohResult {
    std::size_t degree = 0;
    std::size_t dim = 0;                // over F_p
    std::optional<std::size_t> inv;     // dim H^j(G,M)^sigma       (ses only)
    std::optional<std::size_t> coinv;   // dim H^{j-1}(G,M)_sigma   (ses only)
    Method method = Method::Ses;
};

struct H0Result {
    std::size_t dim = 0;        // over F_p
    std::vector<Vector> basis;  // F_p coordinates
};

/// M^G intersected with ker(sigma_M - id), over F_p.
inline H0Result h0_sigma_direct(const DiffModule& m)
{
    const Field fp = m.field.prime_field();
    const std::size_t nd = m.dim() * m.field.degree();
    Matrix stacked((m.group.order() + 1) * nd, nd);
    for (GroupElem g = 0; g < m.group.order(); ++g) {
        const auto r = restrict_scalars(m.field, m.rho[g]);
        for (std::size_t i = 0; i < nd; ++i)
            for (std::size_t j = 0; j < nd; ++j) stacked(g * nd + i, j) = fp.sub(r(i, j), i == j ? 1 : 0);
    }
    const auto s = restricted_minus_identity(m.field, m.sigma_m);
    for (std::size_t i = 0; i < nd; ++i)
        for (std::size_t j = 0; j < nd; ++j) stacked(m.group.order() * nd + i, j) = s(i, j);
    H0Result out;
    out.basis = linalg::kernel(fp, stacked);
    out.dim = out.basis.size();
    return out;
}

struct SesData {
    std::vector<DiffCohResult> rows;
    std::vector<CohomologyResult> cohomology;
};

/// dim H^j_sigma = dim H^j(G,M)^sigma + dim H^{j-1}(G,M)_sigma, with H^{-1} = 0.
inline SesData assemble_ses_detailed(const DiffModule& m, std::size_t jmax)
{
    if (auto report = validate_left(m); !report) throw Error(ErrorCode::InvalidModule, report.message);
    SesData out;
    out.cohomology = cohomology(m, jmax);
    std::vector<std::size_t> inv(jmax + 1), coinv(jmax + 1);
    parallel_for(jmax + 1, [&](std::size_t j) {
        inv[j] = semilinear_invariants(m.field, out.cohomology[j].sigma).dim;
        coinv[j] = semilinear_coinvariants(m.field, out.cohomology[j].sigma);
    });
    for (std::size_t j = 0; j <= jmax; ++j) {
        const std::size_t below = j == 0 ? 0 : coinv[j - 1];
        out.rows.push_back({j, inv[j] + below, inv[j], below, Method::Ses});
    }
    return out;
}

inline std::vector<DiffCohResult> assemble_ses(const DiffModule& m, std::size_t jmax)
{
    return assemble_ses_detailed(m, jmax).rows;
}

/// Compares d^j o Phi^j with Phi^{j+1} o d^j.  Both are semilinear with the
/// same twist, so they agree exactly when d * S_j = S_{j+1} * d^{(twist)}.
inline bool chain_map_holds(const DiffModule& m, std::size_t j, bool normalized)
{
    const auto& f = m.field;
    const std::size_t d = m.dim();
    const auto diff = bar_differential(m, j, normalized);
    const auto low = pullback_table(m.group, j, normalized, 1);
    const auto high = pullback_table(m.group, j + 1, normalized, 1);
    const auto& s = m.sigma_m.matrix;
    // d * S_j: column block c collects d's blocks T with low[T] = c, times S.
    Matrix lhs(diff.rows, diff.cols);
    for (std::size_t t = 0; t < low.size(); ++t) {
        if (low[t] == CochainIndexer::npos) continue;
        for (std::size_t r = 0; r < diff.rows; ++r)
            for (std::size_t a = 0; a < d; ++a) {
                const auto x = diff(r, t * d + a);
                if (!x) continue;
                for (std::size_t b = 0; b < d; ++b) {
                    auto& y = lhs(r, low[t] * d + b);
                    y = f.add(y, f.mul(x, s(a, b)));
                }
            }
    }
    const auto twisted = linalg::frobenius_entries(f, diff, m.sigma_m.twist);
    Matrix rhs(diff.rows, diff.cols);
    for (std::size_t t = 0; t < high.size(); ++t) {
        if (high[t] == CochainIndexer::npos) continue;
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b) {
                const auto x = s(a, b);
                if (!x) continue;
                for (std::size_t c = 0; c < diff.cols; ++c) {
                    const auto y = twisted(high[t] * d + b, c);
                    if (y) rhs(t * d + a, c) = f.add(rhs(t * d + a, c), f.mul(x, y));
                }
            }
    }
    return lhs == rhs;
}

/// Cone differential D^j -> D^{j+1} over F_p, D^j = C^j + C^{j-1}:
/// (x, y) -> (d x, (1 - Phi) x - d y).
inline Matrix cone_differential(const DiffModule& m, std::size_t j, bool normalized)
{
    const Field& f = m.field;
    const Field fp = f.prime_field();
    const std::size_t n = f.degree();
    const auto dj = restrict_scalars(f, bar_differential(m, j, normalized));
    const auto phi = restrict_scalars(f, sigma_on_cochains(m, j, normalized));
    const std::size_t cj = dj.cols, cj1 = dj.rows;
    const std::size_t cjm = j == 0 ? 0 : cochain_dim(m, j - 1, normalized) * n;
    Matrix out(cj1 + cj, cj + cjm);
    for (std::size_t r = 0; r < cj1; ++r)
        for (std::size_t c = 0; c < cj; ++c) out(r, c) = dj(r, c);
    for (std::size_t r = 0; r < cj; ++r)
        for (std::size_t c = 0; c < cj; ++c) out(cj1 + r, c) = fp.sub(r == c ? 1 : 0, phi(r, c));
    if (j > 0) {
        const auto dprev = restrict_scalars(f, bar_differential(m, j - 1, normalized));
        for (std::size_t r = 0; r < cj; ++r)
            for (std::size_t c = 0; c < cjm; ++c) out(cj1 + r, cj + c) = fp.neg(dprev(r, c));
    }
    return out;
}

/// H^j of the cone of (1 - Phi), over F_p.  Throws ChainMapViolation when
/// Phi fails to commute with the bar differential.
inline std::vector<DiffCohResult> cone_cohomology(const DiffModule& m, std::size_t jmax)
{
    if (auto shapes = check_shapes(m); !shapes) throw Error(ErrorCode::InvalidModule, shapes.message);
    const bool normalized = use_normalized(m.group);
    const CochainIndexer idx(m.group, normalized);
    if (idx.tuple_count(jmax) * m.dim() * m.field.degree() > kMaxCochainRows)
        throw Error(ErrorCode::DegreeLimit, "degree " + std::to_string(jmax) + " exceeds the cochain size limit");
    std::vector<char> chain_ok(jmax + 1);
    parallel_for(jmax + 1, [&](std::size_t j) { chain_ok[j] = chain_map_holds(m, j, normalized); });
    for (std::size_t j = 0; j <= jmax; ++j)
        if (!chain_ok[j])
            throw Error(ErrorCode::ChainMapViolation, "Phi is not a chain map in degree " + std::to_string(j));
    const Field fp = m.field.prime_field();
    std::vector<std::size_t> ranks(jmax + 1), dims(jmax + 1);
    parallel_for(jmax + 1, [&](std::size_t j) {
        auto cone = cone_differential(m, j, normalized);
        dims[j] = cone.cols;
        ranks[j] = linalg::rank(fp, std::move(cone));
    });
    std::vector<DiffCohResult> out;
    for (std::size_t j = 0; j <= jmax; ++j) {
        const std::size_t below = j == 0 ? 0 : ranks[j - 1];
        out.push_back({j, dims[j] - ranks[j] - below, std::nullopt, std::nullopt, Method::Cone});
    }
    return out;
}

struct ColimitResult {
    std::size_t degree = 0;
    std::size_t dim_k = 0;               // over F_q
    std::size_t dim_fp = 0;              // over F_p
    std::size_t stabilization_index = 0;  // periods until the eventual image is reached
    bool stabilized = true;              // rank(phi^D) == rank(phi^{D+1})
};

/// colim of V -phi-> V -phi-> ... for an endomorphism phi of F_q^D.
inline ColimitResult eventual_image(const Field& f, const Matrix& phi, std::size_t degree)
{
    ColimitResult out;
    out.degree = degree;
    const std::size_t big = phi.rows;
    const auto top = linalg::power(f, phi, big);
    out.dim_k = linalg::rank(f, top);
    out.dim_fp = out.dim_k * f.degree();
    out.stabilized = linalg::rank(f, linalg::mul(f, top, phi)) == out.dim_k;
    Matrix power = Matrix::identity(big);
    while (linalg::rank(f, power) != out.dim_k) {
        power = linalg::mul(f, power, phi);
        ++out.stabilization_index;
    }
    return out;
}

/// H^j_st from the cohomology of M^{(a)}: the one-period composite
/// f -> f o sigma_G^c, iterated.
inline ColimitResult stable_cohomology(const BarCohomology& level_a, const PeriodicityProfile& profile, std::size_t j)
{
    const auto& g = level_a.group();
    const auto& h = level_a[j];
    const auto table = pullback_table(g, j, level_a.normalized(), profile.period);
    const auto phi = h.induced_matrix(h, [&](const Vector& cochain) {
        return restrict_along_sigma(table, level_a.module_dim(), cochain);
    });
    return eventual_image(level_a.field(), phi, j);
}

inline ColimitResult stable_cohomology(const DiffModule& m, std::size_t j)
{
    const auto profile = sigma_periodicity(m.group);
    const auto level = twist(m, profile.preperiod);
    const BarCohomology bar(level, j, use_normalized(m.group));
    return stable_cohomology(bar, profile, j);
}

/// dim over F_q of the weak invariants: the union over n of the vectors fixed
/// by Im(sigma_G^n).  The images decrease and are constant from the preperiod on.
inline std::size_t weak_invariants_dim(const DiffModule& m)
{
    const auto profile = sigma_periodicity(m.group);
    std::vector<Matrix> image_action;
    for (GroupElem g = 0; g < m.group.order(); ++g)
        image_action.push_back(m.rho[m.group.sigma_power(g, profile.preperiod)]);
    return fixed_space(m.field, image_action, m.dim()).size();
}

struct ShiftStableRow {
    std::size_t degree = 0;          // j >= 1
    std::size_t shift_side = 0;      // dim_Fp H^j_sigma(G, M^infinity)
    std::size_t stable_side = 0;     // dim_Fp H^{j-1}_st(G, M)
    std::size_t shift_invariants = 0;  // dim of sigma-fixed classes in H^j(G, M^infinity), truncated model
    bool presentation_injective = true;
    bool agree() const { return shift_side == stable_side && shift_invariants == 0 && presentation_injective; }
};

struct ShiftStableReport {
    PeriodicityProfile profile;
    std::vector<ShiftStableRow> rows;
    bool all_agree() const
    {
        for (const auto& r : rows)
            if (!r.agree()) return false;
        return true;
    }
};

/// H^q(G, M^{(i)}) for every level of the shift system, with the maps
/// induced by restriction along sigma_G between consecutive levels.
class ShiftCohomology {
public:
    ShiftCohomology(const ShiftSystem& system, std::size_t qmax) : system_(&system)
    {
        const bool normalized = use_normalized(system.levels.front().group);
        levels_.resize(system.levels.size());
        parallel_for(system.levels.size(),
                     [&](std::size_t i) { levels_[i].emplace(system.levels[i], qmax, normalized); });
    }

    const BarCohomology& level(std::size_t i) const { return *levels_[system_->level_index(i)]; }

    /// H^q(M^{(i)}) -> H^q(M^{(i+1)}).
    Matrix structure_map(std::size_t i, std::size_t q) const
    {
        const auto& src = level(i);
        const auto& dst = level(i + 1);
        const auto table = pullback_table(src.group(), q, src.normalized(), 1);
        return dst[q].induced_matrix(src[q], [&](const Vector& cochain) {
            return restrict_along_sigma(table, src.module_dim(), cochain);
        });
    }

private:
    const ShiftSystem* system_;
    std::vector<std::optional<BarCohomology>> levels_;
};

/// Coinvariants of the shift on sum_{i >= 0} V_i, where V_i = H^q(M^{(i)}).
///
/// The prefix levels are identified with their images in the tail, so only
/// the periodic tail matters.  Writing the tail as U[z] with
/// U = V_a + ... + V_{a+c-1} and z the shift by one period, the shift is
/// T0 + z T1 (T0 inside a period, T1 wrapping to the next), and the
/// coinvariants are F_q[z]^U / (T0 + z T1 - 1), of dimension deg det.
/// Returns nullopt if that presentation matrix is singular.
inline std::optional<std::size_t> shift_coinvariants(const ShiftCohomology& sc, const PeriodicityProfile& profile,
                                                     const Field& f, std::size_t q)
{
    const std::size_t a = profile.preperiod, c = profile.period;
    std::vector<std::size_t> offset{0};
    for (std::size_t i = a; i < a + c; ++i) offset.push_back(offset.back() + sc.level(i)[q].dim());
    const std::size_t total = offset.back();
    PolyMatrix pres(total, std::vector<Poly>(total));
    for (std::size_t k = 0; k < total; ++k) pres[k][k] = {f.neg(1)};
    for (std::size_t i = a; i < a + c; ++i) {
        const auto map = sc.structure_map(i, q);
        const bool wraps = i + 1 == a + c;
        const std::size_t src = offset[i - a], dst = wraps ? offset[0] : offset[i - a + 1];
        for (std::size_t r = 0; r < map.rows; ++r)
            for (std::size_t col = 0; col < map.cols; ++col) {
                const auto x = map(r, col);
                if (!x) continue;
                auto& entry = pres[dst + r][src + col];
                if (wraps) {
                    entry.resize(std::max<std::size_t>(entry.size(), 2), 0);
                    entry[1] = f.add(entry[1], x);
                } else {
                    entry.resize(std::max<std::size_t>(entry.size(), 1), 0);
                    entry[0] = f.add(entry[0], x);
                }
                poly::trim(entry);
            }
    }
    return determinant_degree(f, std::move(pres));
}

/// dim of the shift-fixed vectors in V_0 + ... + V_L (mapped into levels
/// 0 .. L+1), over F_q.
inline std::size_t truncated_shift_invariants(const ShiftCohomology& sc, const Field& f, std::size_t q,
                                              std::size_t truncation)
{
    std::vector<std::size_t> offset{0};
    for (std::size_t i = 0; i <= truncation + 1; ++i) offset.push_back(offset.back() + sc.level(i)[q].dim());
    const std::size_t cols = offset[truncation + 1];
    Matrix m(offset.back(), cols);
    for (std::size_t i = 0; i <= truncation; ++i) {
        const auto map = sc.structure_map(i, q);
        for (std::size_t k = offset[i]; k < offset[i + 1]; ++k) m(k, k) = f.neg(1);
        for (std::size_t r = 0; r < map.rows; ++r)
            for (std::size_t col = 0; col < map.cols; ++col) m(offset[i + 1] + r, offset[i] + col) = map(r, col);
    }
    return cols - linalg::rank(f, m);
}

/// Both sides of H^j_sigma(G, M^infinity) = H^{j-1}_st(G, M) for 1 <= j <= jmax.
inline ShiftStableReport theorem_3_8_check(const DiffModule& m, std::size_t jmax)
{
    const auto system = m_infinity(m);
    ShiftStableReport report;
    report.profile = system.profile;
    if (jmax == 0) return report;
    const ShiftCohomology sc(system, jmax - 1);
    const auto& level_a = sc.level(system.profile.preperiod);
    const std::size_t n = m.field.degree();
    for (std::size_t j = 1; j <= jmax; ++j) {
        const std::size_t q = j - 1;
        ShiftStableRow row;
        row.degree = j;
        const auto coinv = shift_coinvariants(sc, system.profile, m.field, q);
        row.presentation_injective = coinv.has_value();
        row.shift_side = coinv.value_or(0) * n;
        // The invariant half of H^j_sigma(M^infinity) comes from H^j; that
        // degree is only available up to jmax - 1, so it is checked on q as well.
        const std::size_t truncation = system.profile.preperiod + system.profile.period;
        row.shift_invariants = truncated_shift_invariants(sc, m.field, q, truncation) * n;
        row.stable_side = stable_cohomology(level_a, system.profile, q).dim_fp;
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace diffcoh
