#pragma once

// Difference rational cohomology in the two computable cases:
//
//   G_m: a difference module is a Z-graded space with maps x: M^j -> M^{pj};
//        classical higher cohomology vanishes, so only weight 0 contributes.
//   G_a: H*(G_a, F_p) = Lambda(a_0, a_1, ...) (x) S(b_1, b_2, ...), with the
//        shift a_i -> a_{i+1}, b_i -> b_{i+1}; taken as input data.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "diffcoh/error.hpp"
#include "diffcoh/field.hpp"
#include "diffcoh/linalg.hpp"

namespace diffcoh {

// ---------------------------------------------------------------- G_m

struct XMap {
    Matrix matrix;                  // dim M^{target} x dim M^{source}
    std::optional<std::int64_t> target;  // defaults to p * source
};

struct GradedDiffModule {
    Field field;
    std::map<std::int64_t, std::size_t> weights;  // weight -> dim M^j
    std::map<std::int64_t, XMap> xmaps;           // keyed by source weight

    std::uint32_t p() const { return field.characteristic(); }

    std::size_t dim_at(std::int64_t j) const
    {
        const auto it = weights.find(j);
        return it == weights.end() ? 0 : it->second;
    }

    std::size_t total_dim() const
    {
        std::size_t s = 0;
        for (const auto& [j, d] : weights) s += d;
        return s;
    }

    /// x on M^j; the zero map when none is declared.
    Matrix xmap(std::int64_t j) const
    {
        const auto it = xmaps.find(j);
        if (it != xmaps.end()) return it->second.matrix;
        return Matrix(dim_at(static_cast<std::int64_t>(p()) * j), dim_at(j));
    }

    friend bool operator==(const GradedDiffModule& a, const GradedDiffModule& b)
    {
        if (!(a.field == b.field)) return false;
        auto support = [](const GradedDiffModule& m) {
            std::set<std::int64_t> s;
            for (const auto& [j, d] : m.weights)
                if (d) s.insert(j);
            return s;
        };
        const auto sa = support(a);
        if (sa != support(b)) return false;
        for (auto j : sa)
            if (a.dim_at(j) != b.dim_at(j) || !(a.xmap(j) == b.xmap(j))) return false;
        return true;
    }
};

struct GradedValidation {
    bool ok = true;
    std::string message;
    std::optional<std::int64_t> weight;
    explicit operator bool() const { return ok; }
};

/// x M^j must land in M^{pj}, with matrix shapes matching the weight dims.
inline GradedValidation validate_graded(const GradedDiffModule& m)
{
    const auto p = static_cast<std::int64_t>(m.p());
    for (const auto& [j, x] : m.xmaps) {
        const std::int64_t expected = p * j;
        if (x.target && *x.target != expected)
            return {false,
                    "x maps weight " + std::to_string(j) + " to weight " + std::to_string(*x.target) +
                        ", expected " + std::to_string(expected),
                    j};
        if (x.matrix.cols != m.dim_at(j) || x.matrix.rows != m.dim_at(expected))
            return {false,
                    "x on weight " + std::to_string(j) + " has shape " + std::to_string(x.matrix.rows) + "x" +
                        std::to_string(x.matrix.cols) + ", expected " + std::to_string(m.dim_at(expected)) + "x" +
                        std::to_string(m.dim_at(j)),
                    j};
        for (auto v : x.matrix.data)
            if (v >= m.field.order()) return {false, "entry outside the field", j};
    }
    return {};
}

struct OrbitClass {
    std::int64_t representative = 0;  // 0 or prime to p
    std::vector<std::int64_t> chain;  // weights of the module in this class, by increasing p-valuation
};

/// j -> j with all factors of p removed; 0 stays 0.
inline std::int64_t orbit_representative(std::int64_t j, std::uint32_t p)
{
    if (j == 0) return 0;
    const auto pp = static_cast<std::int64_t>(p);
    while (j % pp == 0) j /= pp;
    return j;
}

/// Splits M along the classes j p^N.  x never leaves a class, so the parts
/// are submodules and their sum is M.
inline std::vector<std::pair<OrbitClass, GradedDiffModule>> decompose_orbits(const GradedDiffModule& m)
{
    if (auto v = validate_graded(m); !v) throw Error(ErrorCode::InvalidModule, v.message);
    const auto p = m.p();
    std::map<std::int64_t, std::vector<std::int64_t>> classes;
    for (const auto& [j, d] : m.weights)
        if (d) classes[orbit_representative(j, p)].push_back(j);
    std::vector<std::pair<OrbitClass, GradedDiffModule>> out;
    for (auto& [rep, chain] : classes) {
        std::sort(chain.begin(), chain.end(), [](auto a, auto b) { return std::abs(a) < std::abs(b); });
        GradedDiffModule part{m.field, {}, {}};
        for (auto j : chain) part.weights[j] = m.dim_at(j);
        for (auto j : chain)
            if (auto it = m.xmaps.find(j); it != m.xmaps.end()) part.xmaps[j] = {it->second.matrix, std::nullopt};
        out.push_back({OrbitClass{rep, chain}, std::move(part)});
    }
    return out;
}

/// Direct sum of graded modules with disjoint supports.
inline GradedDiffModule direct_sum(const std::vector<GradedDiffModule>& parts, const Field& f)
{
    GradedDiffModule out{f, {}, {}};
    for (const auto& part : parts) {
        for (const auto& [j, d] : part.weights) {
            if (!d) continue;
            if (out.dim_at(j)) throw Error(ErrorCode::InvalidModule, "overlapping weight " + std::to_string(j));
            out.weights[j] = d;
        }
        for (const auto& [j, x] : part.xmaps) out.xmaps[j] = {x.matrix, std::nullopt};
    }
    return out;
}

struct GmCohomology {
    std::size_t h0 = 0;  // dim_Fp (M^0)^x
    std::size_t h1 = 0;  // dim_Fp (M^0)_x
};

/// H^0_sigma = ker(x_0 - 1) and H^1_sigma = coker(x_0 - 1) on the weight-0 block;
/// everything else vanishes.
inline GmCohomology gm_difference_cohomology(const GradedDiffModule& m)
{
    if (auto v = validate_graded(m); !v) throw Error(ErrorCode::InvalidModule, v.message);
    const auto& f = m.field;
    const std::size_t d = m.dim_at(0);
    auto a = m.xmap(0);
    for (std::size_t i = 0; i < d; ++i) a(i, i) = f.sub(a(i, i), 1);
    const std::size_t r = linalg::rank(f, a);
    return {(d - r) * f.degree(), (d - r) * f.degree()};
}

/// colim(M^0 -x-> M^0 -x-> ...), the eventual image of x_0; dim over F_p.
inline std::size_t gm_stable_h0(const GradedDiffModule& m)
{
    if (auto v = validate_graded(m); !v) throw Error(ErrorCode::InvalidModule, v.message);
    const std::size_t d = m.dim_at(0);
    return linalg::rank(m.field, linalg::power(m.field, m.xmap(0), d)) * m.field.degree();
}

/// The trivial module k: weight 0, x = 1.
inline GradedDiffModule gm_trivial_module(const Field& f)
{
    GradedDiffModule m{f, {{0, 1}}, {}};
    m.xmaps[0] = {Matrix::identity(1), std::nullopt};
    return m;
}

/// k[T, T^{-1}] cut to weights |j| <= bound, x: T^j -> T^{pj} whenever |pj| <= bound.
inline GradedDiffModule gm_regular_module(const Field& f, std::int64_t bound)
{
    GradedDiffModule m{f, {}, {}};
    const auto p = static_cast<std::int64_t>(f.characteristic());
    for (std::int64_t j = -bound; j <= bound; ++j) m.weights[j] = 1;
    for (std::int64_t j = -bound; j <= bound; ++j) {
        const bool inside = std::abs(p * j) <= bound;
        Matrix x(inside ? 1 : 0, 1);
        if (inside) x(0, 0) = 1;
        m.xmaps[j] = {x, std::nullopt};
    }
    return m;
}

// ---------------------------------------------------------------- G_a

/// Monomial in a_i (i >= 0, degree 1, exterior) and b_i (i >= 1, degree 2,
/// symmetric).
struct GaMonomial {
    std::vector<std::uint32_t> exterior;   // strictly increasing
    std::vector<std::uint32_t> symmetric;  // weakly increasing

    std::size_t degree() const { return exterior.size() + 2 * symmetric.size(); }

    GaMonomial shift() const
    {
        GaMonomial out = *this;
        for (auto& i : out.exterior) ++i;
        for (auto& i : out.symmetric) ++i;
        return out;
    }

    /// Smallest index, measured from each generator family's floor.
    std::optional<std::uint32_t> min_level() const
    {
        std::optional<std::uint32_t> lo;
        if (!exterior.empty()) lo = exterior.front();
        if (!symmetric.empty()) lo = std::min(lo.value_or(symmetric.front() - 1), symmetric.front() - 1);
        return lo;
    }

    /// Not the shift of any monomial.
    bool at_floor() const
    {
        return (!exterior.empty() && exterior.front() == 0) || (!symmetric.empty() && symmetric.front() == 1);
    }

    friend auto operator<=>(const GaMonomial&, const GaMonomial&) = default;
};

/// All monomials of the given degree with every index <= bound.
inline std::vector<GaMonomial> ga_monomials(std::size_t degree, std::uint32_t bound)
{
    std::vector<GaMonomial> out;
    for (std::size_t s = 0; 2 * s <= degree; ++s) {
        const std::size_t e = degree - 2 * s;
        std::vector<std::vector<std::uint32_t>> ext, sym;
        std::vector<std::uint32_t> cur;
        auto pick_ext = [&](auto&& self, std::uint32_t from) -> void {
            if (cur.size() == e) {
                ext.push_back(cur);
                return;
            }
            for (std::uint32_t i = from; i <= bound; ++i) {
                cur.push_back(i);
                self(self, i + 1);
                cur.pop_back();
            }
        };
        auto pick_sym = [&](auto&& self, std::uint32_t from) -> void {
            if (cur.size() == s) {
                sym.push_back(cur);
                return;
            }
            for (std::uint32_t i = from; i <= bound; ++i) {
                cur.push_back(i);
                self(self, i);
                cur.pop_back();
            }
        };
        pick_ext(pick_ext, 0);
        pick_sym(pick_sym, 1);
        for (const auto& x : ext)
            for (const auto& y : sym) out.push_back({x, y});
    }
    return out;
}

/// Coinvariants of the shift on degree-q classes with indices <= bound:
/// one per monomial outside the image of the shift.  In degree 0 the shift
/// is the identity on the unit, which contributes one class.
inline std::size_t ga_orbit_count(std::size_t degree, std::uint32_t bound)
{
    if (degree == 0) return 1;
    const auto monos = ga_monomials(degree, bound);
    return static_cast<std::size_t>(std::count_if(monos.begin(), monos.end(), [](const auto& m) { return m.at_floor(); }));
}

/// The shift on degree-q monomials is injective and raises the minimum
/// level, so a nonzero combination can never be fixed: its lowest-level
/// monomial is missing from its image.  Verified on the truncation.
inline bool ga_shift_has_no_invariants(std::size_t degree, std::uint32_t bound)
{
    if (degree == 0) return false;
    std::set<GaMonomial> images;
    for (const auto& m : ga_monomials(degree, bound)) {
        const auto s = m.shift();
        if (!(*s.min_level() > *m.min_level())) return false;
        if (!images.insert(s).second) return false;
    }
    return true;
}

struct MaybeInfiniteDim {
    bool infinite = false;
    std::size_t dim = 0;
    std::vector<std::size_t> evidence;       // counts at the truncations below
    std::vector<std::uint32_t> truncations;  // N, N+1, N+2

    friend bool operator==(const MaybeInfiniteDim& a, const MaybeInfiniteDim& b)
    {
        return a.infinite == b.infinite && (a.infinite || a.dim == b.dim);
    }
};

inline MaybeInfiniteDim finite_dim(std::size_t d) { return {false, d, {}, {}}; }

/// Orbit count with its growth verdict across N, N+1, N+2.
inline MaybeInfiniteDim ga_coinvariants(std::size_t degree, std::uint32_t bound)
{
    MaybeInfiniteDim out;
    for (std::uint32_t n = bound; n <= bound + 2; ++n) {
        out.truncations.push_back(n);
        out.evidence.push_back(ga_orbit_count(degree, n));
    }
    const auto& e = out.evidence;
    if (e[0] < e[1] && e[1] < e[2]) {
        out.infinite = true;
    } else if (e[0] == e[1] && e[1] == e[2]) {
        out.dim = e[0];
    } else {
        throw Error(ErrorCode::TruncationTooSmall,
                    "orbit count in degree " + std::to_string(degree) + " has not settled at truncation " +
                        std::to_string(bound));
    }
    return out;
}

struct GaRow {
    std::size_t degree = 0;
    MaybeInfiniteDim dim;
    std::size_t inv = 0;    // H^j(G_a, F_p)^sigma
    MaybeInfiniteDim coinv;  // H^{j-1}(G_a, F_p)_sigma
};

/// dim H^j_sigma(G_a, F_p) for j = 0..jmax.
inline std::vector<GaRow> ga_example_dims(std::uint32_t p, std::size_t jmax, std::uint32_t truncation)
{
    if (!detail::is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    if (p == 2) throw Error(ErrorCode::InvalidScenario, "the G_a example needs p > 2");
    if (truncation < jmax + 4)
        throw Error(ErrorCode::TruncationTooSmall,
                    "truncation " + std::to_string(truncation) + " < jmax + 4 = " + std::to_string(jmax + 4));
    std::vector<GaRow> rows;
    for (std::size_t j = 0; j <= jmax; ++j) {
        GaRow row;
        row.degree = j;
        // The unit is fixed; in positive degrees the shift has no fixed vectors.
        if (j > 0 && !ga_shift_has_no_invariants(j, truncation))
            throw Error(ErrorCode::ChainMapViolation, "shift fixes a monomial in degree " + std::to_string(j));
        row.inv = j == 0 ? 1 : 0;
        row.coinv = j == 0 ? finite_dim(0) : ga_coinvariants(j - 1, truncation);
        row.dim = row.coinv.infinite ? row.coinv : finite_dim(row.inv + row.coinv.dim);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace diffcoh
