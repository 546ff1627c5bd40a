#pragma once

// H^j(G, M) from the bar complex, with cocycle representatives and the
// semilinear action induced by Phi (restriction along sigma_G followed by
// sigma_M).

#include <cstddef>
#include <optional>
#include <vector>

#include "diffcoh/bar.hpp"
#include "diffcoh/error.hpp"
#include "diffcoh/linalg.hpp"
#include "diffcoh/module.hpp"
#include "diffcoh/parallel.hpp"
#include "diffcoh/semilinear.hpp"

namespace diffcoh {

/// Rows of the largest differential allowed, counted over F_p.
inline constexpr std::size_t kMaxCochainRows = 500000;

/// One degree of the bar complex, resolved into cocycles mod coboundaries.
///
/// Representatives: the kernel basis of d^j read off the reduced echelon
/// form, kept in order whenever independent of the coboundaries.
class CohomologyDegree {
public:
    CohomologyDegree(const Field& f, std::size_t degree, std::size_t ambient, std::vector<Vector> coboundaries,
                     std::vector<Vector> cocycles)
        : field_(f), degree_(degree), ambient_(ambient), boundary_count_(coboundaries.size()),
          cocycle_count_(cocycles.size())
    {
        std::vector<Vector> columns = coboundaries;
        columns.insert(columns.end(), cocycles.begin(), cocycles.end());
        const auto e = linalg::rref(f, from_columns(columns, ambient));
        for (auto c : e.pivots)
            if (c >= boundary_count_) representatives_.push_back(cocycles[c - boundary_count_]);
        std::vector<Vector> basis = std::move(coboundaries);
        basis.insert(basis.end(), representatives_.begin(), representatives_.end());
        coords_.emplace(f, std::move(basis), ambient);
    }

    std::size_t degree() const { return degree_; }
    std::size_t dim() const { return representatives_.size(); }
    std::size_t cochain_dim() const { return ambient_; }
    std::size_t cocycle_dim() const { return cocycle_count_; }
    std::size_t coboundary_dim() const { return boundary_count_; }
    const std::vector<Vector>& representatives() const { return representatives_; }

    /// Class of a cocycle in the representative basis; nullopt if not a cocycle.
    std::optional<Vector> class_of(std::span<const std::uint32_t> cocycle) const
    {
        auto x = coords_->coordinates(cocycle);
        if (!x) return std::nullopt;
        return Vector(x->begin() + static_cast<std::ptrdiff_t>(boundary_count_), x->end());
    }

    /// Matrix (columns = images of representatives) of a cochain map into
    /// this degree, given as a function on cochains.
    template <typename CochainMap>
    Matrix induced_matrix(const CohomologyDegree& source, CochainMap&& map) const
    {
        Matrix out(dim(), source.dim());
        for (std::size_t i = 0; i < source.dim(); ++i) {
            const auto image = map(source.representatives()[i]);
            const auto cls = class_of(image);
            if (!cls) throw Error(ErrorCode::ChainMapViolation, "image of a cocycle is not a cocycle");
            out.set_column(i, *cls);
        }
        return out;
    }

private:
    Field field_;
    std::size_t degree_;
    std::size_t ambient_;
    std::size_t boundary_count_;
    std::size_t cocycle_count_;
    std::vector<Vector> representatives_;
    std::optional<linalg::SpanCoordinates> coords_;
};

/// Cohomology of the bar complex of (G, rho) in degrees 0..jmax.
class BarCohomology {
public:
    BarCohomology(const Field& f, const FiniteDiffGroup& g, std::vector<Matrix> rho, std::size_t d, std::size_t jmax,
                  bool normalized)
        : field_(f), group_(g), rho_(std::move(rho)), d_(d), normalized_(normalized)
    {
        require_normalized_ok(g, normalized);
        const CochainIndexer idx(g, normalized);
        if (idx.tuple_count(jmax) * d * f.degree() > kMaxCochainRows)
            throw Error(ErrorCode::DegreeLimit, "degree " + std::to_string(jmax) + " exceeds the cochain size limit");
        // Echelon forms of d^0..d^jmax are independent of each other.
        std::vector<linalg::Echelon> echelons(jmax + 1);
        std::vector<Matrix> diffs(jmax + 1);
        parallel_for(jmax + 1, [&](std::size_t j) {
            diffs[j] = bar_differential(g, f, rho_, d, j, normalized);
            echelons[j] = linalg::rref(f, diffs[j]);
        });
        for (std::size_t j = 0; j <= jmax; ++j) {
            std::vector<Vector> boundaries;
            if (j > 0)
                for (auto c : echelons[j - 1].pivots) boundaries.push_back(diffs[j - 1].column(c));
            auto cocycles = linalg::kernel(f, echelons[j], diffs[j].cols);
            ranks_.push_back(echelons[j].rank());
            degrees_.emplace_back(f, j, diffs[j].cols, std::move(boundaries), std::move(cocycles));
        }
    }

    BarCohomology(const DiffModule& m, std::size_t jmax, bool normalized)
        : BarCohomology(m.field, m.group, m.rho, m.dim(), jmax, normalized)
    {
    }

    const Field& field() const { return field_; }
    const FiniteDiffGroup& group() const { return group_; }
    std::size_t module_dim() const { return d_; }
    bool normalized() const { return normalized_; }
    std::size_t max_degree() const { return degrees_.size() - 1; }
    const CohomologyDegree& operator[](std::size_t j) const { return degrees_.at(j); }
    /// rank of d^j.
    std::size_t differential_rank(std::size_t j) const { return ranks_.at(j); }

private:
    Field field_;
    FiniteDiffGroup group_;
    std::vector<Matrix> rho_;
    std::size_t d_;
    bool normalized_;
    std::vector<CohomologyDegree> degrees_;
    std::vector<std::size_t> ranks_;
};

struct CohomologyResult {
    std::size_t degree = 0;
    std::size_t dim_k = 0;   // over F_q
    std::size_t dim_fp = 0;  // over F_p
    std::vector<Vector> representatives;
    SemilinearMap sigma;  // induced action on H^j in the representative basis
};

/// The map on H^j induced by Phi^j.
inline SemilinearMap sigma_on_cohomology(const DiffModule& m, const CohomologyDegree& h)
{
    const CochainSigma phi(m, h.degree(), use_normalized(m.group));
    return {h.induced_matrix(h, phi), m.sigma_m.twist};
}

inline std::vector<CohomologyResult> cohomology(const DiffModule& m, std::size_t jmax)
{
    const BarCohomology bar(m, jmax, use_normalized(m.group));
    std::vector<CohomologyResult> out;
    for (std::size_t j = 0; j <= jmax; ++j) {
        const auto& h = bar[j];
        out.push_back({j, h.dim(), h.dim() * m.field.degree(), h.representatives(), sigma_on_cohomology(m, h)});
    }
    return out;
}

/// Dimensions over F_q of H^j for cyclic G from the periodic resolution
/// ... -> k[G] -(g-1)-> k[G] -N-> k[G] -(g-1)-> k[G] -> k.
inline std::vector<std::size_t> cyclic_cohomology_oracle(const DiffModule& m, std::size_t jmax)
{
    const auto& g = m.group;
    std::optional<GroupElem> gen;
    for (GroupElem x = 0; x < g.order() && !gen; ++x)
        if (g.element_order(x) == g.order()) gen = x;
    if (!gen) throw Error(ErrorCode::NotCyclic, "group has no element of full order");
    const auto& f = m.field;
    const std::size_t d = m.dim();
    Matrix t = m.rho[*gen];
    for (std::size_t i = 0; i < d; ++i) t(i, i) = f.sub(t(i, i), 1);
    Matrix norm(d, d);
    Matrix power = Matrix::identity(d);
    for (std::size_t i = 0; i < g.order(); ++i) {
        norm = linalg::add(f, norm, power);
        power = linalg::mul(f, power, m.rho[*gen]);
    }
    const std::size_t rank_t = linalg::rank(f, t), rank_n = linalg::rank(f, norm);
    std::vector<std::size_t> dims;
    for (std::size_t j = 0; j <= jmax; ++j) {
        if (j == 0)
            dims.push_back(d - rank_t);
        else if (j % 2 == 1)
            dims.push_back((d - rank_n) - rank_t);
        else
            dims.push_back((d - rank_t) - rank_n);
    }
    return dims;
}

}  // namespace diffcoh
