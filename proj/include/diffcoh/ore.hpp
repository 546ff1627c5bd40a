#pragma once

// Twisted polynomials sum t^i r_i over a difference ring (R, sigma), with
// coefficients written to the right of the powers of t, and the module
// R~ = coker(right multiplication by 1 - t).

#include <concepts>
#include <cstdint>
#include <vector>

#include "diffcoh/error.hpp"
#include "diffcoh/field.hpp"
#include "diffcoh/group.hpp"
#include "diffcoh/module.hpp"

namespace diffcoh {

template <typename R>
concept DifferenceRing = requires(const R& ring, const typename R::Element& a, const typename R::Element& b) {
    { ring.zero() } -> std::convertible_to<typename R::Element>;
    { ring.one() } -> std::convertible_to<typename R::Element>;
    { ring.add(a, b) } -> std::convertible_to<typename R::Element>;
    { ring.sub(a, b) } -> std::convertible_to<typename R::Element>;
    { ring.mul(a, b) } -> std::convertible_to<typename R::Element>;
    { ring.sigma(a) } -> std::convertible_to<typename R::Element>;
    { ring.sigma_invertible() } -> std::convertible_to<bool>;
    { ring.sigma_inv(a) } -> std::convertible_to<typename R::Element>;
    { ring.same_ring(ring) } -> std::convertible_to<bool>;
};

/// (F_q, Frob^s) as a difference ring.
class FieldRing {
public:
    using Element = FqElem;

    explicit FieldRing(Field f) : field_(std::move(f)) {}

    const Field& field() const { return field_; }
    Element zero() const { return {0}; }
    Element one() const { return {1}; }
    Element add(Element a, Element b) const { return field_.add(a, b); }
    Element sub(Element a, Element b) const { return field_.sub(a, b); }
    Element mul(Element a, Element b) const { return field_.mul(a, b); }
    Element sigma(Element a) const { return field_.sigma(a); }
    bool sigma_invertible() const { return true; }
    Element sigma_inv(Element a) const { return field_.sigma_inv(a); }
    bool same_ring(const FieldRing& other) const { return field_ == other.field_; }

private:
    Field field_;
};

/// A[G] with sigma(sum a_g g) = sum sigma_A(a_g) sigma_G(g).
class GroupAlgebra {
public:
    using Element = std::vector<std::uint32_t>;  // coefficient of each group element

    GroupAlgebra(Field f, FiniteDiffGroup g) : field_(std::move(f)), group_(std::move(g)) {}

    const Field& field() const { return field_; }
    const FiniteDiffGroup& group() const { return group_; }

    Element zero() const { return Element(group_.order(), 0); }
    Element one() const { return basis(group_.identity()); }
    Element basis(GroupElem g, std::uint32_t coeff = 1) const
    {
        Element e = zero();
        e[g] = coeff;
        return e;
    }
    Element add(const Element& a, const Element& b) const
    {
        Element c(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) c[i] = field_.add(a[i], b[i]);
        return c;
    }
    Element sub(const Element& a, const Element& b) const
    {
        Element c(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) c[i] = field_.sub(a[i], b[i]);
        return c;
    }
    Element mul(const Element& a, const Element& b) const
    {
        Element c = zero();
        for (GroupElem x = 0; x < a.size(); ++x)
            if (a[x])
                for (GroupElem y = 0; y < b.size(); ++y)
                    if (b[y]) c[group_.mul(x, y)] = field_.add(c[group_.mul(x, y)], field_.mul(a[x], b[y]));
        return c;
    }
    Element sigma(const Element& a) const
    {
        Element c = zero();
        for (GroupElem x = 0; x < a.size(); ++x)
            c[group_.sigma(x)] = field_.add(c[group_.sigma(x)], field_.sigma(a[x]));
        return c;
    }
    bool sigma_invertible() const { return group_.sigma_injective(); }
    Element sigma_inv(const Element& a) const
    {
        const auto inv = inverse_permutation(group_);
        Element c = zero();
        for (GroupElem x = 0; x < a.size(); ++x) c[inv[x]] = field_.sigma_inv(a[x]);
        return c;
    }
    bool same_ring(const GroupAlgebra& other) const
    {
        return field_ == other.field_ && group_.table() == other.group_.table() &&
               group_.sigma_map() == other.group_.sigma_map();
    }

    /// rho(r) = sum a_g rho(g) for a module over this ring.
    Matrix represent(const Element& r, const DiffModule& m) const
    {
        Matrix out(m.dim(), m.dim());
        for (GroupElem g = 0; g < r.size(); ++g)
            if (r[g]) out = linalg::add(field_, out, linalg::scale(field_, r[g], m.rho[g]));
        return out;
    }

private:
    Field field_;
    FiniteDiffGroup group_;
};

template <DifferenceRing Ring>
struct OrePoly {
    using Element = typename Ring::Element;

    Ring ring;
    std::vector<Element> coeffs;  // coeffs[i] multiplies t^i from the right

    OrePoly(Ring r, std::vector<Element> c) : ring(std::move(r)), coeffs(std::move(c)) { trim(); }

    static OrePoly constant(Ring r, Element c) { return OrePoly(r, {std::move(c)}); }
    static OrePoly t(Ring r) { return OrePoly(r, {r.zero(), r.one()}); }

    /// -1 when zero.
    long degree() const { return static_cast<long>(coeffs.size()) - 1; }

    void trim()
    {
        while (!coeffs.empty() && coeffs.back() == ring.zero()) coeffs.pop_back();
    }

    friend bool operator==(const OrePoly& a, const OrePoly& b) { return a.coeffs == b.coeffs; }
};

template <DifferenceRing Ring>
OrePoly<Ring> ore_add(const OrePoly<Ring>& f, const OrePoly<Ring>& g)
{
    if (!f.ring.same_ring(g.ring)) throw Error(ErrorCode::RingMismatch, "Ore polynomials over different rings");
    std::vector<typename Ring::Element> c(std::max(f.coeffs.size(), g.coeffs.size()), f.ring.zero());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < f.coeffs.size()) c[i] = f.ring.add(c[i], f.coeffs[i]);
        if (i < g.coeffs.size()) c[i] = f.ring.add(c[i], g.coeffs[i]);
    }
    return OrePoly<Ring>(f.ring, std::move(c));
}

/// (sum t^i r_i)(sum t^j r'_j) = sum_n t^n sum_{i+j=n} sigma^j(r_i) r'_j.
template <DifferenceRing Ring>
OrePoly<Ring> ore_mul(const OrePoly<Ring>& f, const OrePoly<Ring>& g)
{
    const auto& ring = f.ring;
    if (!ring.same_ring(g.ring)) throw Error(ErrorCode::RingMismatch, "Ore polynomials over different rings");
    if (f.coeffs.empty() || g.coeffs.empty()) return OrePoly<Ring>(ring, {});
    std::vector<typename Ring::Element> c(f.coeffs.size() + g.coeffs.size() - 1, ring.zero());
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
        auto twisted = f.coeffs[i];  // sigma^j(r_i), advanced with j
        for (std::size_t j = 0; j < g.coeffs.size(); ++j) {
            c[i + j] = ring.add(c[i + j], ring.mul(twisted, g.coeffs[j]));
            twisted = ring.sigma(twisted);
        }
    }
    return OrePoly<Ring>(ring, std::move(c));
}

/// f * (1 - t): coefficient n is r_n - sigma(r_{n-1}).
template <DifferenceRing Ring>
OrePoly<Ring> right_mul_one_minus_t(const OrePoly<Ring>& f)
{
    const auto& ring = f.ring;
    std::vector<typename Ring::Element> c(f.coeffs.size() + 1, ring.zero());
    for (std::size_t n = 0; n < c.size(); ++n) {
        if (n < f.coeffs.size()) c[n] = f.coeffs[n];
        if (n >= 1) c[n] = ring.sub(c[n], ring.sigma(f.coeffs[n - 1]));
    }
    return OrePoly<Ring>(ring, std::move(c));
}

/// (sum t^i r_i) . m = sum sigma_M^i(r_i . m).
inline Vector ore_act(const OrePoly<GroupAlgebra>& f, std::span<const std::uint32_t> m, const DiffModule& mod)
{
    if (m.size() != mod.dim()) throw Error(ErrorCode::DimensionMismatch, "vector does not live in the module");
    if (f.ring.group().order() != mod.group.order() || !f.ring.field().same_field(mod.field))
        throw Error(ErrorCode::DimensionMismatch, "polynomial ring does not act on this module");
    const auto& field = mod.field;
    Vector acc(mod.dim(), 0);
    // Horner from the top: sum_i sigma^i(r_i m) = r_0 m + sigma(r_1 m + sigma(r_2 m + ...)).
    for (std::size_t i = f.coeffs.size(); i-- > 0;) {
        auto term = linalg::apply(field, f.ring.represent(f.coeffs[i], mod), m);
        if (i + 1 < f.coeffs.size()) {
            // acc currently holds sum_{k > i} sigma^{k-i-1}(r_k m)
            const auto shifted = mod.sigma_m(field, acc);
            for (std::size_t k = 0; k < term.size(); ++k) term[k] = field.add(term[k], shifted[k]);
        }
        acc = std::move(term);
    }
    return acc;
}

/// The class of t^level * coeff in R~.
template <DifferenceRing Ring>
struct RTildeElem {
    Ring ring;
    std::size_t level = 0;
    typename Ring::Element coeff;
};

template <DifferenceRing Ring>
void require_invertible_sigma(const Ring& ring)
{
    if (!ring.sigma_invertible())
        throw Error(ErrorCode::NonInjectiveSigma, "R~ needs an injective sigma on the ring");
}

/// Canonical representative.  Over finite rings an injective sigma is an
/// automorphism, so every class is represented at level 0.
template <DifferenceRing Ring>
RTildeElem<Ring> rtilde_normalize(const RTildeElem<Ring>& x)
{
    require_invertible_sigma(x.ring);
    auto c = x.coeff;
    for (std::size_t i = 0; i < x.level; ++i) c = x.ring.sigma_inv(c);
    return {x.ring, 0, std::move(c)};
}

template <DifferenceRing Ring>
bool rtilde_equal(const RTildeElem<Ring>& a, const RTildeElem<Ring>& b)
{
    // Raise both to the common maximum level: (i, r) ~ (i+1, sigma(r)).
    require_invertible_sigma(a.ring);
    const std::size_t top = std::max(a.level, b.level);
    auto ca = a.coeff, cb = b.coeff;
    for (std::size_t i = a.level; i < top; ++i) ca = a.ring.sigma(ca);
    for (std::size_t i = b.level; i < top; ++i) cb = b.ring.sigma(cb);
    return ca == cb;
}

/// Left multiplication by t: (i, r) -> (i+1, r).
template <DifferenceRing Ring>
RTildeElem<Ring> rtilde_sigma(const RTildeElem<Ring>& x)
{
    require_invertible_sigma(x.ring);
    return {x.ring, x.level + 1, x.coeff};
}

/// The inverse of rtilde_sigma: (i, r) -> (i, sigma(r)).
template <DifferenceRing Ring>
RTildeElem<Ring> rtilde_sigma_inv(const RTildeElem<Ring>& x)
{
    require_invertible_sigma(x.ring);
    return {x.ring, x.level, x.ring.sigma(x.coeff)};
}

/// alpha: (R, sigma^{-1}) -> R~, r -> class of r.
template <DifferenceRing Ring>
RTildeElem<Ring> rtilde_from_ring(const Ring& ring, typename Ring::Element r)
{
    return {ring, 0, std::move(r)};
}

/// beta: R~ -> (R, sigma^{-1}), (i, r) -> sigma^{-i}(r).
template <DifferenceRing Ring>
typename Ring::Element rtilde_iso_to_inverse(const RTildeElem<Ring>& x)
{
    return rtilde_normalize(x).coeff;
}

}  // namespace diffcoh
