#include <gtest/gtest.h>

#include "diffcoh/selftest.hpp"
#include "support.hpp"

using namespace diffcoh;

namespace {

using FPoly = OrePoly<FieldRing>;

FPoly opoly(const FieldRing& r, std::vector<std::uint32_t> c)
{
    std::vector<FqElem> e;
    for (auto x : c) e.push_back({x});
    return FPoly(r, std::move(e));
}

}  // namespace

TEST(OreMul, TwistedProductInF4)
{
    const FieldRing r(builtin_field(2, 2, 1));
    const auto u = r.field().basis(1);
    // (t u)(t u) = t^2 sigma(u) u = t^2 (u+1) u = t^2
    EXPECT_EQ(ore_mul(opoly(r, {0, u}), opoly(r, {0, u})), opoly(r, {0, 0, 1}));
}

TEST(OreMul, CommutationLawForEveryElement)
{
    for (const auto& f : {builtin_field(2, 2, 1), builtin_field(3, 2, 1), builtin_field(2, 3, 1), builtin_field(2, 3, 2)}) {
        const FieldRing r(f);
        for (std::uint32_t x = 0; x < f.order(); ++x)
            EXPECT_EQ(ore_mul(opoly(r, {x}), FPoly::t(r)), opoly(r, {0, f.sigma(x)}));
    }
}

TEST(OreMul, UnitLaw)
{
    Rng rng(3);
    const FieldRing r(builtin_field(3, 2, 1));
    const auto one = FPoly::constant(r, r.one());
    for (int i = 0; i < 20; ++i) {
        const auto f = random_ore(rng, r, 4);
        EXPECT_EQ(ore_mul(f, one), f);
        EXPECT_EQ(ore_mul(one, f), f);
    }
}

TEST(OreMul, AssociativeAndDistributive)
{
    Rng rng(5);
    EXPECT_TRUE(ore_laws_hold(rng, FieldRing(builtin_field(2, 2, 1)), 200));
    EXPECT_TRUE(ore_laws_hold(rng, FieldRing(builtin_field(3, 2, 1)), 200));
}

TEST(OreMul, DegreeIsAdditiveOverAField)
{
    Rng rng(6);
    const FieldRing r(builtin_field(2, 3, 1));
    for (int i = 0; i < 50; ++i) {
        const auto f = random_ore(rng, r, 4), g = random_ore(rng, r, 4);
        if (f.degree() < 0 || g.degree() < 0) continue;
        EXPECT_EQ(ore_mul(f, g).degree(), f.degree() + g.degree());
    }
}

TEST(OreMul, RingMismatch)
{
    const FieldRing a(builtin_field(3, 2, 1)), b(builtin_field(3, 2, 0));
    try {
        ore_mul(FPoly::t(a), FPoly::t(b));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::RingMismatch);
    }
}

TEST(OreMul, GroupAlgebraSigmaIsRingEndomorphism)
{
    Rng rng(8);
    const auto f = builtin_field(3, 1);
    for (const auto& g : {cyclic_group(4, 2), symmetric_group_s3(1), cyclic_group(6, 5)}) {
        const GroupAlgebra ring(f, g);
        auto random_elem = [&] {
            GroupAlgebra::Element e(g.order());
            for (auto& x : e) x = rng.element(f);
            return e;
        };
        EXPECT_EQ(ring.sigma(ring.one()), ring.one());
        for (int i = 0; i < 20; ++i) {
            const auto x = random_elem(), y = random_elem();
            EXPECT_EQ(ring.sigma(ring.mul(x, y)), ring.mul(ring.sigma(x), ring.sigma(y)));
            EXPECT_EQ(ring.sigma(ring.add(x, y)), ring.add(ring.sigma(x), ring.sigma(y)));
        }
    }
}

TEST(RightMulOneMinusT, OneGivesOneMinusT)
{
    const FieldRing r(builtin_field(3, 2, 1));
    EXPECT_EQ(right_mul_one_minus_t(FPoly::constant(r, r.one())), opoly(r, {1, 2}));
}

TEST(RightMulOneMinusT, TopCoefficientPicksUpSigma)
{
    // (t r)(1 - t) = t r - t^2 sigma(r)
    const FieldRing ring(builtin_field(2, 2, 1));
    const auto& f = ring.field();
    const auto u = f.basis(1);
    EXPECT_EQ(right_mul_one_minus_t(opoly(ring, {0, u})), opoly(ring, {0, u, f.neg(f.sigma(u))}));
    const FieldRing plain(builtin_field(3, 1));
    EXPECT_EQ(right_mul_one_minus_t(opoly(plain, {0, 2})), opoly(plain, {0, 2, 1}));
}

TEST(RightMulOneMinusT, AgreesWithOreMul)
{
    Rng rng(9);
    const FieldRing r(builtin_field(3, 2, 1));
    const auto one_minus_t = opoly(r, {1, 2});
    for (int i = 0; i < 50; ++i) {
        const auto f = random_ore(rng, r, 5);
        EXPECT_EQ(right_mul_one_minus_t(f), ore_mul(f, one_minus_t));
    }
}

TEST(RightMulOneMinusT, InjectiveOnDegreeEightSliceOverF9)
{
    const Field f = builtin_field(3, 2, 1);
    const Field fp = f.prime_field();
    const FieldRing r(f);
    const std::size_t slots = 9, n = f.degree();
    Matrix m((slots + 1) * n, slots * n);
    for (std::size_t i = 0; i < slots; ++i)
        for (std::uint32_t k = 0; k < n; ++k) {
            std::vector<FqElem> c(slots, FqElem{0});
            c[i] = {f.basis(k)};
            const auto img = right_mul_one_minus_t(FPoly(r, c));
            for (std::size_t deg = 0; deg < img.coeffs.size(); ++deg)
                for (std::uint32_t b = 0; b < n; ++b) m(deg * n + b, i * n + k) = f.coeff(img.coeffs[deg].value, b);
        }
    EXPECT_EQ(linalg::rank(fp, m), slots * n);
}

TEST(RTilde, DefiningRelationAndNormalForm)
{
    const FieldRing r(builtin_field(2, 2, 1));
    const auto& f = r.field();
    const auto u = FqElem{f.basis(1)};
    for (std::uint32_t x = 0; x < 4; ++x) {
        const RTildeElem<FieldRing> a{r, 0, {x}}, b{r, 1, r.sigma({x})};
        EXPECT_TRUE(rtilde_equal(a, b));
    }
    EXPECT_FALSE(rtilde_equal(RTildeElem<FieldRing>{r, 0, u}, RTildeElem<FieldRing>{r, 1, u}));
    const auto z = rtilde_normalize(RTildeElem<FieldRing>{r, 2, {0}});
    EXPECT_EQ(z.level, 0u);
    EXPECT_EQ(z.coeff.value, 0u);
}

TEST(RTilde, SigmaAndInverse)
{
    const FieldRing r(builtin_field(2, 2, 1));
    const auto u = FqElem{r.field().basis(1)};
    const RTildeElem<FieldRing> x{r, 0, u};
    EXPECT_TRUE(rtilde_equal(rtilde_sigma_inv(rtilde_sigma(x)), x));
    const RTildeElem<FieldRing> unit{r, 0, r.one()};
    EXPECT_TRUE(rtilde_equal(rtilde_sigma(unit), unit));
}

TEST(RTilde, RoundTripsOverF8)
{
    Rng rng(13);
    const FieldRing r(builtin_field(2, 3, 1));
    for (int i = 0; i < 100; ++i) {
        const RTildeElem<FieldRing> x{r, rng.below(6), {rng.element(r.field())}};
        EXPECT_TRUE(rtilde_equal(rtilde_sigma_inv(rtilde_sigma(x)), x));
        EXPECT_TRUE(rtilde_equal(rtilde_sigma(rtilde_sigma_inv(x)), x));
    }
}

TEST(RTilde, IsomorphismToInverseDifferenceRing)
{
    const FieldRing f4(builtin_field(2, 2, 1));
    const auto u = f4.field().basis(1);
    EXPECT_EQ(rtilde_iso_to_inverse(RTildeElem<FieldRing>{f4, 0, {u}}).value, u);
    EXPECT_EQ(rtilde_iso_to_inverse(RTildeElem<FieldRing>{f4, 1, {u}}).value, f4.field().add(u, 1));

    Rng rng(14);
    const FieldRing f8(builtin_field(2, 3, 1));
    const auto& f = f8.field();
    for (int i = 0; i < 200; ++i) {
        const FqElem r{rng.element(f)};
        EXPECT_EQ(rtilde_iso_to_inverse(rtilde_from_ring(f8, r)), r);
        const RTildeElem<FieldRing> x{f8, rng.below(7), {rng.element(f)}};
        EXPECT_TRUE(rtilde_equal(rtilde_from_ring(f8, rtilde_iso_to_inverse(x)), x));
        EXPECT_EQ(rtilde_iso_to_inverse(rtilde_sigma(x)).value, f.sigma_inv(rtilde_iso_to_inverse(x).value));
    }
}

TEST(RTilde, NonInjectiveSigmaRejected)
{
    const GroupAlgebra ring(builtin_field(3, 1), cyclic_group(4, 2));
    try {
        rtilde_normalize(RTildeElem<GroupAlgebra>{ring, 1, ring.one()});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonInjectiveSigma);
    }
}

TEST(OreAct, GeneratorsActAsExpected)
{
    Rng rng(15);
    const auto f = builtin_field(3, 1);
    const auto g = cyclic_group(3, 2);
    const auto m = regular_module(f, g);
    const GroupAlgebra ring(f, g);
    const auto v = random_vector(rng, f, m.dim());
    EXPECT_EQ(ore_act(OrePoly<GroupAlgebra>::t(ring), v, m), m.sigma_m(f, v));
    for (GroupElem x = 0; x < 3; ++x)
        EXPECT_EQ(ore_act(OrePoly<GroupAlgebra>::constant(ring, ring.basis(x)), v, m), linalg::apply(f, m.rho[x], v));
}

TEST(OreAct, ModuleAssociativity)
{
    Rng rng(16);
    const auto f = builtin_field(3, 1);
    const auto g = cyclic_group(3, 2);
    const GroupAlgebra ring(f, g);
    auto random_poly = [&] {
        std::vector<GroupAlgebra::Element> c(1 + rng.below(3));
        for (auto& e : c) {
            e = ring.zero();
            for (auto& x : e) x = rng.element(f);
        }
        return OrePoly<GroupAlgebra>(ring, c);
    };
    for (int i = 0; i < 50; ++i) {
        const auto m = random_module(rng, f, g, 1 + rng.below(3));
        const auto a = random_poly(), b = random_poly();
        const auto v = random_vector(rng, f, m.dim());
        EXPECT_EQ(ore_act(ore_mul(a, b), v, m), ore_act(a, ore_act(b, v, m), m));
    }
}

TEST(OreAct, DaggerCompatibility)
{
    Rng rng(17);
    for (int i = 0; i < 30; ++i) {
        const auto m = oracle::random_valid_module(rng);
        const GroupAlgebra ring(m.field, m.group);
        const auto t = OrePoly<GroupAlgebra>::t(ring);
        const auto v = random_vector(rng, m.field, m.dim());
        for (GroupElem x = 0; x < m.group.order(); ++x) {
            const auto lhs = ore_act(t, linalg::apply(m.field, m.rho[m.group.sigma(x)], v), m);
            EXPECT_EQ(lhs, linalg::apply(m.field, m.rho[x], ore_act(t, v, m)));
        }
    }
}

TEST(OreAct, DimensionMismatch)
{
    const auto f = builtin_field(3, 1);
    const auto m = trivial_module(f, cyclic_group(3, 2));
    const GroupAlgebra ring(f, m.group);
    try {
        ore_act(OrePoly<GroupAlgebra>::t(ring), Vector{1, 2}, m);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
    }
}
