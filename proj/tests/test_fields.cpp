#include <gtest/gtest.h>

#include "support.hpp"

using namespace diffcoh;

namespace {

Field first_irreducible(std::uint32_t p, std::uint32_t n)
{
    // Lexicographic search over monic moduli; the constructor rejects reducible ones.
    std::vector<std::uint32_t> m(n + 1, 0);
    m[n] = 1;
    for (std::size_t code = 0;; ++code) {
        auto c = code;
        for (std::uint32_t i = 0; i < n; ++i) {
            m[i] = static_cast<std::uint32_t>(c % p);
            c /= p;
        }
        try {
            return make_field(p, n, m, 0);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::ReducibleModulus) throw;
        }
    }
}

std::vector<Field> test_fields()
{
    return {builtin_field(2, 1), builtin_field(3, 1), builtin_field(5, 1), builtin_field(2, 2), builtin_field(2, 3),
            builtin_field(3, 2), builtin_field(5, 2), first_irreducible(2, 4), first_irreducible(3, 3),
            first_irreducible(3, 4)};
}

}  // namespace

TEST(MakeField, F4WithFrobenius)
{
    const auto f = make_field(2, 2, {1, 1, 1}, 1);
    EXPECT_EQ(f.order(), 4u);
    EXPECT_EQ(f.sigma_power(), 1u);
    const auto u = f.basis(1);
    EXPECT_EQ(f.mul(u, u), f.add(u, 1));
}

TEST(MakeField, F9WithFrobenius)
{
    const auto f = make_field(3, 2, {1, 0, 1}, 1);
    EXPECT_EQ(f.order(), 9u);
    const auto u = f.basis(1);
    EXPECT_EQ(f.mul(u, u), f.neg(1));
}

TEST(MakeField, PrimeFieldIdentity)
{
    const auto f = make_field(3, 1, {0, 1}, 0);
    EXPECT_TRUE(f.is_prime_field());
    for (std::uint32_t x = 0; x < 3; ++x) EXPECT_EQ(f.sigma(x), x);
}

TEST(MakeField, Errors)
{
    auto code_of = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::OracleMismatch;
    };
    EXPECT_EQ(code_of([] { make_field(4, 1, {0, 1}, 0); }), ErrorCode::NotPrime);
    EXPECT_EQ(code_of([] { make_field(2, 2, {1, 0, 1}, 0); }), ErrorCode::ReducibleModulus);
    EXPECT_EQ(code_of([] { make_field(3, 2, {1, 0, 1}, 2); }), ErrorCode::BadSigmaPower);
}

TEST(FieldArithmetic, MatchesSchoolbookPolynomialProduct)
{
    for (const auto& f : test_fields()) {
        const auto p = f.characteristic();
        for (std::uint32_t a = 0; a < f.order(); ++a)
            for (std::uint32_t b = 0; b < f.order(); ++b) {
                const auto expected = oracle::poly_mul_mod(f.coeffs(a), f.coeffs(b), f.modulus(), p);
                ASSERT_EQ(f.coeffs(f.mul(a, b)), expected) << f.describe() << " " << a << "*" << b;
                std::vector<std::uint32_t> sum(f.degree());
                for (std::size_t k = 0; k < sum.size(); ++k) sum[k] = (f.coeff(a, k) + f.coeff(b, k)) % p;
                ASSERT_EQ(f.coeffs(f.add(a, b)), sum);
            }
    }
}

TEST(FieldArithmetic, InversesAndAxioms)
{
    for (const auto& f : test_fields()) {
        for (std::uint32_t a = 1; a < f.order(); ++a) ASSERT_EQ(f.mul(a, f.inv(a)), 1u);
        for (std::uint32_t a = 0; a < f.order(); ++a) ASSERT_EQ(f.add(a, f.neg(a)), 0u);
    }
}

TEST(FrobeniusPower, F4GeneratorGoesToUPlusOne)
{
    const auto f = builtin_field(2, 2, 1);
    const auto u = f.basis(1);
    EXPECT_EQ(frobenius_power(f, FqElem{u}, 1).value, f.add(u, 1));
}

TEST(FrobeniusPower, OneIsFixed)
{
    for (const auto& f : test_fields())
        for (std::uint32_t s = 0; s < 5; ++s) EXPECT_EQ(frobenius_power(f, FqElem{1}, s).value, 1u);
}

TEST(FrobeniusPower, F9FrobeniusIsAnInvolution)
{
    const auto f = builtin_field(3, 2, 1);
    for (std::uint32_t x = 0; x < 9; ++x) {
        const FqElem e{x};
        EXPECT_EQ(frobenius_power(f, frobenius_power(f, e, 1), 1).value, x);
    }
}

TEST(FrobeniusPower, AgreesWithRepeatedPowering)
{
    for (const auto& f : test_fields())
        for (std::uint32_t x = 0; x < f.order(); ++x)
            for (std::uint32_t s = 0; s <= f.degree(); ++s) ASSERT_EQ(f.frob(x, s), oracle::slow_frob(f, x, s));
}

TEST(FrobeniusPower, NthPowerIsIdentityAndRingHom)
{
    for (const auto& f : test_fields()) {
        for (std::uint32_t x = 0; x < f.order(); ++x) ASSERT_EQ(f.frob(x, f.degree()), x);
        for (std::uint32_t a = 0; a < f.order(); ++a)
            for (std::uint32_t b = 0; b < f.order(); ++b) {
                ASSERT_EQ(f.frob(f.add(a, b)), f.add(f.frob(a), f.frob(b)));
                ASSERT_EQ(f.frob(f.mul(a, b)), f.mul(f.frob(a), f.frob(b)));
            }
    }
}

TEST(RestrictScalars, IdentityOnF4)
{
    const auto f = builtin_field(2, 2, 1);
    const SemilinearMap id{Matrix::identity(1), 0};
    EXPECT_EQ(restrict_scalars(f, id), Matrix::identity(2));
}

TEST(RestrictScalars, FrobeniusOnF4)
{
    const auto f = builtin_field(2, 2, 1);
    const SemilinearMap frob{Matrix::identity(1), 1};
    Matrix expected(2, 2);
    expected(0, 0) = 1;  // 1 -> 1
    expected(0, 1) = 1;  // u -> u + 1
    expected(1, 1) = 1;
    EXPECT_EQ(restrict_scalars(f, frob), expected);
}

TEST(RestrictScalars, EvaluationOracle)
{
    Rng rng(7);
    for (const auto& f : test_fields()) {
        const auto fp = f.prime_field();
        for (int trial = 0; trial < 5; ++trial) {
            const std::size_t d = 1 + rng.below(3);
            const SemilinearMap map{random_matrix(rng, f, d, d), static_cast<std::uint32_t>(rng.below(f.degree()))};
            const auto r = restrict_scalars(f, map);
            for (int k = 0; k < 50; ++k) {
                const auto v = random_vector(rng, f, d);
                ASSERT_EQ(prime_coords(f, map(f, v)), linalg::apply(fp, r, prime_coords(f, v)));
            }
        }
    }
}

TEST(SemilinearInvariants, FrobeniusOnF9HasFixedFieldF3)
{
    const auto f = builtin_field(3, 2, 1);
    const auto inv = semilinear_invariants(f, {Matrix::identity(1), 1});
    ASSERT_EQ(inv.dim, 1u);
    EXPECT_EQ(inv.basis[0], (Vector{1, 0}));
    EXPECT_EQ(oracle::eigen(f, 1, 1).first, 1u);
}

TEST(SemilinearInvariants, SmallCases)
{
    const auto f3 = builtin_field(3, 1);
    EXPECT_EQ(semilinear_invariants(f3, {Matrix::identity(2), 0}).dim, 2u);
    Matrix two(1, 1);
    two(0, 0) = 2;
    EXPECT_EQ(semilinear_invariants(f3, {two, 0}).dim, 0u);
}

TEST(SemilinearCoinvariants, Examples)
{
    const auto f9 = builtin_field(3, 2, 1);
    EXPECT_EQ(semilinear_coinvariants(f9, {Matrix::identity(1), 1}), 1u);
    EXPECT_EQ(oracle::eigen(f9, 1, 1).second, 1u);
    EXPECT_EQ(semilinear_coinvariants(builtin_field(3, 1), {Matrix::identity(2), 0}), 2u);
}

TEST(SemilinearMaps, InvariantsEqualCoinvariantsAndScalarClosure)
{
    Rng rng(11);
    for (const auto& f : test_fields())
        for (int trial = 0; trial < 10; ++trial) {
            const std::size_t d = 1 + rng.below(3);
            const auto tw = static_cast<std::uint32_t>(rng.below(f.degree()));
            const SemilinearMap map{random_matrix(rng, f, d, d), tw};
            const auto inv = semilinear_invariants(f, map).dim;
            EXPECT_EQ(inv, semilinear_coinvariants(f, map));
            if (tw == 0) {
                EXPECT_EQ(inv % f.degree(), 0u);
            }
        }
}

TEST(SemilinearMaps, InvariantsMatchEnumeration)
{
    Rng rng(12);
    for (const auto& f : {builtin_field(2, 2), builtin_field(3, 2), builtin_field(2, 3)})
        for (int trial = 0; trial < 10; ++trial) {
            const SemilinearMap map{random_matrix(rng, f, 2, 2), static_cast<std::uint32_t>(rng.below(f.degree()))};
            std::size_t fixed = 0;
            for (std::uint32_t a = 0; a < f.order(); ++a)
                for (std::uint32_t b = 0; b < f.order(); ++b) fixed += map(f, Vector{a, b}) == Vector{a, b};
            EXPECT_EQ(semilinear_invariants(f, map).dim, oracle::log_p(fixed, f.characteristic()));
        }
}

TEST(Eigenspace, Examples)
{
    const auto f9 = builtin_field(3, 2);
    EXPECT_EQ(eigenspace(f9, 1, 1).dim_invariant, 1u);
    EXPECT_EQ(eigenspace(f9, 1, 2).dim_invariant, 1u);
    const auto f3 = eigenspace(builtin_field(3, 1), 0, 1);
    EXPECT_EQ(f3.dim_invariant, 1u);
    EXPECT_EQ(f3.dim_coinvariant, 1u);
}

TEST(Eigenspace, MatchesExhaustiveEnumeration)
{
    for (const auto& f : test_fields())
        for (std::uint32_t s = 0; s < f.degree(); ++s)
            for (std::uint32_t a = 1; a < f.characteristic(); ++a) {
                const auto r = eigenspace(f, s, a);
                const auto [inv, coinv] = oracle::eigen(f, s, a);
                EXPECT_EQ(r.dim_invariant, inv) << f.describe() << " s=" << s << " a=" << a;
                EXPECT_EQ(r.dim_coinvariant, coinv);
                EXPECT_EQ(r.dim_invariant, r.dim_coinvariant);
            }
}

TEST(Eigenspace, ZeroEigenvalueRejected)
{
    try {
        eigenspace(builtin_field(3, 2), 1, 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ZeroEigenvalue);
    }
}
