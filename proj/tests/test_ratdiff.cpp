#include <gtest/gtest.h>

#include "support.hpp"

using namespace diffcoh;

namespace {

GradedDiffModule weight_zero(const Field& f, const Matrix& x)
{
    GradedDiffModule m{f, {{0, x.rows}}, {}};
    m.xmaps[0] = {x, std::nullopt};
    return m;
}

/// Orbit count of degree-q monomials by explicit shift orbits: a monomial is
/// an orbit start when un-shifting it leaves the index ranges.
std::size_t orbit_starts(std::size_t degree, std::uint32_t bound)
{
    if (degree == 0) return 1;
    const auto monos = ga_monomials(degree, bound);
    std::set<GaMonomial> all(monos.begin(), monos.end()), shifted;
    for (const auto& m : monos) shifted.insert(m.shift());
    std::size_t starts = 0;
    for (const auto& m : all) starts += !shifted.count(m);
    return starts;
}

}  // namespace

TEST(ValidateGraded, Examples)
{
    const auto f = builtin_field(3, 1);
    Rng rng(41);
    EXPECT_TRUE(validate_graded(weight_zero(f, random_matrix(rng, f, 2, 2))));

    GradedDiffModule ok{f, {{1, 1}, {3, 1}}, {}};
    ok.xmaps[1] = {Matrix::identity(1), std::nullopt};
    EXPECT_TRUE(validate_graded(ok));

    GradedDiffModule bad{f, {{1, 1}, {2, 1}}, {}};
    bad.xmaps[1] = {Matrix::identity(1), 2};
    const auto r = validate_graded(bad);
    EXPECT_FALSE(r);
    ASSERT_TRUE(r.weight.has_value());
    EXPECT_EQ(*r.weight, 1);
}

TEST(ValidateGraded, ShapeMismatch)
{
    const auto f = builtin_field(3, 1);
    GradedDiffModule m{f, {{1, 2}, {3, 1}}, {}};
    m.xmaps[1] = {Matrix(2, 2), std::nullopt};
    EXPECT_FALSE(validate_graded(m));
}

TEST(DecomposeOrbits, Examples)
{
    const auto f = builtin_field(3, 1);
    const auto single = decompose_orbits(GradedDiffModule{f, {{0, 2}}, {}});
    ASSERT_EQ(single.size(), 1u);
    EXPECT_EQ(single[0].first.representative, 0);

    GradedDiffModule m{f, {{1, 1}, {3, 1}, {9, 1}, {2, 1}}, {}};
    const auto parts = decompose_orbits(m);
    ASSERT_EQ(parts.size(), 2u);
    EXPECT_EQ(parts[0].first.representative, 1);
    EXPECT_EQ(parts[0].first.chain, (std::vector<std::int64_t>{1, 3, 9}));
    EXPECT_EQ(parts[1].first.representative, 2);
}

TEST(DecomposeOrbits, PartitionReconstructsModule)
{
    Rng rng(42);
    for (int i = 0; i < 20; ++i) {
        const auto p = i % 2 ? 3u : 5u;
        const auto m = oracle::random_graded(rng, p);
        ASSERT_TRUE(validate_graded(m));
        const auto parts = decompose_orbits(m);
        std::size_t total = 0;
        std::set<std::int64_t> seen;
        std::vector<GradedDiffModule> modules;
        for (const auto& [cls, part] : parts) {
            total += part.total_dim();
            for (auto j : cls.chain) {
                EXPECT_TRUE(seen.insert(j).second);
                EXPECT_EQ(orbit_representative(j, p), cls.representative);
            }
            for (const auto& [j, x] : part.xmaps) EXPECT_EQ(orbit_representative(static_cast<std::int64_t>(p) * j, p), cls.representative);
            modules.push_back(part);
        }
        EXPECT_EQ(total, m.total_dim());
        EXPECT_EQ(direct_sum(modules, m.field), m);
    }
}

TEST(GmCohomology, Examples)
{
    const auto f = builtin_field(3, 1);
    const auto triv = gm_difference_cohomology(gm_trivial_module(f));
    EXPECT_EQ(triv.h0, 1u);
    EXPECT_EQ(triv.h1, 1u);

    Matrix jordan(2, 2);
    jordan(0, 1) = 1;
    const auto nil = gm_difference_cohomology(weight_zero(f, jordan));
    EXPECT_EQ(nil.h0, 0u);
    EXPECT_EQ(nil.h1, 0u);

    GradedDiffModule no_zero{f, {{1, 1}, {3, 1}}, {}};
    const auto empty = gm_difference_cohomology(no_zero);
    EXPECT_EQ(empty.h0, 0u);
    EXPECT_EQ(empty.h1, 0u);
}

TEST(GmCohomology, MatchesEnumerationOnWeightZero)
{
    Rng rng(43);
    for (int i = 0; i < 20; ++i) {
        const auto p = i % 2 ? 3u : 5u;
        const auto m = oracle::random_graded(rng, p);
        auto a = m.xmap(0);
        for (std::size_t k = 0; k < a.rows; ++k) a(k, k) = (a(k, k) + p - 1) % p;
        const auto [ker, coker] = oracle::ker_coker(a, p);
        const auto r = gm_difference_cohomology(m);
        EXPECT_EQ(r.h0, ker);
        EXPECT_EQ(r.h1, coker);
        EXPECT_EQ(r.h0, r.h1);
    }
}

TEST(GmStable, Examples)
{
    const auto f = builtin_field(3, 1);
    EXPECT_EQ(gm_stable_h0(weight_zero(f, Matrix::identity(2))), 2u);
    Matrix nil(2, 2);
    nil(0, 1) = 1;
    EXPECT_EQ(gm_stable_h0(weight_zero(f, nil)), 0u);
    Matrix proj(2, 2);
    proj(0, 0) = 1;
    proj(0, 1) = 1;
    EXPECT_EQ(gm_stable_h0(weight_zero(f, proj)), 1u);
}

TEST(GmRegular, ShapeAndValidity)
{
    const auto f = builtin_field(3, 1);
    const auto m = gm_regular_module(f, 9);
    EXPECT_TRUE(validate_graded(m));
    EXPECT_EQ(m.total_dim(), 19u);
    EXPECT_EQ(m.xmap(3), Matrix::identity(1));
    EXPECT_EQ(m.xmap(4).rows, 0u);
    const auto r = gm_difference_cohomology(m);
    EXPECT_EQ(r.h0, 1u);
    EXPECT_EQ(r.h1, 1u);
}

TEST(GaMonomial, ShiftIsInjectiveAndFixedPointFree)
{
    for (std::size_t q = 1; q <= 5; ++q) {
        EXPECT_TRUE(ga_shift_has_no_invariants(q, 12));
        for (const auto& m : ga_monomials(q, 10)) {
            EXPECT_NE(m.shift(), m);
            EXPECT_GT(*m.shift().min_level(), *m.min_level());
            EXPECT_EQ(m.shift().degree(), q);
        }
    }
}

TEST(GaMonomial, FloorCountMatchesOrbitStarts)
{
    for (std::size_t q = 0; q <= 4; ++q)
        for (std::uint32_t n : {8u, 12u, 13u}) EXPECT_EQ(ga_orbit_count(q, n), orbit_starts(q, n)) << q << " " << n;
}

TEST(GaMonomial, DegreeOneSingleOrbit)
{
    EXPECT_EQ(ga_orbit_count(1, 12), 1u);
    const auto monos = ga_monomials(1, 12);
    EXPECT_EQ(monos.size(), 13u);
}

TEST(GaOrbits, StableInLowDegreesGrowingAboveTwo)
{
    for (std::size_t q = 0; q <= 1; ++q)
        for (std::uint32_t n = 6; n < 14; ++n) EXPECT_EQ(ga_orbit_count(q, n), ga_orbit_count(q, n + 1));
    for (std::size_t q = 2; q <= 4; ++q)
        for (std::uint32_t n = 6; n < 14; ++n) EXPECT_LT(ga_orbit_count(q, n), ga_orbit_count(q, n + 1)) << q;
}

TEST(GaExample, ExpectedDisplay)
{
    const auto rows = ga_example_dims(3, 4, 12);
    ASSERT_EQ(rows.size(), 5u);
    for (std::size_t j = 0; j <= 2; ++j) {
        EXPECT_FALSE(rows[j].dim.infinite);
        EXPECT_EQ(rows[j].dim.dim, 1u);
    }
    for (std::size_t j = 3; j <= 4; ++j) {
        EXPECT_TRUE(rows[j].dim.infinite);
        EXPECT_EQ(rows[j].dim.truncations, (std::vector<std::uint32_t>{12, 13, 14}));
        const auto& e = rows[j].dim.evidence;
        EXPECT_TRUE(e[0] < e[1] && e[1] < e[2]);
    }
    for (std::size_t j = 1; j <= 4; ++j) EXPECT_EQ(rows[j].inv, 0u);
}

TEST(GaExample, OtherPrimesAgree)
{
    for (std::uint32_t p : {5u, 7u}) {
        const auto rows = ga_example_dims(p, 4, 12);
        std::vector<std::string> got;
        for (const auto& r : rows) got.push_back(r.dim.infinite ? "inf" : std::to_string(r.dim.dim));
        EXPECT_EQ(got, (std::vector<std::string>{"1", "1", "1", "inf", "inf"}));
    }
}

TEST(GaExample, Errors)
{
    auto code_of = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::OracleMismatch;
    };
    EXPECT_EQ(code_of([] { ga_example_dims(3, 4, 7); }), ErrorCode::TruncationTooSmall);
    EXPECT_EQ(code_of([] { ga_example_dims(2, 4, 12); }), ErrorCode::InvalidScenario);
    EXPECT_EQ(code_of([] { ga_example_dims(9, 4, 12); }), ErrorCode::NotPrime);
}
