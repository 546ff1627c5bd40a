#include <gtest/gtest.h>

#include "support.hpp"

using namespace diffcoh;

namespace {

DiffModule z4_sign(std::int64_t t)
{
    const auto f = builtin_field(3, 1);
    const auto g = cyclic_group(4, t);
    std::vector<Matrix> rho;
    for (std::size_t x = 0; x < 4; ++x) {
        Matrix r(1, 1);
        r(0, 0) = x % 2 ? 2 : 1;
        rho.push_back(r);
    }
    return DiffModule{f, g, rho, {Matrix::identity(1), 0}};
}

}  // namespace

TEST(CyclicGroup, Examples)
{
    const auto g = cyclic_group(3, 2);
    EXPECT_EQ(g.sigma(1), 2u);
    EXPECT_EQ(g.sigma(2), 1u);
    EXPECT_TRUE(g.sigma_injective());
    const auto id = cyclic_group(5, 1);
    for (GroupElem x = 0; x < 5; ++x) EXPECT_EQ(id.sigma(x), x);
    const auto z4 = cyclic_group(4, 2);
    EXPECT_FALSE(z4.sigma_injective());
    EXPECT_EQ(z4.sigma(0), 0u);
    EXPECT_EQ(z4.sigma(2), 0u);
}

TEST(CyclicGroup, BadMultiplier)
{
    for (std::int64_t t : {0, 3, -1}) {
        try {
            cyclic_group(3, t);
            FAIL() << t;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::BadMultiplier);
        }
    }
}

TEST(FiniteDiffGroup, RejectsNonEndomorphism)
{
    EXPECT_THROW(FiniteDiffGroup(cyclic_table(3), {0, 1, 1}), Error);
    EXPECT_THROW(FiniteDiffGroup({{0, 1}, {0, 1}}, {0, 1}), Error);
}

TEST(FiniteDiffGroup, EndomorphismCounts)
{
    EXPECT_EQ(all_endomorphisms(cyclic_group(6, 1)).size(), 6u);
    EXPECT_EQ(all_endomorphisms(symmetric_group_s3()).size(), 10u);
    EXPECT_EQ(suite_groups().size(), 25u);
}

TEST(ValidateLeft, TrivialModuleAlwaysValid)
{
    for (const auto& g : suite_groups())
        for (const auto& f : suite_fields()) EXPECT_TRUE(validate_left(trivial_module(f, g, 2))) << g.description();
}

TEST(ValidateLeft, RegularModule)
{
    EXPECT_TRUE(validate_left(regular_module(builtin_field(3, 1), cyclic_group(3, 2))));
    EXPECT_TRUE(validate_left(regular_module(builtin_field(3, 2, 1), symmetric_group_s3(2))));
}

TEST(ValidateLeft, SignCharacterOfZ4)
{
    EXPECT_TRUE(validate_left(z4_sign(3)));
    const auto r = validate_left(z4_sign(2));
    ASSERT_FALSE(r);
    ASSERT_TRUE(r.element.has_value());
    EXPECT_EQ(*r.element, 1u);
}

TEST(ValidateLeft, ReportsNonHomomorphism)
{
    auto m = trivial_module(builtin_field(3, 1), cyclic_group(3, 1));
    m.rho[1](0, 0) = 2;
    const auto r = validate_left(m);
    ASSERT_FALSE(r);
    EXPECT_TRUE(r.element.has_value());
    EXPECT_TRUE(r.second.has_value());
}

TEST(ValidateRight, RegularAndTrivial)
{
    EXPECT_TRUE(validate_right(right_regular_module(builtin_field(3, 1), cyclic_group(3, 2))));
    EXPECT_TRUE(validate_right(right_regular_module(builtin_field(2, 2, 1), symmetric_group_s3(1))));
    Rng rng(1);
    const auto f = builtin_field(3, 1);
    const auto g = cyclic_group(4, 2);
    RightDiffModule m{f, g, std::vector<Matrix>(4, Matrix::identity(2)), {random_matrix(rng, f, 2, 2), 0}};
    EXPECT_TRUE(validate_right(m));
}

TEST(ValidateRight, InvariantsNotStableWitness)
{
    const auto w = find_right_asymmetry_witness();
    ASSERT_TRUE(w.has_value());
    const auto& [m, v] = *w;
    EXPECT_TRUE(validate_right(m));
    for (const auto& r : m.rho) EXPECT_EQ(linalg::apply(m.field, r, v), v);
    const auto sv = m.sigma_m(m.field, v);
    bool leaves = false;
    for (const auto& r : m.rho) leaves = leaves || linalg::apply(m.field, r, sv) != sv;
    EXPECT_TRUE(leaves);
}

TEST(LeftModules, InvariantsAreSigmaStable)
{
    Rng rng(2);
    for (int i = 0; i < 40; ++i) {
        const auto m = oracle::random_valid_module(rng);
        EXPECT_FALSE(invariants_stability_witness(m).has_value());
    }
}

TEST(Twist, ZeroIsIdentityAndIndexArithmetic)
{
    const auto m = regular_module(builtin_field(3, 1), cyclic_group(3, 2));
    EXPECT_EQ(twist(m, 0).rho, m.rho);
    EXPECT_EQ(twist(m, 1).rho[1], m.rho[2]);
}

TEST(Twist, CompositionLaw)
{
    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
        const auto m = oracle::random_valid_module(rng);
        const auto a = rng.below(4), b = rng.below(4);
        EXPECT_EQ(twist(twist(m, a), b).rho, twist(m, a + b).rho);
        EXPECT_TRUE(validate_left(twist(m, a)));
    }
}

TEST(Twist, PeriodicityOfTwists)
{
    Rng rng(4);
    for (int i = 0; i < 20; ++i) {
        const auto m = random_module(rng, builtin_field(3, 1), rng.pick(suite_groups()), 2);
        const auto pr = sigma_periodicity(m.group);
        EXPECT_EQ(twist(m, pr.preperiod + pr.period).rho, twist(m, pr.preperiod).rho);
    }
}

TEST(GroupHomReformulation, Examples)
{
    EXPECT_EQ(group_hom_reformulation_check(trivial_module(builtin_field(3, 1), cyclic_group(3, 2))),
              ReformulationStatus::Ok);
    auto m = trivial_module(builtin_field(3, 1), cyclic_group(3, 2));
    m.sigma_m.matrix = Matrix(1, 1);
    EXPECT_EQ(group_hom_reformulation_check(m), ReformulationStatus::NotApplicable);
}

TEST(GroupHomReformulation, EquivalentToDaggerForInvertibleS)
{
    Rng rng(5);
    std::size_t valid_checked = 0, corrupt_checked = 0;
    for (int i = 0; i < 200 && (valid_checked < 20 || corrupt_checked < 20); ++i) {
        const auto m = oracle::random_valid_module(rng);
        if (linalg::inverse(m.field, m.sigma_m.matrix)) {
            EXPECT_EQ(group_hom_reformulation_check(m), ReformulationStatus::Ok);
            ++valid_checked;
        }
        auto bad = m;
        bad.sigma_m.matrix = random_matrix(rng, m.field, m.dim(), m.dim());
        if (!linalg::inverse(bad.field, bad.sigma_m.matrix)) continue;
        EXPECT_EQ(static_cast<bool>(validate_left(bad)), group_hom_reformulation_check(bad) == ReformulationStatus::Ok);
        ++corrupt_checked;
    }
    EXPECT_GE(valid_checked, 20u);
    EXPECT_GE(corrupt_checked, 20u);
}

TEST(SigmaPeriodicity, Examples)
{
    EXPECT_EQ(sigma_periodicity(cyclic_group(3, 2)), (PeriodicityProfile{0, 2}));
    EXPECT_EQ(sigma_periodicity(cyclic_group(5, 1)), (PeriodicityProfile{0, 1}));
    EXPECT_EQ(sigma_periodicity(cyclic_group(4, 2)), (PeriodicityProfile{2, 1}));
}

TEST(SigmaPeriodicity, MinimalPair)
{
    for (const auto& g : suite_groups()) {
        const auto pr = sigma_periodicity(g);
        for (GroupElem x = 0; x < g.order(); ++x)
            EXPECT_EQ(g.sigma_power(x, pr.preperiod + pr.period), g.sigma_power(x, pr.preperiod));
        if (pr.preperiod > 0) {
            bool differs = false;
            for (GroupElem x = 0; x < g.order(); ++x)
                differs = differs || g.sigma_power(x, pr.preperiod - 1 + pr.period) != g.sigma_power(x, pr.preperiod - 1);
            EXPECT_TRUE(differs);
        }
    }
}

TEST(MInfinity, Shapes)
{
    const auto f = builtin_field(3, 1);
    const auto constant = m_infinity(trivial_module(f, cyclic_group(3, 1)));
    EXPECT_EQ(constant.levels.size(), 1u);
    const auto z3 = m_infinity(regular_module(f, cyclic_group(3, 2)));
    EXPECT_EQ(z3.profile.period, 2u);
    EXPECT_EQ(z3.level(5).rho, z3.level(1).rho);
}

TEST(MInfinity, ShiftHasNoFixedVectors)
{
    Rng rng(6);
    for (int i = 0; i < 10; ++i) {
        const auto s = m_infinity(oracle::random_valid_module(rng));
        for (std::size_t n : {0u, 1u, 3u, 6u}) EXPECT_EQ(truncated_shift_fixed_dim(s, n), 0u);
    }
}
