#pragma once

// The built-in self test: randomized oracle equivalence, corrupted controls,
// validators, Ore laws and the builtin examples, all from one seed.

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "diffcoh/difference_cohomology.hpp"
#include "diffcoh/ore.hpp"
#include "diffcoh/random.hpp"
#include "diffcoh/runner.hpp"
#include "diffcoh/scenario.hpp"

namespace diffcoh {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct SelftestCheck {
    std::string name;
    bool passed = true;
    bool expected_failure = false;  // a negative control that failed as it should
    std::string detail;
    nlohmann::json replay;          // scenario reproducing a failure
};

struct SelftestResult {
    std::uint64_t seed = kDefaultSeed;
    std::vector<std::string> cases;
    std::vector<SelftestCheck> checks;

    bool passed() const
    {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
    const SelftestCheck* first_failure() const
    {
        for (const auto& c : checks)
            if (!c.passed) return &c;
        return nullptr;
    }
};

template <DifferenceRing Ring>
OrePoly<Ring> random_ore(Rng& rng, const Ring& ring, std::size_t max_degree)
{
    std::vector<typename Ring::Element> c(1 + rng.below(max_degree + 1));
    for (auto& x : c) x = {static_cast<std::uint32_t>(rng.below(ring.field().order()))};
    return OrePoly<Ring>(ring, std::move(c));
}

/// Associativity and both distributive laws on random triples.
inline bool ore_laws_hold(Rng& rng, const FieldRing& ring, std::size_t triples)
{
    for (std::size_t i = 0; i < triples; ++i) {
        const auto f = random_ore(rng, ring, 3), g = random_ore(rng, ring, 3), h = random_ore(rng, ring, 3);
        if (!(ore_mul(ore_mul(f, g), h) == ore_mul(f, ore_mul(g, h)))) return false;
        if (!(ore_mul(f, ore_add(g, h)) == ore_add(ore_mul(f, g), ore_mul(f, h)))) return false;
        if (!(ore_mul(ore_add(f, g), h) == ore_add(ore_mul(f, h), ore_mul(g, h)))) return false;
    }
    return true;
}

inline SelftestResult selftest(std::uint64_t seed = kDefaultSeed)
{
    SelftestResult out;
    out.seed = seed;
    auto add = [&](std::string name, bool ok, std::string detail = {}, nlohmann::json replay = {}) {
        out.checks.push_back({std::move(name), ok, false, std::move(detail), std::move(replay)});
    };

    const auto cases = random_cases(seed, 50);
    for (const auto& c : cases) {
        out.cases.push_back(c.label);
        const auto name = "oracle #" + std::to_string(c.index) + " (" + c.label + ")";
        try {
            const auto ses = assemble_ses(c.module, c.jmax);
            const auto cone = cone_cohomology(c.module, c.jmax);
            bool ok = h0_sigma_direct(c.module).dim == ses[0].dim;
            for (std::size_t j = 0; j <= c.jmax; ++j) ok = ok && ses[j].dim == cone[j].dim;
            add(name, ok, ok ? "" : "ses and cone dimensions differ", ok ? nlohmann::json{} : scenario_json(c.module, "oracle", c.jmax));
        } catch (const Error& e) {
            add(name, false, e.what(), scenario_json(c.module, "oracle", c.jmax));
        }
    }

    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::size_t controls = 0;
    for (const auto& c : cases) {
        if (controls == 10) break;
        const auto bad = corrupt_module(rng, c.module);
        if (!bad) continue;
        ++controls;
        const auto name = "negative control #" + std::to_string(controls) + " (" + c.label + ")";
        bool tripped = false;
        try {
            cone_cohomology(*bad, std::min<std::size_t>(c.jmax, 2));
        } catch (const Error& e) {
            tripped = e.code() == ErrorCode::ChainMapViolation;
        }
        out.checks.push_back({name, tripped, tripped, tripped ? "chain-map property failed as expected" : "corruption went unnoticed",
                              tripped ? nlohmann::json{} : scenario_json(*bad, "oracle", 2)});
    }
    add("negative controls found", controls == 10, std::to_string(controls) + " of 10");

    {
        const auto f3 = builtin_field(3, 1);
        const auto z3 = cyclic_group(3, 2);
        add("validator: trivial module", static_cast<bool>(validate_left(trivial_module(f3, z3))));
        add("validator: regular module", static_cast<bool>(validate_left(regular_module(f3, z3))));
        const auto z4 = cyclic_group(4, 2);
        std::vector<Matrix> rho;
        for (std::size_t x = 0; x < 4; ++x) {
            Matrix r(1, 1);
            r(0, 0) = x % 2 ? f3.neg(1) : 1;
            rho.push_back(r);
        }
        const auto report = validate_left(DiffModule{f3, z4, rho, {Matrix::identity(1), 0}});
        add("validator: sign character of Z/4 with sigma(a) = 2a is rejected at 1",
            !report && report.element && *report.element == 1);
        add("validator: right regular module", static_cast<bool>(validate_right(right_regular_module(f3, z3))));
    }

    {
        Rng ore_rng(seed + 1);
        add("Ore laws over F_4", ore_laws_hold(ore_rng, FieldRing(builtin_field(2, 2, 1)), 200));
        add("Ore laws over F_9", ore_laws_hold(ore_rng, FieldRing(builtin_field(3, 2, 1)), 200));
    }

    auto golden = [&](const std::string& name, const std::vector<std::string>& expected) {
        try {
            const auto t = run_example(name, {});
            std::vector<std::string> got;
            for (const auto& r : t.rows) got.push_back(dim_string(r.dim));
            add("example " + name, t.ok && got == expected, t.ok ? "" : "internal comparison failed");
        } catch (const Error& e) {
            add("example " + name, false, e.what());
        }
    };
    golden("ex3_6_1", {"1", "1", "0", "1", "2", "1", "0", "1", "2", "1"});
    golden("ex3_6_2", {"1", "2", "2", "2", "2", "2", "2"});
    golden("ex3_6_3", {"1", "2", "2", "2", "2", "2", "2"});
    golden("ga", {"1", "1", "1", "inf", "inf"});
    golden("gm_trivial", {"1", "1"});
    golden("thm38_z3", {"1", "1", "1", "1"});
    golden("thm38_z4", {"2", "0", "0", "0"});
    return out;
}

}  // namespace diffcoh
