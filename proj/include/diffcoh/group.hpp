#pragma once

// Finite groups given by full multiplication tables, together with an
// endomorphism sigma_G.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "diffcoh/error.hpp"

namespace diffcoh {

using GroupElem = std::size_t;

/// Minimal (a, c) with sigma^{a+c} = sigma^a as maps.
struct PeriodicityProfile {
    std::size_t preperiod = 0;
    std::size_t period = 1;

    friend bool operator==(const PeriodicityProfile&, const PeriodicityProfile&) = default;
};

class FiniteDiffGroup {
public:
    FiniteDiffGroup() : FiniteDiffGroup({{0}}, {0}) {}

    /// Validates the group axioms and that sigma is an endomorphism.
    FiniteDiffGroup(std::vector<std::vector<GroupElem>> table, std::vector<GroupElem> sigma,
                    std::string description = "table group")
        : table_(std::move(table)), sigma_(std::move(sigma)), description_(std::move(description))
    {
        const std::size_t m = table_.size();
        if (m == 0) throw Error(ErrorCode::InvalidScenario, "group must be nonempty");
        for (const auto& row : table_) {
            if (row.size() != m) throw Error(ErrorCode::InvalidScenario, "multiplication table must be square");
            for (auto x : row)
                if (x >= m) throw Error(ErrorCode::InvalidScenario, "table entry out of range");
        }
        identity_ = m;
        for (GroupElem e = 0; e < m && identity_ == m; ++e) {
            bool ok = true;
            for (GroupElem x = 0; x < m && ok; ++x) ok = table_[e][x] == x && table_[x][e] == x;
            if (ok) identity_ = e;
        }
        if (identity_ == m) throw Error(ErrorCode::InvalidScenario, "table has no identity");
        for (GroupElem x = 0; x < m; ++x)
            for (GroupElem y = 0; y < m; ++y)
                for (GroupElem z = 0; z < m; ++z)
                    if (table_[table_[x][y]][z] != table_[x][table_[y][z]])
                        throw Error(ErrorCode::InvalidScenario, "table is not associative");
        inverse_.assign(m, m);
        for (GroupElem x = 0; x < m; ++x)
            for (GroupElem y = 0; y < m; ++y)
                if (table_[x][y] == identity_) inverse_[x] = y;
        for (GroupElem x = 0; x < m; ++x)
            if (inverse_[x] == m || table_[inverse_[x]][x] != identity_)
                throw Error(ErrorCode::InvalidScenario, "element without inverse");
        if (sigma_.size() != m) throw Error(ErrorCode::InvalidScenario, "sigma must list one image per element");
        for (auto s : sigma_)
            if (s >= m) throw Error(ErrorCode::InvalidScenario, "sigma image out of range");
        for (GroupElem x = 0; x < m; ++x)
            for (GroupElem y = 0; y < m; ++y)
                if (sigma_[table_[x][y]] != table_[sigma_[x]][sigma_[y]])
                    throw Error(ErrorCode::InvalidScenario, "sigma is not a group endomorphism");
    }

    std::size_t order() const { return table_.size(); }
    GroupElem identity() const { return identity_; }
    GroupElem mul(GroupElem x, GroupElem y) const { return table_[x][y]; }
    GroupElem inverse(GroupElem x) const { return inverse_[x]; }
    GroupElem sigma(GroupElem x) const { return sigma_[x]; }
    const std::vector<GroupElem>& sigma_map() const { return sigma_; }
    const std::vector<std::vector<GroupElem>>& table() const { return table_; }
    const std::string& description() const { return description_; }

    GroupElem sigma_power(GroupElem x, std::size_t i) const
    {
        for (std::size_t k = 0; k < i; ++k) x = sigma_[x];
        return x;
    }

    bool sigma_injective() const
    {
        std::vector<bool> seen(order(), false);
        for (auto s : sigma_) {
            if (seen[s]) return false;
            seen[s] = true;
        }
        return true;
    }

    std::size_t element_order(GroupElem x) const
    {
        std::size_t k = 1;
        for (GroupElem y = x; y != identity_; y = mul(y, x)) ++k;
        return k;
    }

    /// Same group with another endomorphism.
    FiniteDiffGroup with_sigma(std::vector<GroupElem> sigma, std::string description) const
    {
        return FiniteDiffGroup(table_, std::move(sigma), std::move(description));
    }

private:
    std::vector<std::vector<GroupElem>> table_;
    std::vector<GroupElem> sigma_;
    std::vector<GroupElem> inverse_;
    GroupElem identity_ = 0;
    std::string description_;
};

inline std::vector<std::vector<GroupElem>> cyclic_table(std::size_t m)
{
    std::vector<std::vector<GroupElem>> t(m, std::vector<GroupElem>(m));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) t[a][b] = (a + b) % m;
    return t;
}

/// Z/m with sigma_G(a) = t*a, 1 <= t < m.
inline FiniteDiffGroup cyclic_group(std::int64_t m, std::int64_t t)
{
    if (m < 1) throw Error(ErrorCode::BadMultiplier, "group order must be positive");
    if (m == 1 && t == 0) return FiniteDiffGroup(cyclic_table(1), {0}, "Z/1");
    if (t <= 0 || t >= m)
        throw Error(ErrorCode::BadMultiplier, "multiplier t must satisfy 1 <= t < m (got " + std::to_string(t) + ")");
    std::vector<GroupElem> sigma(static_cast<std::size_t>(m));
    for (std::int64_t a = 0; a < m; ++a) sigma[static_cast<std::size_t>(a)] = static_cast<std::size_t>(a * t % m);
    return FiniteDiffGroup(cyclic_table(static_cast<std::size_t>(m)), std::move(sigma),
                           "Z/" + std::to_string(m) + ", sigma(a) = " + std::to_string(t) + "a");
}

/// Permutations of {0,1,2} in lexicographic order; index 0 is the identity.
inline std::vector<std::vector<int>> s3_permutations()
{
    std::vector<std::vector<int>> perms;
    std::vector<int> p{0, 1, 2};
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return perms;
}

inline std::vector<std::vector<GroupElem>> s3_table()
{
    const auto perms = s3_permutations();
    std::vector<std::vector<GroupElem>> t(6, std::vector<GroupElem>(6));
    for (std::size_t a = 0; a < 6; ++a)
        for (std::size_t b = 0; b < 6; ++b) {
            std::vector<int> comp(3);
            for (int i = 0; i < 3; ++i) comp[i] = perms[a][perms[b][i]];  // (ab)(i) = a(b(i))
            t[a][b] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), comp) - perms.begin());
        }
    return t;
}

/// S_3 with sigma = conjugation x -> h x h^{-1}.
inline FiniteDiffGroup symmetric_group_s3(GroupElem h = 0)
{
    const auto t = s3_table();
    GroupElem h_inv = 0;
    for (GroupElem y = 0; y < 6; ++y)
        if (t[h][y] == 0) h_inv = y;
    std::vector<GroupElem> sigma(6);
    for (GroupElem x = 0; x < 6; ++x) sigma[x] = t[t[h][x]][h_inv];
    return FiniteDiffGroup(t, sigma, "S_3, sigma = conjugation by element " + std::to_string(h));
}

/// A small generating set, chosen greedily in index order.
inline std::vector<GroupElem> generating_set(const FiniteDiffGroup& g)
{
    std::vector<GroupElem> gens;
    std::vector<bool> in_span(g.order(), false);
    in_span[g.identity()] = true;
    auto close = [&] {
        bool grew = true;
        while (grew) {
            grew = false;
            for (GroupElem x = 0; x < g.order(); ++x)
                if (in_span[x])
                    for (auto s : gens) {
                        const auto y = g.mul(x, s);
                        if (!in_span[y]) in_span[y] = grew = true;
                    }
        }
    };
    for (GroupElem x = 0; x < g.order(); ++x)
        if (!in_span[x]) {
            gens.push_back(x);
            close();
        }
    return gens;
}

/// Every endomorphism of the underlying group, as index maps, in a fixed order.
inline std::vector<std::vector<GroupElem>> all_endomorphisms(const FiniteDiffGroup& g)
{
    const auto gens = generating_set(g);
    const std::size_t m = g.order();
    std::vector<std::vector<GroupElem>> result;
    std::vector<GroupElem> images(gens.size(), 0);
    while (true) {
        // Extend the generator assignment along words by breadth-first search.
        std::vector<GroupElem> map(m, m);
        map[g.identity()] = g.identity();
        std::vector<GroupElem> frontier{g.identity()};
        bool consistent = true;
        while (!frontier.empty() && consistent) {
            std::vector<GroupElem> next;
            for (auto x : frontier)
                for (std::size_t i = 0; i < gens.size(); ++i) {
                    const auto y = g.mul(x, gens[i]);
                    const auto fy = g.mul(map[x], images[i]);
                    if (map[y] == m) {
                        map[y] = fy;
                        next.push_back(y);
                    } else if (map[y] != fy) {
                        consistent = false;
                    }
                }
            frontier = std::move(next);
        }
        if (consistent) {
            bool hom = true;
            for (GroupElem x = 0; x < m && hom; ++x)
                for (GroupElem y = 0; y < m && hom; ++y) hom = map[g.mul(x, y)] == g.mul(map[x], map[y]);
            if (hom) result.push_back(map);
        }
        std::size_t k = 0;
        while (k < images.size() && ++images[k] == m) images[k++] = 0;
        if (k == images.size()) break;
    }
    return result;
}

/// Cycle detection on the powers of sigma_G.
inline PeriodicityProfile sigma_periodicity(const FiniteDiffGroup& g)
{
    std::map<std::vector<GroupElem>, std::size_t> seen;
    std::vector<GroupElem> power(g.order());
    std::iota(power.begin(), power.end(), GroupElem{0});
    for (std::size_t i = 0;; ++i) {
        auto [it, inserted] = seen.emplace(power, i);
        if (!inserted) return {it->second, i - it->second};
        for (auto& x : power) x = g.sigma(x);
    }
}

}  // namespace diffcoh
