#pragma once

// Seeded generators for random difference modules and corrupted controls.
//
// A random module is a conjugated direct sum of small representations
// (trivial, characters into F_q^*, permutation actions on cosets); sigma_M
// is a random solution of the linear system (dagger) in S.

#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "diffcoh/bar.hpp"
#include "diffcoh/field.hpp"
#include "diffcoh/group.hpp"
#include "diffcoh/linalg.hpp"
#include "diffcoh/module.hpp"

namespace diffcoh {

/// Portable draws (libstdc++ distributions are not specified bit-for-bit).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    std::uint64_t below(std::uint64_t n) { return engine_() % n; }
    std::uint32_t element(const Field& f) { return static_cast<std::uint32_t>(below(f.order())); }
    template <typename T>
    const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }

private:
    std::mt19937_64 engine_;
};

inline Matrix random_matrix(Rng& rng, const Field& f, std::size_t rows, std::size_t cols)
{
    Matrix a(rows, cols);
    for (auto& x : a.data) x = rng.element(f);
    return a;
}

inline Vector random_vector(Rng& rng, const Field& f, std::size_t n)
{
    Vector v(n);
    for (auto& x : v) x = rng.element(f);
    return v;
}

/// Subgroups of index 2 or 3, by exhaustive subset search (order <= 12).
inline std::vector<std::vector<GroupElem>> small_index_subgroups(const FiniteDiffGroup& g)
{
    const std::size_t m = g.order();
    std::vector<std::vector<GroupElem>> out;
    if (m > 12) return out;
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        if (!(mask >> g.identity() & 1u)) continue;
        const auto size = static_cast<std::size_t>(std::popcount(mask));
        if (size * 2 != m && size * 3 != m) continue;
        bool closed = true;
        for (GroupElem x = 0; x < m && closed; ++x)
            for (GroupElem y = 0; y < m && closed; ++y)
                if ((mask >> x & 1u) && (mask >> y & 1u)) closed = mask >> g.mul(x, y) & 1u;
        if (!closed) continue;
        std::vector<GroupElem> h;
        for (GroupElem x = 0; x < m; ++x)
            if (mask >> x & 1u) h.push_back(x);
        out.push_back(std::move(h));
    }
    return out;
}

/// Left multiplication on the cosets xH.
inline std::vector<Matrix> coset_representation(const FiniteDiffGroup& g, const std::vector<GroupElem>& h)
{
    const std::size_t m = g.order();
    std::vector<std::size_t> coset_of(m, m);
    std::size_t count = 0;
    for (GroupElem x = 0; x < m; ++x) {
        if (coset_of[x] != m) continue;
        for (auto y : h) coset_of[g.mul(x, y)] = count;
        ++count;
    }
    std::vector<GroupElem> rep(count);
    for (GroupElem x = m; x-- > 0;) rep[coset_of[x]] = x;
    std::vector<Matrix> rho;
    for (GroupElem x = 0; x < m; ++x) {
        Matrix r(count, count);
        for (std::size_t c = 0; c < count; ++c) r(coset_of[g.mul(x, rep[c])], c) = 1;
        rho.push_back(std::move(r));
    }
    return rho;
}

/// Every homomorphism G -> F_q^*, as 1x1 representations.
inline std::vector<std::vector<Matrix>> characters(const FiniteDiffGroup& g, const Field& f)
{
    const auto gens = generating_set(g);
    const std::size_t m = g.order();
    std::vector<std::vector<Matrix>> out;
    std::vector<std::uint32_t> images(gens.size(), 1);
    while (true) {
        std::vector<std::uint32_t> value(m, 0);
        value[g.identity()] = 1;
        std::vector<GroupElem> frontier{g.identity()};
        bool consistent = true;
        while (!frontier.empty() && consistent) {
            std::vector<GroupElem> next;
            for (auto x : frontier)
                for (std::size_t i = 0; i < gens.size(); ++i) {
                    const auto y = g.mul(x, gens[i]);
                    const auto v = f.mul(value[x], images[i]);
                    if (!value[y]) {
                        value[y] = v;
                        next.push_back(y);
                    } else if (value[y] != v) {
                        consistent = false;
                    }
                }
            frontier = std::move(next);
        }
        for (GroupElem x = 0; x < m && consistent; ++x)
            for (GroupElem y = 0; y < m && consistent; ++y)
                consistent = value[g.mul(x, y)] == f.mul(value[x], value[y]);
        if (consistent) {
            std::vector<Matrix> rho;
            for (auto v : value) {
                Matrix r(1, 1);
                r(0, 0) = v;
                rho.push_back(r);
            }
            out.push_back(std::move(rho));
        }
        std::size_t k = 0;
        while (k < images.size() && ++images[k] == f.order()) images[k++] = 1;
        if (k == images.size()) break;
    }
    return out;
}

/// Building blocks of dimension <= max_dim.
inline std::vector<std::vector<Matrix>> basic_representations(const FiniteDiffGroup& g, const Field& f,
                                                              std::size_t max_dim)
{
    auto out = characters(g, f);  // includes the trivial one
    for (const auto& h : small_index_subgroups(g)) {
        auto rho = coset_representation(g, h);
        if (rho.front().rows <= max_dim) out.push_back(std::move(rho));
    }
    return out;
}

inline std::vector<Matrix> direct_sum(const std::vector<std::vector<Matrix>>& blocks, std::size_t count)
{
    std::size_t d = 0;
    for (const auto& b : blocks) d += b.front().rows;
    std::vector<Matrix> out(count, Matrix(d, d));
    std::size_t off = 0;
    for (const auto& b : blocks) {
        const std::size_t k = b.front().rows;
        for (std::size_t g = 0; g < count; ++g)
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) out[g](off + i, off + j) = b[g](i, j);
        off += k;
    }
    return out;
}

/// A random representation of dimension d: P (sum of blocks) P^{-1}.
inline std::vector<Matrix> random_representation(Rng& rng, const FiniteDiffGroup& g, const Field& f, std::size_t d)
{
    const auto basics = basic_representations(g, f, d);
    std::vector<std::vector<Matrix>> chosen;
    std::size_t filled = 0;
    while (filled < d) {
        std::vector<std::vector<Matrix>> fitting;
        for (const auto& b : basics)
            if (b.front().rows <= d - filled) fitting.push_back(b);
        chosen.push_back(rng.pick(fitting));
        filled += chosen.back().front().rows;
    }
    auto rho = direct_sum(chosen, g.order());
    while (true) {
        const auto p = random_matrix(rng, f, d, d);
        const auto p_inv = linalg::inverse(f, p);
        if (!p_inv) continue;
        for (auto& r : rho) r = linalg::mul(f, p, linalg::mul(f, r, *p_inv));
        return rho;
    }
}

/// Solutions S of S rho(sigma_G g)^{(twist)} = rho(g) S, as a basis of vec(S).
inline std::vector<Vector> dagger_solutions(const Field& f, const FiniteDiffGroup& g, const std::vector<Matrix>& rho,
                                            std::uint32_t twist)
{
    const std::size_t d = rho.front().rows;
    Matrix system(g.order() * d * d, d * d);
    for (GroupElem x = 0; x < g.order(); ++x) {
        const auto lhs = linalg::frobenius_entries(f, rho[g.sigma(x)], twist);
        const auto& rhs = rho[x];
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                const std::size_t row = (x * d + i) * d + j;
                for (std::size_t k = 0; k < d; ++k) {
                    auto& a = system(row, i * d + k);
                    a = f.add(a, lhs(k, j));
                    auto& b = system(row, k * d + j);
                    b = f.sub(b, rhs(i, k));
                }
            }
    }
    return linalg::kernel(f, system);
}

/// A random valid left difference module of dimension d.
inline DiffModule random_module(Rng& rng, const Field& f, const FiniteDiffGroup& g, std::size_t d)
{
    const std::uint32_t twist = (f.degree() - f.sigma_power()) % f.degree();
    auto rho = random_representation(rng, g, f, d);
    const auto basis = dagger_solutions(f, g, rho, twist);
    Matrix s(d, d);
    for (const auto& b : basis) {
        const auto c = rng.element(f);
        for (std::size_t k = 0; k < d * d; ++k) s.data[k] = f.add(s.data[k], f.mul(c, b[k]));
    }
    return {f, g, std::move(rho), {std::move(s), twist}};
}

/// Perturbs S until (dagger) fails; nullopt if no attempt breaks it.
inline std::optional<DiffModule> corrupt_module(Rng& rng, const DiffModule& m, std::size_t attempts = 64)
{
    for (std::size_t i = 0; i < attempts; ++i) {
        DiffModule bad = m;
        bad.sigma_m.matrix = linalg::add(m.field, m.sigma_m.matrix, random_matrix(rng, m.field, m.dim(), m.dim()));
        if (!validate_left(bad)) return bad;
    }
    return std::nullopt;
}

/// The fields and groups the randomized suites draw from.
inline std::vector<Field> suite_fields()
{
    return {builtin_field(2, 1), builtin_field(3, 1), builtin_field(2, 2, 0), builtin_field(2, 2, 1),
            builtin_field(3, 2, 0), builtin_field(3, 2, 1)};
}

inline std::vector<FiniteDiffGroup> suite_groups()
{
    std::vector<FiniteDiffGroup> base{cyclic_group(2, 1), cyclic_group(3, 1), cyclic_group(4, 1), cyclic_group(6, 1),
                                      symmetric_group_s3()};
    const std::vector<std::string> names{"Z/2", "Z/3", "Z/4", "Z/6", "S_3"};
    std::vector<FiniteDiffGroup> out;
    for (std::size_t i = 0; i < base.size(); ++i) {
        std::size_t k = 0;
        for (auto& e : all_endomorphisms(base[i]))
            out.push_back(base[i].with_sigma(e, names[i] + ", endomorphism #" + std::to_string(k++)));
    }
    return out;
}

/// Largest degree <= cap whose top cochain space stays within budget (over F_p).
inline std::size_t affordable_degree(const DiffModule& m, std::size_t cap, std::size_t budget)
{
    const CochainIndexer idx(m.group, use_normalized(m.group));
    std::size_t j = 0;
    while (j < cap && idx.tuple_count(j + 2) * m.dim() * m.field.degree() <= budget) ++j;
    return j;
}

struct RandomCase {
    std::size_t index = 0;
    std::string label;
    DiffModule module;
    std::size_t jmax = 0;
};

inline std::string describe_case(const DiffModule& m, std::size_t jmax)
{
    return m.field.describe() + " | " + m.group.description() + " | dim " + std::to_string(m.dim()) + " | jmax " +
           std::to_string(jmax);
}

/// The oracle-equivalence case list.  Groups cycle so every endomorphism of
/// every group appears; fields and dimensions are drawn from the seed.
inline std::vector<RandomCase> random_cases(std::uint64_t seed, std::size_t count, std::size_t max_degree = 4,
                                            std::size_t budget = 3000)
{
    Rng rng(seed);
    const auto groups = suite_groups();
    const auto fields = suite_fields();
    std::vector<RandomCase> out;
    for (std::size_t i = 0; i < count; ++i) {
        const auto& g = groups[i % groups.size()];
        const auto& f = rng.pick(fields);
        const std::size_t d = 1 + rng.below(3);
        auto m = random_module(rng, f, g, d);
        const auto jmax = affordable_degree(m, max_degree, budget);
        out.push_back({i, describe_case(m, jmax), std::move(m), jmax});
    }
    return out;
}

}  // namespace diffcoh
