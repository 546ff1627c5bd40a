#pragma once

// Report builders for each task, the builtin examples, and scenario dispatch.

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "diffcoh/difference_cohomology.hpp"
#include "diffcoh/error.hpp"
#include "diffcoh/ratdiff.hpp"
#include "diffcoh/report.hpp"
#include "diffcoh/scenario.hpp"

namespace diffcoh {

/// A module that fails its structural checks; carries the offending elements.
class ValidationFailure : public Error {
public:
    explicit ValidationFailure(ValidationReport report)
        : Error(ErrorCode::InvalidModule, report.message), report_(std::move(report))
    {
    }
    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

inline void require_valid(const DiffModule& m)
{
    if (auto r = validate_left(m); !r) throw ValidationFailure(r);
}

inline void module_metadata(ReportTable& t, const DiffModule& m)
{
    const auto prof = sigma_periodicity(m.group);
    t.meta("field", m.field.describe());
    t.meta("sigma_G", m.group.description() + " (preperiod " + std::to_string(prof.preperiod) + ", period " +
                          std::to_string(prof.period) + ")");
    t.meta("module", "dim " + std::to_string(m.dim()) + " over F_" + std::to_string(m.field.order()) +
                         ", sigma_M twist " + std::to_string(m.sigma_m.twist));
    t.meta("cochains", use_normalized(m.group) ? "normalized" : "unnormalized");
    t.meta("dims", "over F_" + std::to_string(m.field.characteristic()));
}

/// Dims over k are meaningful when sigma_M is k-linear.
inline bool k_linear(const DiffModule& m) { return m.sigma_m.twist % m.field.degree() == 0; }

inline ReportTable cohomology_report(const DiffModule& m, std::size_t jmax)
{
    require_valid(m);
    ReportTable t;
    t.title = "group cohomology H^j(G, M)";
    module_metadata(t, m);
    for (const auto& h : cohomology(m, jmax)) {
        ReportRow row;
        row.degree = h.degree;
        row.dim = finite_dim(h.dim_fp);
        row.method = "bar";
        row.extra["degree"] = h.degree;
        row.extra["dim_fp"] = h.dim_fp;
        row.extra["dim_k"] = h.dim_k;
        row.extra["sigma_matrix"] = matrix_json(m.field, h.sigma.matrix);
        row.extra["twist"] = h.sigma.twist;
        t.rows.push_back(std::move(row));
    }
    return t;
}

enum class DiffMethod { Ses, Cone, Both };

inline DiffMethod parse_method(const std::string& s)
{
    if (s == "ses") return DiffMethod::Ses;
    if (s == "cone") return DiffMethod::Cone;
    if (s == "both") return DiffMethod::Both;
    throw Error(ErrorCode::InvalidScenario, "unknown method '" + s + "'");
}

/// H^j_sigma by the chosen route(s); with both, a disagreement clears `ok`.
inline ReportTable diffcoh_report(const DiffModule& m, std::size_t jmax, DiffMethod method)
{
    if (method != DiffMethod::Cone) require_valid(m);
    ReportTable t;
    t.title = "difference cohomology H^j_sigma(G, M)";
    module_metadata(t, m);
    std::vector<DiffCohResult> ses, cone;
    if (method != DiffMethod::Cone) ses = assemble_ses(m, jmax);
    if (method != DiffMethod::Ses) cone = cone_cohomology(m, jmax);
    for (std::size_t j = 0; j <= jmax; ++j) {
        ReportRow row;
        row.degree = j;
        if (!ses.empty()) {
            row.dim = finite_dim(ses[j].dim);
            row.inv = finite_dim(*ses[j].inv);
            row.coinv = finite_dim(*ses[j].coinv);
        } else {
            row.dim = finite_dim(cone[j].dim);
        }
        if (method == DiffMethod::Both) {
            row.method = "both";
            row.extra["ses"] = ses[j].dim;
            row.extra["cone"] = cone[j].dim;
            row.extra["agree"] = ses[j].dim == cone[j].dim;
            if (ses[j].dim != cone[j].dim) {
                t.ok = false;
                t.notes.push_back("degree " + std::to_string(j) + ": ses gives " + std::to_string(ses[j].dim) +
                                  ", cone gives " + std::to_string(cone[j].dim));
            }
        } else {
            row.method = method == DiffMethod::Ses ? "ses" : "cone";
        }
        if (k_linear(m) && m.field.degree() > 1) row.extra["dim_k"] = row.dim.dim / m.field.degree();
        t.rows.push_back(std::move(row));
    }
    if (method != DiffMethod::Cone) {
        const auto h0 = h0_sigma_direct(m).dim;
        t.meta("H^0 from M^G and M^sigma", std::to_string(h0));
        if (h0 != t.rows.front().dim.dim) {
            t.ok = false;
            t.notes.push_back("degree 0 disagrees with the direct M^G and M^sigma computation");
        }
    }
    if (method == DiffMethod::Both) t.meta("oracle agreement", t.ok ? "yes" : "NO");
    return t;
}

inline ReportTable stable_report(const DiffModule& m, std::size_t jmax)
{
    require_valid(m);
    ReportTable t;
    t.title = "stable cohomology H^j_st(G, M)";
    module_metadata(t, m);
    const auto profile = sigma_periodicity(m.group);
    const BarCohomology level_a(twist(m, profile.preperiod), jmax, use_normalized(m.group));
    for (std::size_t j = 0; j <= jmax; ++j) {
        const auto c = stable_cohomology(level_a, profile, j);
        ReportRow row;
        row.degree = j;
        row.dim = finite_dim(c.dim_fp);
        row.method = "stable";
        row.extra["stabilization_index"] = c.stabilization_index;
        row.extra["stabilized"] = c.stabilized;
        t.rows.push_back(std::move(row));
    }
    t.meta("weak invariants (dim over k)", std::to_string(weak_invariants_dim(m)));
    return t;
}

inline ReportTable thm38_report(const DiffModule& m, std::size_t jmax)
{
    require_valid(m);
    ReportTable t;
    t.title = "H^j_sigma(G, M^infinity) against H^{j-1}_st(G, M)";
    module_metadata(t, m);
    const auto rep = theorem_3_8_check(m, jmax);
    for (const auto& r : rep.rows) {
        ReportRow row;
        row.degree = r.degree;
        row.dim = finite_dim(r.shift_side);
        row.inv = finite_dim(r.shift_invariants);
        row.coinv = finite_dim(r.shift_side);
        row.method = "shift";
        row.extra["stable"] = r.stable_side;
        row.extra["agree"] = r.agree();
        t.rows.push_back(std::move(row));
        if (!r.agree()) {
            t.ok = false;
            t.notes.push_back("degree " + std::to_string(r.degree) + ": shift side " + std::to_string(r.shift_side) +
                              ", stable side " + std::to_string(r.stable_side) + ", shift invariants " +
                              std::to_string(r.shift_invariants));
        }
    }
    t.meta("agreement", t.ok ? "yes" : "NO");
    return t;
}

inline ReportTable gm_report(const GradedDiffModule& m)
{
    if (auto v = validate_graded(m); !v) throw Error(ErrorCode::InvalidModule, v.message);
    ReportTable t;
    t.title = "difference rational cohomology of a G_m-module";
    t.meta("field", m.field.describe());
    std::string classes;
    for (const auto& [cls, part] : decompose_orbits(m)) {
        classes += (classes.empty() ? "" : "; ") + std::to_string(cls.representative) + ": {";
        for (std::size_t i = 0; i < cls.chain.size(); ++i) classes += (i ? ", " : "") + std::to_string(cls.chain[i]);
        classes += "}";
    }
    t.meta("orbit classes", classes.empty() ? "none" : classes);
    const auto h = gm_difference_cohomology(m);
    t.meta("stable H^0 (colimit of x on weight 0)", std::to_string(gm_stable_h0(m)));
    ReportRow r0{0, finite_dim(h.h0), finite_dim(h.h0), finite_dim(0), "weight0", {}};
    ReportRow r1{1, finite_dim(h.h1), finite_dim(0), finite_dim(h.h1), "weight0", {}};
    t.rows = {r0, r1};
    t.notes.push_back("higher degrees vanish");
    return t;
}

inline ReportTable ga_report(std::uint32_t p, std::size_t jmax, std::uint32_t truncation)
{
    ReportTable t;
    t.title = "difference rational cohomology H^j_sigma(G_a, F_p)";
    t.meta("p", std::to_string(p));
    t.meta("truncation", std::to_string(truncation));
    for (const auto& r : ga_example_dims(p, jmax, truncation)) {
        ReportRow row;
        row.degree = r.degree;
        row.dim = r.dim;
        row.inv = finite_dim(r.inv);
        row.coinv = r.coinv;
        row.method = "orbits";
        if (!r.coinv.evidence.empty()) {
            row.extra["orbit_counts"] = r.coinv.evidence;
            row.extra["truncations"] = r.coinv.truncations;
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

// ---------------------------------------------------------------- examples

/// Closed form for Z/p, sigma(a) = ta, trivial module k: r = ord(t) in F_p^*.
inline std::size_t cyclic_closed_form(std::size_t n, std::size_t r)
{
    if (n == 0) return 1;
    const std::size_t two_r = 2 * r;
    // Summands add; for r = 1 both n - 1 and n + 1 may qualify.
    return 2 * (n % two_r == 0) + ((n - 1) % two_r == 0) + ((n + 1) % two_r == 0);
}

inline std::size_t multiplicative_order(std::uint32_t t, std::uint32_t p)
{
    std::size_t r = 1;
    for (std::uint64_t x = t % p; x != 1; x = x * t % p) ++r;
    return r;
}

inline ReportTable cyclic_trivial_example(std::uint32_t p, std::uint32_t t, std::size_t jmax)
{
    const auto field = builtin_field(p, 1);
    const auto m = trivial_module(field, cyclic_group(p, t));
    auto table = diffcoh_report(m, jmax, DiffMethod::Both);
    table.title = "Z/" + std::to_string(p) + " with sigma(a) = " + std::to_string(t) + "a, trivial module F_" +
                  std::to_string(p);
    if (p > 2) {
        const auto r = multiplicative_order(t, p);
        table.meta("order of t", std::to_string(r));
        for (auto& row : table.rows) {
            const auto expected = cyclic_closed_form(row.degree, r);
            row.extra["closed_form"] = expected;
            if (row.dim.dim != expected) {
                table.ok = false;
                table.notes.push_back("degree " + std::to_string(row.degree) + " differs from the closed form");
            }
        }
    }
    return table;
}

/// (dim ker, dim coker) of c -> F(c) - a c on k, by enumerating every element.
inline std::pair<std::size_t, std::size_t> brute_force_eigen(const Field& f, std::uint32_t s, std::uint32_t a)
{
    std::size_t kernel = 0;
    std::set<std::uint32_t> image;
    for (std::uint32_t c = 0; c < f.order(); ++c) {
        const auto v = f.sub(f.frob(c, s), f.mul(a, c));
        if (v == 0) ++kernel;
        image.insert(v);
    }
    auto log_p = [&](std::size_t x) {
        std::size_t e = 0;
        while (x > 1) {
            x /= f.characteristic();
            ++e;
        }
        return e;
    };
    return {log_p(kernel), f.degree() - log_p(image.size())};
}

/// k = F_{p^n} with F = Frob^s, module (k, F^{-1}) over Z/p with sigma(a) = ta.
inline ReportTable frobenius_eigen_example(std::uint32_t p, std::uint32_t n, std::uint32_t s, std::uint32_t t, std::size_t jmax)
{
    const auto field = builtin_field(p, n, s);
    const auto m = trivial_module(field, cyclic_group(p, t));
    auto table = diffcoh_report(m, jmax, DiffMethod::Both);
    table.title = "Z/" + std::to_string(p) + " with sigma(a) = " + std::to_string(t) + "a, module (k, F^{-1}), k = F_" +
                  std::to_string(field.order()) + ", F = Frob^" + std::to_string(s);
    const Field fp = field.prime_field();
    auto t_pow = [&](std::size_t e) { return fp.pow(fp.from_int(t), e); };
    for (auto& row : table.rows) {
        const std::size_t j = row.degree / 2;
        std::size_t expected = 0;
        if (row.degree == 0) {
            expected = brute_force_eigen(field, s, 1).first;
        } else if (row.degree % 2 == 0) {
            expected = brute_force_eigen(field, s, t_pow(j)).first + brute_force_eigen(field, s, t_pow(j)).second;
        } else {
            expected = brute_force_eigen(field, s, t_pow(j + 1)).first + brute_force_eigen(field, s, t_pow(j)).second;
        }
        row.extra["eigen_brute_force"] = expected;
        if (row.dim.dim != expected) {
            table.ok = false;
            table.notes.push_back("degree " + std::to_string(row.degree) + " differs from the eigenspace count");
        }
    }
    const auto co = brute_force_eigen(field, s, 1).second;
    table.notes.push_back("degree 0 has only the invariant summand k^1; the display k^1 + k_1 would give " +
                          std::to_string(table.rows.front().dim.dim + co));
    return table;
}

/// Finite stand-in for k = F_p^alg with the Frobenius: over F_{p^n} the
/// co-eigenspace k_fr is 1-dimensional rather than 0.
inline ReportTable closure_standin_example(std::uint32_t p, std::uint32_t n, std::uint32_t t, std::size_t jmax)
{
    auto table = frobenius_eigen_example(p, n, 1, t, jmax);
    const auto [fixed, co] = brute_force_eigen(builtin_field(p, n, 1), 1, 1);
    table.title += " (finite stand-in for the algebraic closure)";
    table.meta("dim k^fr", std::to_string(fixed));
    table.meta("dim k_fr", std::to_string(co));
    for (auto& row : table.rows) row.extra["closure_value"] = 1;
    table.notes.push_back("over the algebraic closure k_fr = 0 and every degree has dimension 1; over F_" +
                          std::to_string(p) + "^" + std::to_string(n) + " k_fr has dimension " + std::to_string(co));
    return table;
}

/// Faithful 2-dimensional module over F_3 for Z/4 with sigma(a) = 2a: the
/// rotation of order 4.  (dagger) forces S = 0.
inline DiffModule z4_faithful_module()
{
    const auto f = builtin_field(3, 1);
    const auto g = cyclic_group(4, 2);
    Matrix gen(2, 2);
    gen(0, 1) = f.neg(1);
    gen(1, 0) = 1;
    std::vector<Matrix> rho{Matrix::identity(2)};
    for (int k = 1; k < 4; ++k) rho.push_back(linalg::mul(f, rho.back(), gen));
    return {f, g, rho, {Matrix(2, 2), 0}};
}

inline ReportTable right_asymmetry_report()
{
    ReportTable t;
    t.title = "invariants of a right difference module need not be sigma-stable";
    const auto found = find_right_asymmetry_witness();
    if (!found) {
        t.ok = false;
        t.notes.push_back("no witness found");
        return t;
    }
    const auto& [m, v] = *found;
    t.meta("group", m.group.description());
    t.meta("field", m.field.describe());
    t.meta("rho(1)", matrix_json(m.field, m.rho[1]).dump());
    t.meta("sigma_M", matrix_json(m.field, m.sigma_m.matrix).dump());
    t.meta("invariant vector", nlohmann::json(v).dump());
    t.meta("its image", nlohmann::json(m.sigma_m(m.field, v)).dump());
    t.notes.push_back("the image is not fixed by the action");
    return t;
}

inline std::vector<std::string> example_names()
{
    return {"ex3_6_1", "ex3_6_2", "ex3_6_3", "ga", "gm_trivial", "gm_regular", "thm38_z3", "thm38_z4", "right_asymmetry"};
}

struct ExampleOptions {
    std::optional<std::uint32_t> p;
    std::optional<std::uint32_t> t;
    std::optional<std::size_t> jmax;
    std::optional<std::uint32_t> truncation;
};

inline ReportTable run_example(const std::string& name, const ExampleOptions& o)
{
    if (name == "ex3_6_1") return cyclic_trivial_example(o.p.value_or(3), o.t.value_or(2), o.jmax.value_or(9));
    if (name == "ex3_6_2") return frobenius_eigen_example(o.p.value_or(3), 2, 1, o.t.value_or(2), o.jmax.value_or(6));
    if (name == "ex3_6_3") return closure_standin_example(o.p.value_or(3), 2, o.t.value_or(2), o.jmax.value_or(6));
    if (name == "ga") return ga_report(o.p.value_or(3), o.jmax.value_or(4), o.truncation.value_or(12));
    if (name == "gm_trivial") return gm_report(gm_trivial_module(builtin_field(o.p.value_or(3), 1)));
    if (name == "gm_regular")
        return gm_report(gm_regular_module(builtin_field(o.p.value_or(3), 1), o.truncation.value_or(12)));
    if (name == "thm38_z3")
        return thm38_report(trivial_module(builtin_field(3, 1), cyclic_group(3, o.t.value_or(2))), o.jmax.value_or(4));
    if (name == "thm38_z4") return thm38_report(z4_faithful_module(), o.jmax.value_or(4));
    if (name == "right_asymmetry") return right_asymmetry_report();
    throw Error(ErrorCode::InvalidScenario, "unknown example '" + name + "'");
}

// ---------------------------------------------------------------- dispatch

inline const DiffModule& need_module(const Scenario& s)
{
    if (!s.module) throw Error(ErrorCode::InvalidScenario, "$: this task needs field, group and module");
    return *s.module;
}

inline ReportTable validate_report(const DiffModule& m)
{
    if (auto r = check_shapes(m); !r) throw ValidationFailure(r);
    require_valid(m);
    ReportTable t;
    t.title = "validation";
    module_metadata(t, m);
    t.meta("status", "ok");
    const auto status = group_hom_reformulation_check(m);
    t.meta("automorphism form", status == ReformulationStatus::Ok            ? "ok"
                                : status == ReformulationStatus::Violation ? "violated"
                                                                           : "not applicable (S singular)");
    if (status == ReformulationStatus::Violation) t.ok = false;
    return t;
}

/// Runs the scenario's task.
inline ReportTable run(const Scenario& s)
{
    const auto& task = s.task;
    if (task == "validate") return validate_report(need_module(s));
    if (task == "cohomology") return cohomology_report(need_module(s), s.jmax);
    if (task == "diffcoh") return diffcoh_report(need_module(s), s.jmax, parse_method(s.method));
    if (task == "oracle") return diffcoh_report(need_module(s), s.jmax, DiffMethod::Both);
    if (task == "stable") return stable_report(need_module(s), s.degree.value_or(s.jmax));
    if (task == "thm38") return thm38_report(need_module(s), s.jmax);
    if (task == "gm") {
        if (!s.graded) throw Error(ErrorCode::InvalidScenario, "$: task gm needs a graded module");
        return gm_report(*s.graded);
    }
    if (task == "ga-example") return ga_report(s.p.value_or(3), s.jmax, s.truncation);
    if (task == "examples") {
        if (!s.example) throw Error(ErrorCode::InvalidScenario, "$.example: task examples needs an example name");
        return run_example(*s.example, {s.p, s.t, s.jmax, s.truncation});
    }
    throw Error(ErrorCode::InvalidScenario, "$.task: unknown task '" + task + "'");
}

}  // namespace diffcoh
