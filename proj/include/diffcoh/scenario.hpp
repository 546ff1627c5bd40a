#pragma once

// Scenario files: a field, a difference group and a module (or a graded
// module) plus the task to run.  Errors name the offending JSON path.
//
//   {"field": {"p":3,"n":2,"modulus":[1,0,1],"sigma_power":1},
//    "group": {"type":"cyclic","m":3,"t":2},
//    "module": {"dim":1,"rho":{"0":[[1]],"1":[[1]],"2":[[1]]},"sigma_m":{"S":[[1]],"twist":1}},
//    "task": "diffcoh", "jmax": 6}

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "diffcoh/error.hpp"
#include "diffcoh/field.hpp"
#include "diffcoh/group.hpp"
#include "diffcoh/module.hpp"
#include "diffcoh/ratdiff.hpp"

namespace diffcoh {

struct Scenario {
    std::string task;
    std::optional<DiffModule> module;
    std::optional<GradedDiffModule> graded;
    std::size_t jmax = 6;
    std::optional<std::size_t> degree;
    std::uint32_t truncation = 12;
    std::string method = "both";
    std::string format = "text";
    // ga-example and examples tasks
    std::optional<std::string> example;
    std::optional<std::uint32_t> p;
    std::optional<std::uint32_t> t;
};

namespace scenario_detail {

using json = nlohmann::json;

[[noreturn]] inline void fail(const std::string& path, const std::string& what)
{
    throw Error(ErrorCode::InvalidScenario, path + ": " + what);
}

inline const json& require(const json& j, const std::string& key, const std::string& path)
{
    if (!j.is_object()) fail(path, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) fail(path, "missing field '" + key + "'");
    return *it;
}

inline std::int64_t integer(const json& j, const std::string& path)
{
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<std::int64_t>();
}

inline std::uint64_t natural(const json& j, const std::string& path)
{
    const auto v = integer(j, path);
    if (v < 0) fail(path, "expected a non-negative integer");
    return static_cast<std::uint64_t>(v);
}

inline std::int64_t key_integer(const std::string& key, const std::string& path)
{
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(key, &used);
    } catch (const std::exception&) {
        fail(path, "key '" + key + "' is not an integer");
    }
    if (used != key.size()) fail(path, "key '" + key + "' is not an integer");
    return v;
}

inline Field parse_field(const json& j, const std::string& path)
{
    const auto p = static_cast<std::uint32_t>(natural(require(j, "p", path), path + ".p"));
    const auto n = j.contains("n") ? static_cast<std::uint32_t>(natural(j["n"], path + ".n")) : 1u;
    const auto s = j.contains("sigma_power") ? static_cast<std::uint32_t>(natural(j["sigma_power"], path + ".sigma_power")) : 0u;
    std::vector<std::uint32_t> modulus;
    if (j.contains("modulus")) {
        const auto& m = j["modulus"];
        if (!m.is_array()) fail(path + ".modulus", "expected a coefficient list");
        for (std::size_t i = 0; i < m.size(); ++i)
            modulus.push_back(static_cast<std::uint32_t>(natural(m[i], path + ".modulus[" + std::to_string(i) + "]")));
    } else if (auto b = builtin_modulus(p, n)) {
        modulus = *b;
    } else {
        fail(path, "no built-in modulus for p=" + std::to_string(p) + ", n=" + std::to_string(n));
    }
    try {
        return make_field(p, n, modulus, s);
    } catch (const Error& e) {
        fail(path, e.what());
    }
}

inline std::vector<GroupElem> parse_index_list(const json& j, std::size_t m, const std::string& path)
{
    if (!j.is_array()) fail(path, "expected a list");
    std::vector<GroupElem> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto v = natural(j[i], path + "[" + std::to_string(i) + "]");
        if (v >= m) fail(path + "[" + std::to_string(i) + "]", "index out of range");
        out.push_back(v);
    }
    return out;
}

inline FiniteDiffGroup parse_group(const json& j, const std::string& path)
{
    const auto& type = require(j, "type", path);
    if (!type.is_string()) fail(path + ".type", "expected a string");
    const auto t = type.get<std::string>();
    try {
        if (t == "cyclic")
            return cyclic_group(integer(require(j, "m", path), path + ".m"), integer(require(j, "t", path), path + ".t"));
        if (t == "s3") {
            const auto h = j.contains("conjugate_by") ? natural(j["conjugate_by"], path + ".conjugate_by") : 0;
            if (h >= 6) fail(path + ".conjugate_by", "index out of range");
            return symmetric_group_s3(h);
        }
        if (t == "table") {
            const auto& table = require(j, "table", path);
            if (!table.is_array()) fail(path + ".table", "expected a list of rows");
            std::vector<std::vector<GroupElem>> rows;
            for (std::size_t i = 0; i < table.size(); ++i)
                rows.push_back(parse_index_list(table[i], table.size(), path + ".table[" + std::to_string(i) + "]"));
            auto sigma = parse_index_list(require(j, "sigma", path), rows.size(), path + ".sigma");
            if (sigma.size() != rows.size()) fail(path + ".sigma", "needs one image per element");
            const auto desc = j.contains("description") && j["description"].is_string()
                                  ? j["description"].get<std::string>()
                                  : "table group of order " + std::to_string(rows.size());
            return FiniteDiffGroup(std::move(rows), std::move(sigma), desc);
        }
    } catch (const Error& e) {
        if (e.code() == ErrorCode::InvalidScenario && std::string(e.what()).find(path) != std::string::npos) throw;
        fail(path, e.what());
    }
    fail(path + ".type", "unknown group type '" + t + "'");
}

/// An integer (read mod p) or a coefficient list in the power basis.
inline std::uint32_t parse_element(const Field& f, const json& j, const std::string& path)
{
    if (j.is_number_integer()) return f.from_int(j.get<std::int64_t>());
    if (j.is_array()) {
        if (j.size() > f.degree()) fail(path, "more coefficients than the extension degree");
        std::vector<std::uint32_t> c(f.degree(), 0);
        for (std::size_t i = 0; i < j.size(); ++i) c[i] = f.from_int(integer(j[i], path + "[" + std::to_string(i) + "]"));
        return f.from_coeffs(c);
    }
    fail(path, "expected a field element (integer or coefficient list)");
}

inline Matrix parse_matrix(const Field& f, const json& j, std::size_t rows, std::size_t cols, const std::string& path)
{
    if (!j.is_array() || j.size() != rows)
        fail(path, "expected " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
    Matrix a(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const auto rp = path + "[" + std::to_string(r) + "]";
        if (!j[r].is_array() || j[r].size() != cols)
            fail(rp, "expected a row of length " + std::to_string(cols));
        for (std::size_t c = 0; c < cols; ++c) a(r, c) = parse_element(f, j[r][c], rp + "[" + std::to_string(c) + "]");
    }
    return a;
}

inline DiffModule parse_module(const Field& f, const FiniteDiffGroup& g, const json& j, const std::string& path)
{
    if (j.contains("type")) {
        const auto t = j["type"].is_string() ? j["type"].get<std::string>() : std::string();
        if (t == "trivial") return trivial_module(f, g, j.contains("dim") ? natural(j["dim"], path + ".dim") : 1);
        if (t == "regular") {
            try {
                return regular_module(f, g);
            } catch (const Error& e) {
                fail(path, e.what());
            }
        }
        fail(path + ".type", "unknown module type");
    }
    const auto d = natural(require(j, "dim", path), path + ".dim");
    const auto& rho_json = require(j, "rho", path);
    if (!rho_json.is_object()) fail(path + ".rho", "expected an object keyed by group element");
    std::vector<Matrix> rho(g.order());
    std::vector<bool> seen(g.order(), false);
    for (const auto& [key, value] : rho_json.items()) {
        const auto k = key_integer(key, path + ".rho");
        if (k < 0 || static_cast<std::size_t>(k) >= g.order()) fail(path + ".rho." + key, "no such group element");
        rho[k] = parse_matrix(f, value, d, d, path + ".rho." + key);
        seen[k] = true;
    }
    for (GroupElem x = 0; x < g.order(); ++x)
        if (!seen[x]) fail(path + ".rho", "missing matrix for element " + std::to_string(x));
    const auto& sm = require(j, "sigma_m", path);
    const auto s = parse_matrix(f, require(sm, "S", path + ".sigma_m"), d, d, path + ".sigma_m.S");
    const auto twist = sm.contains("twist") ? static_cast<std::uint32_t>(natural(sm["twist"], path + ".sigma_m.twist"))
                                            : (f.degree() - f.sigma_power()) % f.degree();
    return {f, g, std::move(rho), {s, twist}};
}

inline GradedDiffModule parse_graded(const json& j, const std::string& path)
{
    Field f = j.contains("field") ? parse_field(j["field"], path + ".field")
                                  : [&] {
                                        const auto p = natural(require(j, "p", path), path + ".p");
                                        try {
                                            return builtin_field(static_cast<std::uint32_t>(p), 1);
                                        } catch (const Error& e) {
                                            fail(path + ".p", e.what());
                                        }
                                    }();
    GradedDiffModule m{f, {}, {}};
    const auto& w = require(j, "weights", path);
    if (!w.is_object()) fail(path + ".weights", "expected an object keyed by weight");
    for (const auto& [key, value] : w.items())
        m.weights[key_integer(key, path + ".weights")] = natural(value, path + ".weights." + key);
    if (j.contains("xmaps")) {
        const auto& x = j["xmaps"];
        if (!x.is_object()) fail(path + ".xmaps", "expected an object keyed by weight");
        for (const auto& [key, value] : x.items()) {
            const auto src = key_integer(key, path + ".xmaps");
            XMap xm;
            const json* mat = &value;
            if (value.is_object()) {
                if (value.contains("target")) xm.target = integer(value["target"], path + ".xmaps." + key + ".target");
                mat = &require(value, "matrix", path + ".xmaps." + key);
            }
            const std::size_t cols = m.dim_at(src);
            if (!mat->is_array()) fail(path + ".xmaps." + key, "expected a matrix");
            // Shapes are checked by validate_graded; read what is there.
            const std::size_t given_rows = mat->size();
            const std::size_t given_cols = given_rows ? (*mat)[0].size() : cols;
            xm.matrix = parse_matrix(f, *mat, given_rows, given_cols, path + ".xmaps." + key);
            m.xmaps[src] = std::move(xm);
        }
    }
    return m;
}

}  // namespace scenario_detail

inline Scenario parse_scenario(const nlohmann::json& j)
{
    using namespace scenario_detail;
    if (!j.is_object()) fail("$", "scenario must be a JSON object");
    Scenario s;
    if (j.contains("task")) {
        if (!j["task"].is_string()) fail("$.task", "expected a string");
        s.task = j["task"].get<std::string>();
    }
    if (j.contains("jmax")) s.jmax = natural(j["jmax"], "$.jmax");
    if (j.contains("degree")) s.degree = natural(j["degree"], "$.degree");
    if (j.contains("truncation")) s.truncation = static_cast<std::uint32_t>(natural(j["truncation"], "$.truncation"));
    if (j.contains("method") && j["method"].is_string()) s.method = j["method"].get<std::string>();
    if (j.contains("format") && j["format"].is_string()) s.format = j["format"].get<std::string>();
    if (j.contains("example")) {
        if (!j["example"].is_string()) fail("$.example", "expected a string");
        s.example = j["example"].get<std::string>();
    }
    if (j.contains("p")) s.p = static_cast<std::uint32_t>(natural(j["p"], "$.p"));
    if (j.contains("t")) s.t = static_cast<std::uint32_t>(natural(j["t"], "$.t"));
    if (j.contains("weights")) {
        s.graded = parse_graded(j, "$");
        if (s.task.empty()) s.task = "gm";
    } else if (j.contains("graded")) {
        s.graded = parse_graded(j["graded"], "$.graded");
    }
    if (j.contains("module") || j.contains("group")) {
        const Field f = parse_field(require(j, "field", "$"), "$.field");
        const auto g = parse_group(require(j, "group", "$"), "$.group");
        s.module = parse_module(f, g, require(j, "module", "$"), "$.module");
    }
    return s;
}

inline Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidScenario, "cannot open " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::InvalidScenario, path + ": " + e.what());
    }
    return parse_scenario(j);
}

/// The scenario that reproduces a module; parse_scenario reads it back.
inline nlohmann::json scenario_json(const DiffModule& m, const std::string& task, std::size_t jmax)
{
    const auto& f = m.field;
    auto element = [&](std::uint32_t x) { return f.is_prime_field() ? nlohmann::json(x) : nlohmann::json(f.coeffs(x)); };
    auto matrix = [&](const Matrix& a) {
        auto rows = nlohmann::json::array();
        for (std::size_t i = 0; i < a.rows; ++i) {
            auto row = nlohmann::json::array();
            for (std::size_t j = 0; j < a.cols; ++j) row.push_back(element(a(i, j)));
            rows.push_back(row);
        }
        return rows;
    };
    nlohmann::json j;
    j["field"] = {{"p", f.characteristic()}, {"n", f.degree()}, {"modulus", f.modulus()}, {"sigma_power", f.sigma_power()}};
    j["group"] = {{"type", "table"},
                  {"table", m.group.table()},
                  {"sigma", m.group.sigma_map()},
                  {"description", m.group.description()}};
    nlohmann::json rho = nlohmann::json::object();
    for (GroupElem g = 0; g < m.rho.size(); ++g) rho[std::to_string(g)] = matrix(m.rho[g]);
    j["module"] = {{"dim", m.dim()}, {"rho", rho}, {"sigma_m", {{"S", matrix(m.sigma_m.matrix)}, {"twist", m.sigma_m.twist}}}};
    j["task"] = task;
    j["jmax"] = jmax;
    return j;
}

}  // namespace diffcoh
