#pragma once

// Result tables and their text / json / csv renderings.  Output depends only
// on the table contents, so identical runs give identical bytes.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "diffcoh/error.hpp"
#include "diffcoh/field.hpp"
#include "diffcoh/linalg.hpp"
#include "diffcoh/ratdiff.hpp"

namespace diffcoh {

struct ReportRow {
    std::size_t degree = 0;
    MaybeInfiniteDim dim;
    std::optional<MaybeInfiniteDim> inv;
    std::optional<MaybeInfiniteDim> coinv;
    std::string method;
    nlohmann::ordered_json extra = nlohmann::ordered_json::object();  // json-only fields
};

struct ReportTable {
    std::string title;
    std::vector<std::pair<std::string, std::string>> metadata;  // printed in order
    std::vector<ReportRow> rows;
    std::vector<std::string> notes;
    bool ok = true;  // false when two computations that must agree did not

    void meta(std::string key, std::string value) { metadata.emplace_back(std::move(key), std::move(value)); }
};

enum class Format { Text, Json, Csv };

inline Format parse_format(const std::string& s)
{
    if (s == "text") return Format::Text;
    if (s == "json") return Format::Json;
    if (s == "csv") return Format::Csv;
    throw Error(ErrorCode::InvalidScenario, "unknown output format '" + s + "'");
}

inline std::string dim_string(const MaybeInfiniteDim& d) { return d.infinite ? "inf" : std::to_string(d.dim); }

inline nlohmann::ordered_json dim_json(const MaybeInfiniteDim& d)
{
    return d.infinite ? nlohmann::ordered_json("inf") : nlohmann::ordered_json(d.dim);
}

/// A field element as an integer over F_p, as its coefficient vector otherwise.
inline nlohmann::ordered_json element_json(const Field& f, std::uint32_t x)
{
    if (f.is_prime_field()) return x;
    return f.coeffs(x);
}

inline nlohmann::ordered_json matrix_json(const Field& f, const Matrix& a)
{
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < a.rows; ++i) {
        auto row = nlohmann::ordered_json::array();
        for (std::size_t j = 0; j < a.cols; ++j) row.push_back(element_json(f, a(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace detail {

inline std::string optional_cell(const std::optional<MaybeInfiniteDim>& d) { return d ? dim_string(*d) : ""; }

inline std::string pad_left(const std::string& s, std::size_t w)
{
    return std::string(w > s.size() ? w - s.size() : 0, ' ') + s;
}

inline std::string emit_text(const ReportTable& t)
{
    std::ostringstream out;
    out << "# " << t.title << "\n";
    for (const auto& [k, v] : t.metadata) out << k << ": " << v << "\n";
    const std::vector<std::string> head{"degree", "dim", "inv", "coinv"};
    std::vector<std::vector<std::string>> cells;
    for (const auto& r : t.rows)
        cells.push_back({std::to_string(r.degree), dim_string(r.dim), optional_cell(r.inv), optional_cell(r.coinv)});
    std::vector<std::size_t> width;
    for (std::size_t c = 0; c < head.size(); ++c) {
        std::size_t w = head[c].size();
        for (const auto& row : cells) w = std::max(w, row[c].size());
        width.push_back(w);
    }
    for (std::size_t c = 0; c < head.size(); ++c) out << pad_left(head[c], width[c]) << "  ";
    out << "method\n";
    for (std::size_t i = 0; i < cells.size(); ++i) {
        for (std::size_t c = 0; c < head.size(); ++c) out << pad_left(cells[i][c], width[c]) << "  ";
        out << t.rows[i].method << "\n";
    }
    for (const auto& n : t.notes) out << "note: " << n << "\n";
    return out.str();
}

inline std::string emit_json(const ReportTable& t)
{
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : t.rows) {
        nlohmann::ordered_json row;
        row["j"] = r.degree;
        row["dim"] = dim_json(r.dim);
        row["inv"] = r.inv ? dim_json(*r.inv) : nlohmann::ordered_json(nullptr);
        row["coinv"] = r.coinv ? dim_json(*r.coinv) : nlohmann::ordered_json(nullptr);
        row["method"] = r.method;
        for (const auto& [k, v] : r.extra.items()) row[k] = v;
        rows.push_back(std::move(row));
    }
    return rows.dump(2) + "\n";
}

inline std::string emit_csv(const ReportTable& t)
{
    std::ostringstream out;
    out << "degree,dim,inv,coinv,method\n";
    for (const auto& r : t.rows)
        out << r.degree << ',' << dim_string(r.dim) << ',' << optional_cell(r.inv) << ',' << optional_cell(r.coinv)
            << ',' << r.method << "\n";
    return out.str();
}

}  // namespace detail

inline std::string emit(const ReportTable& t, Format format)
{
    switch (format) {
    case Format::Text: return detail::emit_text(t);
    case Format::Json: return detail::emit_json(t);
    case Format::Csv: return detail::emit_csv(t);
    }
    return {};
}

}  // namespace diffcoh
