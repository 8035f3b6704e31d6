// report.hpp
// Uniform tabular results: {command, params, rows, warnings, runtime_ms},
// rendered as JSON, CSV (nested fields flattened to dotted keys) or an
// aligned text table.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "primelab/arith.hpp"
#include "primelab/density.hpp"
#include "primelab/params.hpp"

namespace primelab {

using Json = nlohmann::ordered_json;

inline constexpr int kFloatDigits = 12;

// Doubles are stored rounded to 12 significant digits; non-finite values become null.
inline Json num(double v) {
    if (!std::isfinite(v)) return nullptr;
    return round_significant(v, kFloatDigits);
}

inline Json big(const BigInt& v) {
    if (v >= 0 && v <= std::numeric_limits<u64>::max()) return static_cast<u64>(v);
    if (v < 0 && v >= std::numeric_limits<i64>::min()) return static_cast<i64>(v);
    return v.str();
}

inline Json to_json(const ParamValue& v) {
    return std::visit(
        [](const auto& x) -> Json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, double>)
                return num(x);
            else
                return x;
        },
        v);
}

inline Json to_json(const Params& params) {
    Json o = Json::object();
    for (const auto& [k, v] : params) o[k] = to_json(v);
    return o;
}

inline Json u64_list(const std::vector<u64>& v) {
    Json a = Json::array();
    for (u64 x : v) a.push_back(x);
    return a;
}

struct Report {
    std::string command;
    Json params = Json::object();
    std::vector<Json> rows;
    std::vector<std::string> warnings;
    i64 runtime_ms = 0;

    void warn(std::string w) {
        if (std::find(warnings.begin(), warnings.end(), w) == warnings.end()) warnings.push_back(std::move(w));
    }
};

enum class Format { json, csv, table };

inline Format parse_format(const std::string& s) {
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    if (s == "table") return Format::table;
    throw std::invalid_argument("unknown format: " + s);
}

inline Json report_json(const Report& r) {
    Json o = Json::object();
    o["command"] = r.command;
    o["params"] = r.params;
    o["rows"] = Json::array();
    for (const auto& row : r.rows) o["rows"].push_back(row);
    o["warnings"] = r.warnings;
    o["runtime_ms"] = r.runtime_ms;
    return o;
}

inline Report report_from_json(const Json& j) {
    Report r;
    r.command = j.at("command").get<std::string>();
    r.params = j.at("params");
    for (const auto& row : j.at("rows")) r.rows.push_back(row);
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    r.runtime_ms = j.at("runtime_ms").get<i64>();
    return r;
}

namespace detail {

// Scalar text shared by CSV and table output, so both carry the same digits as JSON.
inline std::string scalar_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "";
    if (v.is_array()) {
        std::string s;
        for (const auto& e : v) {
            if (!s.empty()) s += ' ';
            s += scalar_text(e);
        }
        return s;
    }
    return v.dump();
}

inline void flatten(const Json& v, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
    if (v.is_object()) {
        for (auto it = v.begin(); it != v.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
        return;
    }
    out.emplace_back(prefix, scalar_text(v));
}

inline std::vector<std::vector<std::pair<std::string, std::string>>> flat_rows(const Report& r) {
    std::vector<std::vector<std::pair<std::string, std::string>>> rows;
    for (const auto& row : r.rows) {
        rows.emplace_back();
        flatten(row, "", rows.back());
    }
    return rows;
}

inline std::vector<std::string> columns(const std::vector<std::vector<std::pair<std::string, std::string>>>& rows) {
    std::vector<std::string> cols;
    for (const auto& row : rows)
        for (const auto& [k, v] : row)
            if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
    return cols;
}

inline std::string lookup(const std::vector<std::pair<std::string, std::string>>& row, const std::string& key) {
    for (const auto& [k, v] : row)
        if (k == key) return v;
    return "";
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

}  // namespace detail

// Header row from field names, one line per row. Report metadata is not part of the CSV.
inline std::string report_csv(const Report& r) {
    const auto rows = detail::flat_rows(r);
    const auto cols = detail::columns(rows);
    std::ostringstream out;
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << detail::csv_field(cols[i]);
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << detail::csv_field(detail::lookup(row, cols[i]));
        out << '\n';
    }
    return out.str();
}

inline std::string report_table(const Report& r) {
    std::ostringstream out;
    out << r.command << '\n';
    std::vector<std::pair<std::string, std::string>> params;
    detail::flatten(r.params, "", params);
    for (const auto& [k, v] : params) out << "  " << k << " = " << v << '\n';
    const auto rows = detail::flat_rows(r);
    const auto cols = detail::columns(rows);
    if (!cols.empty()) {
        std::vector<std::size_t> width(cols.size());
        for (std::size_t i = 0; i < cols.size(); ++i) {
            width[i] = cols[i].size();
            for (const auto& row : rows) width[i] = std::max(width[i], detail::lookup(row, cols[i]).size());
        }
        auto line = [&](auto cell) {
            std::string s;
            for (std::size_t i = 0; i < cols.size(); ++i) {
                std::string c = cell(i);
                s += (i ? "  " : "") + std::string(width[i] - c.size(), ' ') + c;
            }
            out << s << '\n';
        };
        line([&](std::size_t i) { return cols[i]; });
        for (const auto& row : rows) line([&](std::size_t i) { return detail::lookup(row, cols[i]); });
    }
    for (const auto& w : r.warnings) out << "warning: " << w << '\n';
    out << "runtime_ms = " << r.runtime_ms << '\n';
    return out.str();
}

inline void write_report(std::ostream& out, const Report& r, Format f) {
    switch (f) {
        case Format::json: out << report_json(r).dump(2) << '\n'; break;
        case Format::csv: out << report_csv(r); break;
        case Format::table: out << report_table(r); break;
    }
}

}  // namespace primelab
