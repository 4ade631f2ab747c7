#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "deltawell/core.hpp"

namespace deltawell {

inline constexpr int kSchemaVersion = 1;

/// One output cell: a number, a string, or empty (e.g. an absent odd root).
using Cell = std::variant<std::monostate, double, std::string>;

/// %.17g: enough digits that re-parsing reproduces the double bit-exactly.
inline std::string format_number(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string to_text(const Cell& c) {
    if (std::holds_alternative<std::monostate>(c)) return "";
    if (std::holds_alternative<double>(c)) return format_number(std::get<double>(c));
    return std::get<std::string>(c);
}

struct Table {
    std::string name;  // "rows" for the main table
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

using KeyValues = std::vector<std::pair<std::string, Cell>>;

/// Self-describing result of one CLI command. Serialization is bit-stable:
/// no timestamps anywhere, numbers always %.17g, insertion order preserved.
struct OutputRecord {
    std::string command;
    KeyValues inputs;
    KeyValues metadata;  // tool name/version, tolerances in effect
    KeyValues scalars;   // named scalar results (e.g. xi of the sampled state)
    std::optional<std::string> note;
    Table main;
    std::vector<Table> extra;
};

namespace detail {

inline void append_kv_comments(std::string& out, const char* prefix,
                               const KeyValues& kv) {
    for (const auto& [key, value] : kv) {
        out += "# ";
        out += prefix;
        out += key;
        out += '=';
        out += to_text(value);
        out += '\n';
    }
}

inline void append_table_csv(std::string& out, const Table& t) {
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        if (c) out += ',';
        out += t.columns[c];
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += to_text(row[c]);
        }
        out += '\n';
    }
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    return out;
}

inline void append_cell_json(std::string& out, const Cell& c) {
    if (std::holds_alternative<std::monostate>(c)) {
        out += "null";
    } else if (std::holds_alternative<double>(c)) {
        out += format_number(std::get<double>(c));
    } else {
        out += '"';
        out += json_escape(std::get<std::string>(c));
        out += '"';
    }
}

inline void append_kv_json(std::string& out, const KeyValues& kv) {
    out += '{';
    for (std::size_t i = 0; i < kv.size(); ++i) {
        if (i) out += ',';
        out += '"';
        out += json_escape(kv[i].first);
        out += "\":";
        append_cell_json(out, kv[i].second);
    }
    out += '}';
}

inline void append_table_json(std::string& out, const Table& t) {
    out += '[';
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        if (r) out += ',';
        out += '{';
        for (std::size_t c = 0; c < t.rows[r].size(); ++c) {
            if (c) out += ',';
            out += '"';
            out += json_escape(t.columns[c]);
            out += "\":";
            append_cell_json(out, t.rows[r][c]);
        }
        out += '}';
    }
    out += ']';
}

}  // namespace detail

inline std::string render_csv(const OutputRecord& rec) {
    std::string out;
    out += "# schema_version=";
    out += std::to_string(kSchemaVersion);
    out += '\n';
    out += "# command=" + rec.command + '\n';
    detail::append_kv_comments(out, "input ", rec.inputs);
    detail::append_kv_comments(out, "meta ", rec.metadata);
    detail::append_kv_comments(out, "scalar ", rec.scalars);
    if (rec.note) out += "# note=" + *rec.note + '\n';
    detail::append_table_csv(out, rec.main);
    for (const Table& t : rec.extra) {
        out += "# table=" + t.name + '\n';
        detail::append_table_csv(out, t);
    }
    return out;
}

inline std::string render_json(const OutputRecord& rec) {
    std::string out;
    out += "{\"schema_version\":";
    out += std::to_string(kSchemaVersion);
    out += ",\"command\":\"";
    out += detail::json_escape(rec.command);
    out += "\",\"inputs\":";
    detail::append_kv_json(out, rec.inputs);
    out += ",\"metadata\":";
    detail::append_kv_json(out, rec.metadata);
    if (!rec.scalars.empty()) {
        out += ",\"scalars\":";
        detail::append_kv_json(out, rec.scalars);
    }
    if (rec.note) {
        out += ",\"note\":\"";
        out += detail::json_escape(*rec.note);
        out += '"';
    }
    out += ",\"rows\":";
    detail::append_table_json(out, rec.main);
    for (const Table& t : rec.extra) {
        out += ",\"";
        out += detail::json_escape(t.name);
        out += "\":";
        detail::append_table_json(out, t);
    }
    out += "}\n";
    return out;
}

enum class OutputFormat { csv, json };

inline std::optional<OutputFormat> parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    return std::nullopt;
}

inline std::string render(const OutputRecord& rec, OutputFormat format) {
    return format == OutputFormat::csv ? render_csv(rec) : render_json(rec);
}

}  // namespace deltawell
