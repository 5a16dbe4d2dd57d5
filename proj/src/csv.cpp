#include "kgrank/csv.hpp"

#include "kgrank/error.hpp"

#include <algorithm>

namespace kgrank::csv {

std::size_t Table::column(std::string_view name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
        throw ParseError("missing column '" + std::string(name) + "'", 1);
    }
    return static_cast<std::size_t>(it - header.begin());
}

Table parse(std::string_view text) {
    Table table;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool any = false;
    std::size_t line = 1;
    std::size_t record_line = 1;

    auto finish_record = [&] {
        record.push_back(std::move(field));
        field.clear();
        const bool blank = record.size() == 1 && record.front().empty() && !any;
        if (!blank) {
            if (table.header.empty()) {
                table.header = std::move(record);
            } else {
                if (record.size() != table.header.size()) {
                    throw ParseError("expected " + std::to_string(table.header.size()) + " fields, found " +
                                         std::to_string(record.size()),
                                     record_line);
                }
                table.rows.push_back(std::move(record));
                table.line_numbers.push_back(record_line);
            }
        }
        record.clear();
        any = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') {
                    ++line;
                }
                field += c;
            }
            continue;
        }
        switch (c) {
        case '"':
            quoted = true;
            any = true;
            break;
        case ',':
            record.push_back(std::move(field));
            field.clear();
            any = true;
            break;
        case '\r':
            break;
        case '\n':
            finish_record();
            ++line;
            record_line = line;
            break;
        default:
            field += c;
            any = true;
        }
    }
    if (quoted) {
        throw ParseError("unterminated quoted field", record_line);
    }
    if (any || !field.empty() || !record.empty()) {
        finish_record();
    }
    return table;
}

void require_header(const Table& t, const std::vector<std::string>& expected) {
    if (t.header != expected) {
        std::string want;
        for (const auto& h : expected) {
            want += (want.empty() ? "" : ",") + h;
        }
        throw ParseError("header must be '" + want + "'", 1);
    }
}

std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

std::string join_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += escape(fields[i]);
    }
    out += '\n';
    return out;
}

} // namespace kgrank::csv
