#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace kgrank::csv {

/// Parsed CSV document with a mandatory header row. Fields may be quoted with
/// `"`; a doubled quote inside a quoted field is a literal quote.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers;  // 1-based source line of each row

    /// Column index by name; throws ParseError when absent.
    std::size_t column(std::string_view name) const;
};

/// Throws ParseError on unterminated quotes or rows whose width differs from
/// the header.
Table parse(std::string_view text);

/// Throws ParseError unless the header matches `expected` exactly.
void require_header(const Table& t, const std::vector<std::string>& expected);

/// Quotes a field only when it contains a comma, quote or newline.
std::string escape(std::string_view field);

std::string join_row(const std::vector<std::string>& fields);

} // namespace kgrank::csv
