#include "kgrank/keyvalue.hpp"

#include "kgrank/error.hpp"

#include <cctype>
#include <charconv>

namespace kgrank {

std::string trim(std::string_view s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) {
        ++a;
    }
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) {
        --b;
    }
    return std::string(s.substr(a, b - a));
}

KeyValueDoc KeyValueDoc::parse(std::string_view text) {
    KeyValueDoc doc;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        const std::string line = trim(text.substr(pos, end - pos));
        pos = end + 1;
        ++line_no;
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError("expected 'key = value'", line_no);
        }
        auto key = trim(std::string_view(line).substr(0, eq));
        if (key.empty()) {
            throw ParseError("empty key", line_no);
        }
        doc.entries_.push_back({std::move(key), trim(std::string_view(line).substr(eq + 1)), line_no});
    }
    return doc;
}

const KeyValueDoc::Entry* KeyValueDoc::last(std::string_view key) const {
    for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
        if (it->key == key) {
            return &*it;
        }
    }
    return nullptr;
}

bool KeyValueDoc::has(std::string_view key) const { return last(key) != nullptr; }

std::optional<std::string> KeyValueDoc::get(std::string_view key) const {
    if (const auto* e = last(key)) {
        return e->value;
    }
    return std::nullopt;
}

std::vector<std::string> KeyValueDoc::get_all(std::string_view key) const {
    std::vector<std::string> out;
    for (const auto& e : entries_) {
        if (e.key == key) {
            out.push_back(e.value);
        }
    }
    return out;
}

std::string KeyValueDoc::get_or(std::string_view key, std::string fallback) const {
    const auto* e = last(key);
    return e ? e->value : std::move(fallback);
}

double KeyValueDoc::get_double(std::string_view key, double fallback) const {
    const auto* e = last(key);
    if (!e) {
        return fallback;
    }
    try {
        std::size_t used = 0;
        const double v = std::stod(e->value, &used);
        if (used == e->value.size()) {
            return v;
        }
    } catch (const std::exception&) {
    }
    throw ParseError("'" + e->key + "' expects a number, got '" + e->value + "'", e->line);
}

std::uint64_t KeyValueDoc::get_uint(std::string_view key, std::uint64_t fallback) const {
    const auto* e = last(key);
    if (!e) {
        return fallback;
    }
    std::uint64_t v = 0;
    const auto* first = e->value.data();
    const auto* stop = first + e->value.size();
    const auto [ptr, ec] = std::from_chars(first, stop, v);
    if (ec != std::errc{} || ptr != stop) {
        throw ParseError("'" + e->key + "' expects a non-negative integer, got '" + e->value + "'", e->line);
    }
    return v;
}

} // namespace kgrank
