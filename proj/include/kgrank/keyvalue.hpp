#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kgrank {

/// Line-oriented `key = value` document. `#` starts a comment line; keys may
/// repeat (e.g. one `marker` line per operating point).
class KeyValueDoc {
public:
    struct Entry {
        std::string key;
        std::string value;
        std::size_t line;
    };

    /// Throws ParseError for non-blank lines without '='.
    static KeyValueDoc parse(std::string_view text);

    bool has(std::string_view key) const;
    /// Last value for the key, if any.
    std::optional<std::string> get(std::string_view key) const;
    std::vector<std::string> get_all(std::string_view key) const;

    std::string get_or(std::string_view key, std::string fallback) const;
    double get_double(std::string_view key, double fallback) const;
    std::uint64_t get_uint(std::string_view key, std::uint64_t fallback) const;

    const std::vector<Entry>& entries() const noexcept { return entries_; }

private:
    const Entry* last(std::string_view key) const;

    std::vector<Entry> entries_;
};

std::string trim(std::string_view s);

} // namespace kgrank
