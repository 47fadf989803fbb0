#pragma once

// Plain `key = value` text files. '#' starts a comment; keys may repeat.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace uvcount {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class KeyValueFile {
public:
    struct Entry {
        std::string key;
        std::string value;
        int line = 0;
    };

    static KeyValueFile parse(const std::string& text, const std::string& origin = "<string>");
    static KeyValueFile load(const std::filesystem::path& path);

    bool has(const std::string& key) const;
    /// Last value for `key`, if any.
    std::optional<std::string> get(const std::string& key) const;
    std::vector<std::string> get_all(const std::string& key) const;

    int get_int(const std::string& key, int fallback) const;
    double get_double(const std::string& key, double fallback) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;

    void set(const std::string& key, const std::string& value);
    void add(const std::string& key, const std::string& value);

    const std::vector<Entry>& entries() const noexcept { return entries_; }
    const std::string& origin() const noexcept { return origin_; }

    std::string to_string() const;

private:
    const Entry* last(const std::string& key) const;

    std::string origin_;
    std::vector<Entry> entries_;
};

/// Parses a whole string as an integer / double, throwing ParseError with `what` on failure.
int parse_int(const std::string& text, const std::string& what);
double parse_double(const std::string& text, const std::string& what);
std::vector<double> parse_numbers(const std::string& text, const std::string& what);

std::string trim(const std::string& s);

/// "720" or "720x720".
std::pair<int, int> parse_dims(const std::string& text, const std::string& what);

/// Shortest text that reads back to the same double.
std::string format_double(double v);

/// Writes `content` to a sibling temp file, then renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace uvcount
