#include "uvcount/keyvalue.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace uvcount {

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

KeyValueFile KeyValueFile::parse(const std::string& text, const std::string& origin)
{
    KeyValueFile kv;
    kv.origin_ = origin;
    std::istringstream in(text);
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(origin + ":" + std::to_string(lineNo) + ": expected 'key = value'");
        Entry e{trim(line.substr(0, eq)), trim(line.substr(eq + 1)), lineNo};
        if (e.key.empty())
            throw ParseError(origin + ":" + std::to_string(lineNo) + ": empty key");
        kv.entries_.push_back(std::move(e));
    }
    return kv;
}

KeyValueFile KeyValueFile::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path.string());
}

const KeyValueFile::Entry* KeyValueFile::last(const std::string& key) const
{
    for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
        if (it->key == key)
            return &*it;
    return nullptr;
}

bool KeyValueFile::has(const std::string& key) const { return last(key) != nullptr; }

std::optional<std::string> KeyValueFile::get(const std::string& key) const
{
    if (const Entry* e = last(key))
        return e->value;
    return std::nullopt;
}

std::vector<std::string> KeyValueFile::get_all(const std::string& key) const
{
    std::vector<std::string> out;
    for (const auto& e : entries_)
        if (e.key == key)
            out.push_back(e.value);
    return out;
}

int KeyValueFile::get_int(const std::string& key, int fallback) const
{
    const Entry* e = last(key);
    if (!e)
        return fallback;
    return parse_int(e->value, origin_ + ":" + std::to_string(e->line) + ": " + key);
}

double KeyValueFile::get_double(const std::string& key, double fallback) const
{
    const Entry* e = last(key);
    if (!e)
        return fallback;
    return parse_double(e->value, origin_ + ":" + std::to_string(e->line) + ": " + key);
}

std::string KeyValueFile::get_string(const std::string& key, const std::string& fallback) const
{
    const Entry* e = last(key);
    return e ? e->value : fallback;
}

void KeyValueFile::set(const std::string& key, const std::string& value)
{
    bool replaced = false;
    for (auto it = entries_.begin(); it != entries_.end();) {
        if (it->key == key) {
            if (replaced) {
                it = entries_.erase(it);
                continue;
            }
            it->value = value;
            replaced = true;
        }
        ++it;
    }
    if (!replaced)
        add(key, value);
}

void KeyValueFile::add(const std::string& key, const std::string& value)
{
    entries_.push_back({key, value, 0});
}

std::string KeyValueFile::to_string() const
{
    std::string out;
    for (const auto& e : entries_)
        out += e.key + " = " + e.value + "\n";
    return out;
}

int parse_int(const std::string& text, const std::string& what)
{
    const std::string t = trim(text);
    int value = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
        throw ParseError(what + ": not an integer: '" + text + "'");
    return value;
}

double parse_double(const std::string& text, const std::string& what)
{
    const std::string t = trim(text);
    double value = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
        throw ParseError(what + ": not a number: '" + text + "'");
    return value;
}

std::vector<double> parse_numbers(const std::string& text, const std::string& what)
{
    std::istringstream in(text);
    std::vector<double> out;
    std::string tok;
    while (in >> tok)
        out.push_back(parse_double(tok, what));
    return out;
}

std::pair<int, int> parse_dims(const std::string& text, const std::string& what)
{
    const std::string t = trim(text);
    const auto x = t.find_first_of("xX");
    if (x == std::string::npos) {
        const int n = parse_int(t, what);
        return {n, n};
    }
    return {parse_int(t.substr(0, x), what), parse_int(t.substr(x + 1), what)};
}

std::string format_double(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out)
            throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace uvcount
