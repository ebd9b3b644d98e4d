#include "bcp/util.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace bcp {

static bool is_leap(int y) {
    return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

static int days_in_month(int y, int m) {
    static const int d[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y))
        return 29;
    return d[m - 1];
}

bool is_valid_date(int y, int m, int d) {
    if (y < 0 || m < 1 || m > 12 || d < 1)
        return false;
    return d <= days_in_month(y, m);
}

std::optional<Date> parse_date(std::string_view s) {
    auto t = trim(s);
    int y = 0, m = 1, d = 1;
    int n = 0;
    if (t.size() == 4)
        n = std::sscanf(t.c_str(), "%4d", &y) == 1 ? 1 : 0;
    else if (t.size() == 7)
        n = std::sscanf(t.c_str(), "%4d-%2d", &y, &m) == 2 ? 2 : 0;
    else if (t.size() == 10)
        n = std::sscanf(t.c_str(), "%4d-%2d-%2d", &y, &m, &d) == 3 ? 3 : 0;
    if (n == 0)
        return std::nullopt;
    // sscanf tolerates embedded junk; re-validate the digits strictly
    for (size_t i = 0; i < t.size(); ++i) {
        if (i == 4 || i == 7) {
            if (t[i] != '-')
                return std::nullopt;
        } else if (!std::isdigit(static_cast<unsigned char>(t[i]))) {
            return std::nullopt;
        }
    }
    if (!is_valid_date(y, m, d))
        return std::nullopt;
    return Date{y, m, d};
}

std::string format_date(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

Date add_years(const Date& d, int years) {
    Date r = d;
    r.year += years;
    if (r.month == 2 && r.day == 29 && !is_leap(r.year))
        r.day = 28;
    return r;
}

std::string fmt_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return std::string(s.substr(b, e - b));
}

std::string normalize_name(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool in_space = true; // leading whitespace dropped
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!in_space)
                out.push_back(' ');
            in_space = true;
        } else {
            out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
            in_space = false;
        }
    }
    while (!out.empty() && out.back() == ' ')
        out.pop_back();
    return out;
}

std::string normalize_doi(std::string_view s) {
    std::string t = trim(s);
    for (char& c : t)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return t;
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    for (size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.emplace_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

std::string csv_escape(std::string_view field) {
    bool needs_quote = field.find_first_of(",\"\n\r") != std::string_view::npos;
    if (!needs_quote)
        return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"')
            out += "\"\"";
        else
            out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::vector<std::string> csv_parse_line(std::string_view line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else {
            if (c == '"' && cur.empty()) {
                quoted = true;
            } else if (c == ',') {
                out.push_back(std::move(cur));
                cur.clear();
            } else if (c == '\r' && i + 1 == line.size()) {
                // trailing CR from CRLF files
            } else {
                cur.push_back(c);
            }
        }
        ++i;
    }
    out.push_back(std::move(cur));
    return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f)
            throw std::runtime_error("cannot open for writing: " + tmp);
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!f)
            throw std::runtime_error("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace bcp
