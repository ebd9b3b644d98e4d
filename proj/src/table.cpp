#include "bcp/table.hpp"

#include "bcp/util.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace bcp {

CsvTable CsvTable::read(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw std::runtime_error("cannot open: " + path);
    CsvTable t;
    std::string line;
    if (!std::getline(f, line))
        throw std::runtime_error("empty csv: " + path);
    t.header = csv_parse_line(line);
    while (std::getline(f, line)) {
        if (line.empty())
            continue;
        auto fields = csv_parse_line(line);
        if (fields.size() != t.header.size())
            throw std::runtime_error(path + ": row with " + std::to_string(fields.size()) +
                                     " fields, expected " + std::to_string(t.header.size()));
        t.rows.push_back(std::move(fields));
    }
    return t;
}

std::optional<size_t> CsvTable::column(const std::string& name) const {
    for (size_t i = 0; i < header.size(); ++i)
        if (header[i] == name)
            return i;
    return std::nullopt;
}

std::vector<double> CsvTable::numeric(const std::string& name) const {
    auto c = column(name);
    if (!c)
        throw std::runtime_error("csv column not found: " + name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        const std::string& s = r[*c];
        if (s.empty()) {
            out.push_back(std::numeric_limits<double>::quiet_NaN());
            continue;
        }
        double v = 0;
        auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc() || res.ptr != s.data() + s.size())
            out.push_back(std::numeric_limits<double>::quiet_NaN());
        else
            out.push_back(v);
    }
    return out;
}

std::vector<std::string> CsvTable::strings(const std::string& name) const {
    auto c = column(name);
    if (!c)
        throw std::runtime_error("csv column not found: " + name);
    std::vector<std::string> out;
    out.reserve(rows.size());
    for (const auto& r : rows)
        out.push_back(r[*c]);
    return out;
}

} // namespace bcp
