#pragma once

#include <optional>
#include <string>
#include <vector>

namespace bcp {

// Generic CSV access for the pipeline's data files; empty cells become NaN
// on numeric reads.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    static CsvTable read(const std::string& path);

    std::optional<size_t> column(const std::string& name) const;
    std::vector<double> numeric(const std::string& name) const;     // throws if missing
    std::vector<std::string> strings(const std::string& name) const;

    size_t size() const { return rows.size(); }
};

} // namespace bcp
