#include "bcp/rng.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace bcp {

std::vector<std::uint32_t> Rng::sample_without_replacement(std::uint32_t n, std::uint32_t k) {
    if (k > n)
        throw std::invalid_argument("sample_without_replacement: k > n");
    std::vector<std::uint32_t> out;
    out.reserve(k);
    if (k * 3 >= n) {
        // partial Fisher-Yates over the full index range
        std::vector<std::uint32_t> idx(n);
        for (std::uint32_t i = 0; i < n; ++i)
            idx[i] = i;
        for (std::uint32_t i = 0; i < k; ++i) {
            std::uint32_t j = i + static_cast<std::uint32_t>(next_index(n - i));
            std::swap(idx[i], idx[j]);
        }
        out.assign(idx.begin(), idx.begin() + k);
    } else {
        std::unordered_set<std::uint32_t> seen;
        while (out.size() < k) {
            auto v = static_cast<std::uint32_t>(next_index(n));
            if (seen.insert(v).second)
                out.push_back(v);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace bcp
