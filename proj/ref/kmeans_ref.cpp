#include "reference.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace bcp {
namespace ref {

double hamming_dense(const std::vector<double>& row, const std::vector<double>& center) {
    if (row.size() != center.size())
        throw std::invalid_argument("hamming_dense: dimension mismatch");
    double acc = 0.0;
    for (size_t j = 0; j < row.size(); ++j)
        acc += std::abs(row[j] - center[j]);
    return acc / static_cast<double>(row.size());
}

DenseAssignment assign_dense(const BinaryRows& rows,
                             const std::vector<std::vector<double>>& centers) {
    DenseAssignment a;
    a.labels.resize(rows.count());
    a.dists.resize(rows.count());
    std::vector<double> dense(rows.dim);
    for (std::uint32_t i = 0; i < rows.count(); ++i) {
        std::fill(dense.begin(), dense.end(), 0.0);
        for (auto j : rows.support[i])
            dense[j] = 1.0;
        double best = std::numeric_limits<double>::infinity();
        int best_c = 0;
        for (size_t c = 0; c < centers.size(); ++c) {
            double d = hamming_dense(dense, centers[c]);
            if (d < best) {
                best = d;
                best_c = static_cast<int>(c);
            }
        }
        a.labels[i] = best_c;
        a.dists[i] = best;
        a.cost += best;
    }
    return a;
}

} // namespace ref
} // namespace bcp
