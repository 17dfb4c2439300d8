#include <stdexcept>
#include <utility>

#include "slz/group_element.hpp"

namespace slz {

namespace detail {

int hermite_rows(std::vector<IntVec>& rows, int pivot_cols) {
    const int m = static_cast<int>(rows.size());
    int r = 0;
    for (int c = 0; c < pivot_cols && r < m; ++c) {
        // Euclid on column c over rows r..m-1 until only row r is nonzero.
        for (int k = r + 1; k < m; ++k) {
            if (rows[k][c].is_zero()) continue;
            if (rows[r][c].is_zero()) {
                std::swap(rows[r], rows[k]);
                continue;
            }
            Int g, s, t;
            Int::ext_gcd(rows[r][c], rows[k][c], g, s, t);
            Int a = Int::divexact(rows[r][c], g);
            Int b = Int::divexact(rows[k][c], g);
            // [s t; -b a] has determinant 1.
            for (size_t col = 0; col < rows[r].size(); ++col) {
                Int x = rows[r][col];
                Int y = rows[k][col];
                rows[r][col] = s * x + t * y;
                rows[k][col] = a * y - b * x;
            }
        }
        if (rows[r][c].is_zero()) continue;
        if (rows[r][c].sign() < 0)
            for (auto& v : rows[r]) v = -v;
        for (int k = 0; k < r; ++k) {
            if (rows[k][c].is_zero()) continue;
            Int q = Int::floor_div(rows[k][c], rows[r][c]);
            if (q.is_zero()) continue;
            for (size_t col = 0; col < rows[k].size(); ++col) rows[k][col] -= q * rows[r][col];
        }
        ++r;
    }
    return r;
}

}  // namespace detail

Sublattice hermite_span(const std::vector<IntVec>& vectors, int n) {
    Sublattice out;
    if (vectors.empty()) {
        out.n = n < 0 ? 0 : n;
        return out;
    }
    out.n = static_cast<int>(vectors[0].size());
    for (const auto& v : vectors)
        if (static_cast<int>(v.size()) != out.n)
            throw std::invalid_argument("hermite_span: vectors of unequal length");
    std::vector<IntVec> rows = vectors;
    int r = detail::hermite_rows(rows, out.n);
    rows.resize(r);
    out.basis = std::move(rows);
    return out;
}

}  // namespace slz
