#pragma once

#include <string>
#include <vector>

#include "slz/integer.hpp"

namespace slz {

using IntVec = std::vector<Int>;

// Exact n x n integer matrix of determinant 1.
// Matrix access is 0-based; generator indices (i, j) elsewhere are 1-based.
class GroupElement {
public:
    GroupElement() = default;
    // Throws std::invalid_argument unless the rows form a square matrix of determinant 1.
    explicit GroupElement(const std::vector<IntVec>& rows);

    static GroupElement identity(int n);
    // e_ij(x), 1-based i != j.
    static GroupElement elementary(int n, int i, int j, const Int& x);
    static GroupElement diagonal_signs(const std::vector<int>& signs);
    // Skips the determinant check; caller guarantees det = 1.
    static GroupElement from_trusted(int n, std::vector<Int> entries);

    int n() const { return n_; }
    const Int& operator()(int r, int c) const { return a_[r * n_ + c]; }
    Int& mut(int r, int c) { return a_[r * n_ + c]; }
    const std::vector<Int>& entries() const { return a_; }

    bool is_identity() const;

    // In-place right multiplication by e_ij(x): column j += x * column i.
    void right_mul_elementary(int i, int j, const Int& x);
    // In-place right multiplication by diag(signs).
    void right_mul_diag(const std::vector<int>& signs);

    std::string str() const;
    size_t hash() const;

    friend bool operator==(const GroupElement& a, const GroupElement& b) {
        return a.n_ == b.n_ && a.a_ == b.a_;
    }

private:
    int n_ = 0;
    std::vector<Int> a_;
};

GroupElement multiply(const GroupElement& a, const GroupElement& b);
GroupElement invert(const GroupElement& a);
Int norm2sq(const GroupElement& a);
Int norm_inf(const GroupElement& a);
// Exact determinant (fraction-free elimination).
Int determinant(int n, const std::vector<Int>& entries);

struct GroupElementHash {
    size_t operator()(const GroupElement& g) const { return g.hash(); }
};

// Integer span of row vectors in Hermite normal form.
struct Sublattice {
    int n = 0;
    std::vector<IntVec> basis;
    int rank() const { return static_cast<int>(basis.size()); }
    friend bool operator==(const Sublattice& a, const Sublattice& b) {
        return a.n == b.n && a.basis == b.basis;
    }
};

// Canonical basis: echelon rows, positive pivots, entries above each pivot in [0, pivot).
// For empty input the ambient dimension must be given explicitly.
Sublattice hermite_span(const std::vector<IntVec>& vectors, int n = -1);

namespace detail {
// Hermite reduction of rows using pivots among the first pivot_cols columns only;
// row operations are applied to full rows. Zero rows (in the pivot columns) are kept last.
// Returns the number of pivot rows.
int hermite_rows(std::vector<IntVec>& rows, int pivot_cols);
}  // namespace detail

}  // namespace slz
