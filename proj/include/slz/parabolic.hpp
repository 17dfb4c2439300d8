#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "slz/group_element.hpp"

namespace slz {

// Standard parabolic U(d_1,...,d_r): block upper triangular matrices.
// Encoded by a bitmask of block boundaries: bit i (1 <= i < n) set iff a block ends after index i.
class ParabolicShape {
public:
    ParabolicShape() = default;
    ParabolicShape(int n, uint32_t boundaries);
    static ParabolicShape from_composition(const std::vector<int>& dims);
    static ParabolicShape whole(int n) { return ParabolicShape(n, 0); }
    static ParabolicShape borel(int n);

    int n() const { return n_; }
    uint32_t boundaries() const { return mask_; }
    std::vector<int> composition() const;
    int num_blocks() const { return __builtin_popcount(mask_) + 1; }
    // 0-based block number of a 1-based index.
    int block_of(int i) const { return block_[i - 1]; }

    bool in_N(int i, int j) const { return block_of(i) < block_of(j); }
    bool in_M(int i, int j) const { return i != j && block_of(i) == block_of(j); }
    // Index pairs, 1-based, row-major.
    std::vector<std::pair<int, int>> chi_N() const;
    std::vector<std::pair<int, int>> chi_M() const;
    std::vector<std::pair<int, int>> chi_N_block(int q) const;

    bool contains(const GroupElement& g) const;
    bool contains_N(const GroupElement& g) const;
    bool contains_M(const GroupElement& g) const;
    // Intersection of standard parabolics: union of boundaries.
    ParabolicShape intersect(const ParabolicShape& o) const { return ParabolicShape(n_, mask_ | o.mask_); }
    // Finest standard parabolic containing g.
    static ParabolicShape finest_containing(const GroupElement& g);

    std::string str() const;
    friend bool operator==(const ParabolicShape& a, const ParabolicShape& b) {
        return a.n_ == b.n_ && a.mask_ == b.mask_;
    }

private:
    int n_ = 0;
    uint32_t mask_ = 0;
    std::vector<int> block_;
};

}  // namespace slz
