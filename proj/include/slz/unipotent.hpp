#pragma once

#include <vector>

#include "slz/parabolic.hpp"
#include "slz/presentation.hpp"

namespace slz {

// A working word plus the steps applied to it. Positions in recorded steps are relative
// to the working word, so a fragment can be embedded in a larger word by shifting them.
class Rewriter {
public:
    Rewriter(int n, Word w, CostModel cm = {}) : n_(n), w_(std::move(w)), cm_(cm) {}

    int n() const { return n_; }
    const Word& word() const { return w_; }
    const std::vector<Step>& steps() const { return steps_; }
    const CostModel& cost_model() const { return cm_; }
    uint64_t cost() const { return cost_; }

    void apply(Step s);
    // Appends another fragment's steps, shifted by offset.
    void splice(const std::vector<Step>& steps, size_t offset);
    Certificate certificate(const Word& initial) const;

private:
    int n_;
    Word w_;
    CostModel cm_;
    std::vector<Step> steps_;
    uint64_t cost_ = 0;
};

// Order of shortcut letters in nu_P: later blocks first, then row-major.
struct NuKey {
    int block, row, col;
    friend auto operator<=>(const NuKey&, const NuKey&) = default;
};
NuKey nu_key(const ParabolicShape& P, int i, int j);

// Maintains w[lo, hi) as a nu_P normal form (strictly increasing keys, nonzero coefficients).
class NuNormalizer {
public:
    NuNormalizer(Rewriter& rw, const ParabolicShape& P, size_t lo) : rw_(rw), P_(P), lo_(lo), hi_(lo) {}
    size_t lo() const { return lo_; }
    size_t hi() const { return hi_; }
    // Merges the shortcut at position hi into the normal form; hi moves accordingly.
    void absorb_next();
    // Shifts the tracked range after an edit to its left.
    void shift(long delta) { lo_ += delta; hi_ += delta; }
    void set_range(size_t lo, size_t hi) { lo_ = lo; hi_ = hi; }

private:
    // Moves the letter at p right through [p+1, hi) to its place; returns nothing, hi may shrink.
    void bubble_right(size_t p);
    Rewriter& rw_;
    ParabolicShape P_;
    size_t lo_, hi_;
};

// Rewrites every plain maximal run e_ij^k over chi(N_P) into S_ij(k) (|k| <= L0 per run piece).
void shortcut_plain_runs(Rewriter& rw, const ParabolicShape& P, size_t lo, size_t& hi);

// Certificate reducing a null word of shortcuts over chi(N_P) to the empty word by macro moves.
// Throws std::invalid_argument on letters outside chi(N_P) or a non-null input.
Certificate fill_unipotent(const Word& w, const ParabolicShape& P, const CostModel& cm = {});

}  // namespace slz
