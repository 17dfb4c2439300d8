#pragma once

#include <array>
#include <vector>

#include "slz/parabolic.hpp"
#include "slz/presentation.hpp"
#include "slz/word.hpp"

namespace slz {

// Logarithmic words for e_ij(x). A hyperbolic seed A in SL(2,Z) acts on the rows (i, d)
// of the column vector v = (x_ij, x_dj); conjugation by A^k maps u(v) to u(A^k v), where
// u(v) = e_ij(v1) e_dj(v2). The target (x, 0) is expanded in the A-orbit numeration
// with bounded digits and emitted as a telescoped product.
class ShortcutScheme {
public:
    ShortcutScheme();
    // Throws unless det A = 1 and trace A > 2.
    explicit ShortcutScheme(const std::array<Int, 4>& seed, double c_short = 48.0);

    static const ShortcutScheme& default_scheme();

    const std::array<Int, 4>& seed() const { return a_; }
    double c_short() const { return c_short_; }
    int digit_bound() const { return digit_bound_; }
    // |x| at or below this is emitted as a plain power of e_ij.
    int small_threshold() const { return 16; }

    // Smallest index not in {i, j}.
    static int aux_index(int i, int j);

    Word shortcut_word(int i, int j, const Int& x) const;
    // Length bound c_short * (1 + log2(|x| + 1)).
    double length_bound(const Int& x) const;
    Word expand(const Word& w) const;

private:
    Word expand_positive(int i, int j, const Int& x) const;
    std::array<Int, 4> a_;
    double c_short_ = 48.0;
    int digit_bound_ = 3;
    // Seed and inverse as words over the local pair {1, 2}: (a, sign) with a = 0 for e_12, 1 for e_21.
    std::vector<std::pair<int, int>> seed_word_, seed_inv_word_;
    long double lambda_ = 0;
    // Left eigenvectors (1, ls) for mu and (1, lt) for lambda; right eigenvector (rq, rl) for lambda.
    long double ls_ = 0, lt_ = 0;
};

Word shortcut_word(int i, int j, const Int& x);
Word expand(const Word& w);

// Shortcut letters of u in block order kappa_s ... kappa_1, row-major inside each block.
// Throws std::invalid_argument unless u lies in N_P(Z).
Word nu_P(const GroupElement& u, const ParabolicShape& P);

// Macro move constructors; throw std::invalid_argument on violated index constraints.
MacroMove macro_add(int i, int j, const Int& x, const Int& y);
MacroMove macro_mul(int i, int j, int k, const Int& x, const Int& y,
                    MacroMove::MulForm form = MacroMove::MulForm::Comm);
MacroMove macro_commute(int i, int j, int k, int l, const Int& x, const Int& y);
MacroMove macro_swap(int i, int j, int k, int l, const Int& x);
MacroMove macro_diag(const std::vector<int>& b, int i, int j, const Int& x);
MacroMove macro_unipotent(int i, int j, const Int& k);
MacroMove macro_rebase(const Word& gamma, int i, int j, const Int& x);

}  // namespace slz
