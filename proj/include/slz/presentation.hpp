#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "slz/word.hpp"

namespace slz {

struct Relator {
    enum class Kind : uint8_t { Commute, Multiply, Torsion, DiagExpr };
    Kind kind = Kind::Commute;
    int i = 0, j = 0, k = 0, l = 0;
    std::vector<int> signs;  // DiagExpr

    // Cyclic word of the relator for dimension n; evaluates to I.
    Word word(int n) const;
    // Empty string when the parameters are admissible for dimension n.
    std::string check(int n) const;
    std::string str() const;
    static Relator parse(const std::string& s);
};

// s_ij = e_ji^-1 e_ij e_ji^-1
Word s_word(int i, int j);
std::vector<Relator> relators(int n);

struct MacroMove {
    enum class Schema : uint8_t { Add, Mul, Commute, SwapConj, DiagConj, UnipotentRewrite, ConjRebase };
    // Mul forms: Comm [S_ij(x),S_jk(y)] -> S_ik(xy); Pass S_ij(x)S_jk(y) -> S_jk(y)S_ik(xy)S_ij(x);
    // PassBack S_jk(y)S_ij(x) -> S_ij(x)S_jk(y)S_ik(-xy).
    enum class MulForm : uint8_t { Comm, Pass, PassBack };
    Schema schema = Schema::Add;
    int i = 0, j = 0, k = 0, l = 0;
    Int x, y;
    MulForm form = MulForm::Comm;
    std::vector<int> signs;  // DiagConj
    Word gamma;              // ConjRebase conjugator, plain
    bool reverse = false;    // rewrite rhs -> lhs

    Word lhs(int n) const;
    Word rhs(int n) const;
    // Empty when the parameters satisfy the schema constraints.
    std::string check(int n) const;
};

// Product of shortcuts for the nonzero off-diagonal entries of u in row-major order.
// Equals u when u - I has disjoint row and column supports.
Word rowmajor_shortcuts(const GroupElement& u);

struct Step {
    enum class Kind : uint8_t { FreeInsert, FreeDelete, ApplyRelator, AtomicFill, Macro };
    Kind kind = Kind::FreeInsert;
    size_t pos = 0;
    size_t len = 0;  // FreeDelete, AtomicFill
    Word word;       // FreeInsert inserts word . word^-1
    Relator relator;
    int rotation = 0;
    bool inverted = false;
    int split = 0;   // ApplyRelator: prefix of the rotated relator that is replaced
    MacroMove macro;

    static Step free_insert(size_t pos, Word u);
    static Step free_delete(size_t pos, size_t len);
    static Step apply_relator(size_t pos, Relator r, int rotation, bool inverted, int split);
    static Step atomic_fill(size_t pos, size_t len);
    static Step macro_move(size_t pos, MacroMove m);
};

struct CostModel {
    double c_mm = 1.0;
    int L0 = 24;
};

uint64_t step_cost(const Step& s, const CostModel& cm);

struct Certificate {
    int n = 0;
    Word initial;
    std::vector<Step> steps;
    CostModel cost_model;
    uint64_t total_cost = 0;
};

struct VerifyResult {
    bool accepted = false;
    uint64_t total_cost = 0;
    uint64_t move_count = 0;
    uint64_t macro_count = 0;
    long failed_step = -1;
    std::string reason;
};

// Replays steps one at a time; usable as a streaming sink.
class Verifier {
public:
    Verifier(int n, Word initial, CostModel cm);
    // False on the first illegal step; subsequent calls keep returning false.
    bool apply(const Step& s);
    VerifyResult finish() const;
    Word current() const { return w_.to_word(); }
    bool ok() const { return ok_; }

private:
    bool fail(const std::string& why);
    int n_;
    GapWord w_;
    CostModel cm_;
    VerifyResult res_;
    bool ok_ = true;
};

VerifyResult verify(const Certificate& c);

// Applies a step to a word without legality checks beyond bounds; used by certificate builders.
void apply_unchecked(Word& w, const Step& s, int n);

}  // namespace slz
