#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "slz/parabolic.hpp"
#include "slz/symspace.hpp"

namespace slz {

// Numeric breakdown of the reduction (not a mathematical failure).
class ReductionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

constexpr double kLovaszDelta = 0.99;
// Gap threshold used by the filling pipeline and the CLI.
constexpr double kDefaultT0 = 4.0;
// Siegel parameter certified by the Lovasz condition: sqrt(delta - 1/4).
double siegel_epsilon();

// x = [gamma * nPart * diag(aPart)]: gamma integral, nPart upper unitriangular with
// |n_ij| <= 1/2, aPart positive with product 1 and a_i >= eps_S * a_{i+1}.
struct SiegelDecomposition {
    GroupElement gamma;
    GroupElement gamma_inv;
    Mat nPart;
    Eigen::VectorXd aPart;
    int rounds = 0;  // LLL refinement rounds until the integral transform stabilized
};

SiegelDecomposition siegel_reduce(const SPDPoint& x);
// Same, from any factor F of x (x = F F^T up to scale).
SiegelDecomposition siegel_reduce_factor(const Mat& F);
Eigen::VectorXd phi(const SPDPoint& x);

// Boundaries exactly at the indices i with a_i > t * a_{i+1}.
ParabolicShape classify_parabolic(const Eigen::VectorXd& a, double t);

// Hermite span of all integer row vectors v with v P v^T <= r^2.
// Throws ReductionError when more than `budget` search nodes are needed.
Sublattice short_vector_span(const SPDPoint& x, double r, size_t budget = 1000000);

// g = nPart * mPart with mPart the diagonal blocks of g. Throws std::invalid_argument if g is not in P.
std::pair<GroupElement, GroupElement> parabolic_decompose(const GroupElement& g, const ParabolicShape& P);

struct MWordOptions {
    int max_entry = 32;     // norm_inf bound B
    int radius = 6;         // search radius R
    bool fallback = false;  // return a constructive word when the search fails
};

// Word over Sigma intersected with M_P evaluating to m. Without fallback, throws
// std::runtime_error when no word within the radius exists.
Word m_word(const GroupElement& m, const ParabolicShape& P, const MWordOptions& opt = {});
// Counts of m_word calls answered by search and by the constructive fallback.
struct MWordStats {
    uint64_t searched = 0, fallback = 0;
};
MWordStats m_word_stats();

struct EdgeWordOptions {
    int plain_max = 64;      // largest |entry| written as a plain power inside chi(M_P) of a triangle
    bool all_plain = false;  // every unipotent entry as a plain power (short boundary edges)
    MWordOptions m;
};

// w1 w2 with w1 over chi(N_{P cap P'}) in nu order and w2 = m_word of the reductive part.
Word edge_word(const GroupElement& g, const ParabolicShape& P, const ParabolicShape& Pp,
               const EdgeWordOptions& opt = {});

}  // namespace slz
