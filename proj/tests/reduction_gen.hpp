#pragma once

#include <cmath>
#include <random>

#include "slz/reduction.hpp"
#include "slz/word.hpp"
#include "test_util.hpp"

namespace slz::testing {

struct SiegelSample {
    GroupElement gamma;
    Mat n;
    Eigen::VectorXd a;
    Mat factor;  // gamma * n * diag(a)
};

// a given by consecutive log-ratios; normalized to product 1.
inline Eigen::VectorXd a_from_log_gaps(const std::vector<double>& gaps) {
    const int n = static_cast<int>(gaps.size()) + 1;
    Eigen::VectorXd la(n);
    la(0) = 0;
    for (int i = 1; i < n; ++i) la(i) = la(i - 1) - gaps[i - 1];
    la.array() -= la.mean();
    return la.array().exp();
}

inline SiegelSample forward_sample(int n, const std::vector<double>& log_gaps, int gamma_len, std::mt19937_64& rng,
                                   double n_range = 0.45) {
    std::uniform_real_distribution<double> u(-n_range, n_range);
    SiegelSample s;
    s.gamma = evaluate(random_plain_word(n, gamma_len, rng), n);
    s.n = Mat::Identity(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) s.n(i, j) = u(rng);
    s.a = a_from_log_gaps(log_gaps);
    Mat g(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) g(r, c) = s.gamma(r, c).to_double();
    s.factor = g * s.n * s.a.asDiagonal();
    return s;
}

inline double reconstruction_error(const SPDPoint& x, const SiegelDecomposition& d) {
    const int n = x.n;
    Mat g(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) g(r, c) = d.gamma(r, c).to_double();
    return dist(x, SPDPoint::from_factor(g * d.nPart * d.aPart.asDiagonal()));
}

// Largest violation of the Siegel set conditions (0 when inside).
inline double siegel_violation(const SiegelDecomposition& d) {
    const int n = static_cast<int>(d.aPart.size());
    double v = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) v = std::max(v, std::abs(d.nPart(i, j)) - 0.5);
    for (int i = 0; i + 1 < n; ++i) v = std::max(v, siegel_epsilon() - d.aPart(i) / d.aPart(i + 1));
    return v;
}

// Brute-force span of integer v with v P v^T <= r^2, enumerating u = v gamma over a box.
inline Sublattice brute_short_span(const SiegelSample& s, double r) {
    const int n = s.gamma.n();
    Mat na = s.n * s.a.asDiagonal();
    Mat inv = na.inverse();
    std::vector<long> bound(n);
    for (int i = 0; i < n; ++i) bound[i] = static_cast<long>(std::floor(r * inv.col(i).norm() + 1e-9));
    GroupElement gi = invert(s.gamma);
    std::vector<IntVec> found;
    std::vector<long> u(n);
    for (int i = 0; i < n; ++i) u[i] = -bound[i];
    for (;;) {
        Eigen::RowVectorXd ur(n);
        for (int i = 0; i < n; ++i) ur(i) = static_cast<double>(u[i]);
        double q = (ur * na).squaredNorm();
        if (q <= r * r && ur.norm() > 0) {
            IntVec v(n, Int(0));
            for (int k = 0; k < n; ++k)
                for (int t = 0; t < n; ++t) v[t] += Int(u[k]) * gi(k, t);
            found.push_back(std::move(v));
        }
        int i = 0;
        while (i < n && u[i] == bound[i]) u[i] = -bound[i], ++i;
        if (i == n) break;
        ++u[i];
    }
    return hermite_span(found, n);
}

}  // namespace slz::testing
