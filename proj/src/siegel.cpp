#include "slz/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "slz/simd.hpp"

namespace slz {

namespace {

using IMat = std::vector<int64_t>;  // row-major n x n

int64_t checked_axpy(int64_t y, int64_t q, int64_t x) {
    int64_t p, s;
    if (__builtin_mul_overflow(q, x, &p) || __builtin_sub_overflow(y, p, &s))
        throw ReductionError("siegel_reduce: integral transform overflowed 64 bits");
    return s;
}

// LLL state over rows c_0..c_{n-1} with the integral transform T (c = T * rows) and its inverse.
struct Lll {
    int n;
    std::vector<double> c;      // n x n rows
    std::vector<double> mu;     // n x n
    std::vector<double> bstar;  // n x n Gram-Schmidt vectors
    std::vector<double> norm2;  // |c_k*|^2
    IMat T, Tinv;
    bool changed = false;

    void gram_schmidt(int from) {
        for (int k = from; k < n; ++k) {
            double* bk = &bstar[k * n];
            std::copy(&c[k * n], &c[k * n] + n, bk);
            for (int j = 0; j < k; ++j) {
                double m = norm2[j] > 0 ? simd::dot(&c[k * n], &bstar[j * n], n) / norm2[j] : 0.0;
                mu[k * n + j] = m;
                simd::axpy(-m, &bstar[j * n], bk, n);
            }
            norm2[k] = simd::dot(bk, bk, n);
        }
    }

    // c_k -= q c_j, with matching integral updates.
    void sub(int k, int j, int64_t q) {
        simd::axpy(-static_cast<double>(q), &c[j * n], &c[k * n], n);
        for (int t = 0; t < n; ++t) T[k * n + t] = checked_axpy(T[k * n + t], q, T[j * n + t]);
        // inverse: column j += q * column k
        for (int t = 0; t < n; ++t) Tinv[t * n + j] = checked_axpy(Tinv[t * n + j], -q, Tinv[t * n + k]);
        for (int t = 0; t < j; ++t) mu[k * n + t] -= static_cast<double>(q) * mu[j * n + t];
        mu[k * n + j] -= static_cast<double>(q);
        changed = true;
    }

    void swap_rows(int k) {
        for (int t = 0; t < n; ++t) {
            std::swap(c[k * n + t], c[(k - 1) * n + t]);
            std::swap(T[k * n + t], T[(k - 1) * n + t]);
            std::swap(Tinv[t * n + k], Tinv[t * n + k - 1]);
        }
        changed = true;
    }

    void size_reduce(int k) {
        for (int j = k - 1; j >= 0; --j) {
            double m = mu[k * n + j];
            // Slack keeps floating ties from flipping between refinement rounds.
            if (std::fabs(m) > 0.5 + 1e-9) {
                double r = std::nearbyint(m);
                if (!std::isfinite(r) || std::fabs(r) > 9e15) throw ReductionError("siegel_reduce: coefficient blow-up");
                sub(k, j, static_cast<int64_t>(r));
            }
        }
    }

    void run() {
        gram_schmidt(0);
        int k = 1, guard = 0;
        while (k < n) {
            if (++guard > 100000) throw ReductionError("siegel_reduce: LLL did not terminate");
            size_reduce(k);
            gram_schmidt(k);
            double m = mu[k * n + k - 1];
            if (norm2[k] >= (kLovaszDelta - m * m) * norm2[k - 1] * (1 - 1e-12)) {
                ++k;
            } else {
                swap_rows(k);
                gram_schmidt(k - 1);
                k = std::max(k - 1, 1);
            }
        }
    }
};

IMat imul(const IMat& a, const IMat& b, int n) {
    IMat c(n * n, 0);
    for (int i = 0; i < n; ++i)
        for (int t = 0; t < n; ++t) {
            int64_t x = a[i * n + t];
            if (!x) continue;
            for (int j = 0; j < n; ++j) {
                int64_t p, s;
                if (__builtin_mul_overflow(x, b[t * n + j], &p) || __builtin_add_overflow(c[i * n + j], p, &s))
                    throw ReductionError("siegel_reduce: integral transform overflowed 64 bits");
                c[i * n + j] = s;
            }
        }
    return c;
}

IMat ident(int n) {
    IMat m(n * n, 0);
    for (int i = 0; i < n; ++i) m[i * n + i] = 1;
    return m;
}

GroupElement to_group(const IMat& m, int n) {
    std::vector<Int> e(m.begin(), m.end());
    return GroupElement::from_trusted(n, std::move(e));
}

double condition_estimate(const Mat& F) {
    Eigen::JacobiSVD<Mat> svd(F);
    const auto& s = svd.singularValues();
    return s(0) / s(s.size() - 1);
}

}  // namespace

double siegel_epsilon() { return std::sqrt(kLovaszDelta - 0.25); }

SiegelDecomposition siegel_reduce(const SPDPoint& x) { return siegel_reduce_factor(x.F); }

SiegelDecomposition siegel_reduce_factor(const Mat& F0) {
    const int n = static_cast<int>(F0.rows());
    if (n < 1 || F0.cols() != n) throw std::invalid_argument("siegel_reduce: square factor expected");
    double det = F0.determinant();
    if (!std::isfinite(det) || det == 0) throw ReductionError("siegel_reduce: singular input");
    const Mat F = F0 * std::pow(std::fabs(det), -1.0 / n);
    // Work on the reversed row order so that the Lovasz condition on c gives a_i >= eps a_{i+1}.
    IMat U = ident(n), Uinv = ident(n);  // U acts on rows of F (in natural order)
    int rounds = 0;
    while (true) {
        if (++rounds > 12) {
            std::ostringstream os;
            os << "siegel_reduce: refinement did not stabilize (condition ~" << condition_estimate(F) << ")";
            throw ReductionError(os.str());
        }
        Lll l;
        l.n = n;
        l.c.assign(n * n, 0);
        l.mu.assign(n * n, 0);
        l.bstar.assign(n * n, 0);
        l.norm2.assign(n, 0);
        l.T = ident(n);
        l.Tinv = ident(n);
        // current basis rows B = U F; c_k = B_{n-1-k}
        for (int k = 0; k < n; ++k) {
            int r = n - 1 - k;
            for (int t = 0; t < n; ++t) {
                double s = 0;
                for (int q = 0; q < n; ++q) s += static_cast<double>(U[r * n + q]) * F(q, t);
                l.c[k * n + t] = s;
            }
        }
        for (double v : l.c)
            if (!std::isfinite(v)) throw ReductionError("siegel_reduce: non-finite basis");
        l.run();
        if (!l.changed) break;
        // Translate T (on reversed order) into natural order: R T R with R the reversal.
        IMat Tn(n * n), Tin(n * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Tn[i * n + j] = l.T[(n - 1 - i) * n + (n - 1 - j)];
                Tin[i * n + j] = l.Tinv[(n - 1 - i) * n + (n - 1 - j)];
            }
        U = imul(Tn, U, n);
        Uinv = imul(Uinv, Tin, n);
    }
    // det U = +-1; flip the last row if needed. Row sign flips keep the basis reduced.
    {
        std::vector<Int> e(U.begin(), U.end());
        Int d = determinant(n, e);
        if (d.sign() < 0) {
            for (int t = 0; t < n; ++t) {
                U[(n - 1) * n + t] = -U[(n - 1) * n + t];
                Uinv[t * n + n - 1] = -Uinv[t * n + n - 1];
            }
        }
    }
    // Among gamma * eps over even sign patterns eps, take the lexicographically largest gamma.
    uint32_t best = 0;
    for (uint32_t mask = 1; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) % 2) continue;
        int cmp = 0;
        for (int i = 0; i < n * n && cmp == 0; ++i) {
            int c = i % n;
            int64_t a = Uinv[i] * ((mask >> c) & 1 ? -1 : 1);
            int64_t b = Uinv[i] * ((best >> c) & 1 ? -1 : 1);
            if (a != b) cmp = a > b ? 1 : -1;
        }
        if (cmp > 0) best = mask;
    }
    for (int c = 0; c < n; ++c)
        if ((best >> c) & 1)
            for (int t = 0; t < n; ++t) {
                Uinv[t * n + c] = -Uinv[t * n + c];
                U[c * n + t] = -U[c * n + t];
            }

    // Reverse Gram-Schmidt of B = U F: b_i = a_i q_i + sum_{j>i} n_ij a_j q_j.
    Mat B(n, n);
    for (int i = 0; i < n; ++i)
        for (int t = 0; t < n; ++t) {
            double s = 0;
            for (int q = 0; q < n; ++q) s += static_cast<double>(U[i * n + q]) * F(q, t);
            B(i, t) = s;
        }
    SiegelDecomposition out;
    out.nPart = Mat::Identity(n, n);
    out.aPart = Eigen::VectorXd::Zero(n);
    Mat Q = Mat::Zero(n, n);  // rows: orthonormal q_i
    for (int i = n - 1; i >= 0; --i) {
        Eigen::VectorXd v = B.row(i).transpose();
        for (int j = i + 1; j < n; ++j) {
            double c = B.row(i).dot(Q.row(j));
            out.nPart(i, j) = c / out.aPart(j);
            v -= c * Q.row(j).transpose();
        }
        out.aPart(i) = v.norm();
        if (!(out.aPart(i) > 0)) throw ReductionError("siegel_reduce: degenerate Gram-Schmidt norm");
        Q.row(i) = v.transpose() / out.aPart(i);
    }
    double logprod = 0;
    for (int i = 0; i < n; ++i) logprod += std::log(out.aPart(i));
    out.aPart *= std::exp(-logprod / n);
    out.gamma = to_group(Uinv, n);
    out.gamma_inv = to_group(U, n);
    out.rounds = rounds;
    return out;
}

Eigen::VectorXd phi(const SPDPoint& x) { return siegel_reduce(x).aPart; }

ParabolicShape classify_parabolic(const Eigen::VectorXd& a, double t) {
    const int n = static_cast<int>(a.size());
    uint32_t mask = 0;
    for (int i = 1; i < n; ++i)
        if (a(i - 1) > t * a(i)) mask |= 1u << i;
    return ParabolicShape(n, mask);
}

Sublattice short_vector_span(const SPDPoint& x, double r, size_t budget) {
    const int n = x.n;
    if (!(r > 0)) throw std::invalid_argument("short_vector_span: r must be positive");
    SiegelDecomposition d = siegel_reduce(x);
    const Mat& N = d.nPart;
    const Eigen::VectorXd& a = d.aPart;
    const double R2 = r * r * (1 + 1e-9);
    std::vector<IntVec> found;
    std::vector<int64_t> u(n, 0);
    size_t nodes = 0;
    // |u N A|^2 = sum_i a_i^2 (u_i + sum_{k<i} u_k N_ki)^2, enumerated coordinate by coordinate.
    std::function<void(int, double)> rec = [&](int i, double used) {
        if (++nodes > budget) throw ReductionError("short_vector_span: enumeration budget exceeded");
        if (i == n) {
            bool zero = std::all_of(u.begin(), u.end(), [](int64_t v) { return v == 0; });
            if (zero) return;
            IntVec v(n, Int(0));
            for (int k = 0; k < n; ++k)
                if (u[k])
                    for (int t = 0; t < n; ++t) v[t] += Int(u[k]) * d.gamma_inv(k, t);
            found.push_back(std::move(v));
            return;
        }
        double c = 0;
        for (int k = 0; k < i; ++k) c += static_cast<double>(u[k]) * N(k, i);
        double rem = R2 - used;
        if (rem < 0) return;
        double w = std::sqrt(rem) / a(i);
        double lo = std::ceil(-c - w), hi = std::floor(-c + w);
        if (hi - lo > 1e7) throw ReductionError("short_vector_span: enumeration budget exceeded");
        for (double z = lo; z <= hi; z += 1) {
            u[i] = static_cast<int64_t>(z);
            double e = a(i) * (z + c);
            rec(i + 1, used + e * e);
        }
        u[i] = 0;
    };
    rec(0, 0.0);
    return hermite_span(found, n);
}

std::pair<GroupElement, GroupElement> parabolic_decompose(const GroupElement& g, const ParabolicShape& P) {
    if (g.n() != P.n()) throw std::invalid_argument("parabolic_decompose: dimension mismatch");
    if (!P.contains(g)) throw std::invalid_argument("parabolic_decompose: element is not in " + P.str());
    const int n = g.n();
    std::vector<Int> e(n * n, Int(0));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (P.block_of(r + 1) == P.block_of(c + 1)) e[r * n + c] = g(r, c);
    GroupElement m = GroupElement::from_trusted(n, std::move(e));
    GroupElement u = multiply(g, invert(m));
    return {u, m};
}

}  // namespace slz
