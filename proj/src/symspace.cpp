#include "slz/symspace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/SVD>

#include "slz/simd.hpp"

namespace slz {

namespace {

Mat matmul(const Mat& a, const Mat& b) {
    // Eigen is column-major; row-major product of the transposes gives the same buffer layout.
    Mat c(a.rows(), b.cols());
    simd::matmul(b.data(), a.data(), c.data(), b.cols(), b.rows(), a.rows());
    return c;
}

}  // namespace

SPDPoint SPDPoint::from_factor(const Mat& F) {
    if (F.rows() != F.cols() || F.rows() == 0) throw std::invalid_argument("SPDPoint: factor must be square");
    const int n = static_cast<int>(F.rows());
    double det = F.determinant();
    if (!std::isfinite(det) || std::fabs(det) < 1e-300) throw std::invalid_argument("SPDPoint: singular factor");
    SPDPoint p;
    p.n = n;
    p.F = F * std::pow(std::fabs(det), -1.0 / n);
    p.P = matmul(p.F, p.F.transpose());
    p.P = 0.5 * (p.P + p.P.transpose()).eval();
    return p;
}

SPDPoint SPDPoint::from_matrix(const Mat& P) {
    Eigen::LLT<Mat> llt(0.5 * (P + P.transpose()));
    if (llt.info() != Eigen::Success) throw std::invalid_argument("SPDPoint: matrix is not positive definite");
    return from_factor(llt.matrixL());
}

Mat to_real(const GroupElement& g) {
    const int n = g.n();
    Mat m(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m(r, c) = g(r, c).to_double();
    return m;
}

SPDPoint point_of(const GroupElement& g) { return SPDPoint::from_factor(to_real(g)); }
SPDPoint point_of(const Mat& g) { return SPDPoint::from_factor(g); }

double dist(const SPDPoint& p, const SPDPoint& q) {
    if (p.n != q.n) throw std::invalid_argument("dist: dimension mismatch");
    Mat x = p.F.partialPivLu().solve(q.F);
    Eigen::JacobiSVD<Mat> svd(x);
    double s = 0;
    for (int i = 0; i < p.n; ++i) {
        double l = 2.0 * std::log(svd.singularValues()(i));
        s += l * l;
    }
    return std::sqrt(s);
}

Mat power_factor(const Mat& F, double s) {
    Eigen::JacobiSVD<Mat> svd(F, Eigen::ComputeFullU);
    Eigen::VectorXd sv = svd.singularValues();
    for (int i = 0; i < sv.size(); ++i) sv(i) = std::pow(sv(i), s);
    return svd.matrixU() * sv.asDiagonal();
}

SPDPoint power(const SPDPoint& p, double s) { return SPDPoint::from_factor(power_factor(p.F, s)); }

SPDPoint geodesic(const SPDPoint& p, const SPDPoint& q, double t) {
    if (p.n != q.n) throw std::invalid_argument("geodesic: dimension mismatch");
    if (t == 0) return p;
    if (t == 1) return q;
    Mat x = p.F.partialPivLu().solve(q.F);
    return SPDPoint::from_factor(matmul(p.F, power_factor(x, t)));
}

Loop::Loop(const Word& w, int n) : n_(n), w_(w) {
    if (!is_plain(w)) throw std::invalid_argument("Loop: word must be plain");
    GroupElement g = GroupElement::identity(n);
    prefix_.push_back(g);
    prefix_real_.push_back(Mat::Identity(n, n));
    cum_.push_back(0.0);
    for (size_t k = 0; k < w.size(); ++k) {
        evaluate_into(g, w, k, k + 1);
        prefix_.push_back(g);
        prefix_real_.push_back(to_real(g));
        double d = 0;
        if (w[k].kind == Letter::Kind::Elem) {
            Mat s = to_real(GroupElement::elementary(n, w[k].i, w[k].j, Int(w[k].sign)));
            d = dist(SPDPoint::from_factor(Mat::Identity(n, n)), SPDPoint::from_factor(s));
        }
        cum_.push_back(cum_.back() + d);
    }
    if (!g.is_identity()) throw std::invalid_argument("Loop: word is not null");
}

size_t Loop::nearest_prefix(double s) const {
    auto it = std::lower_bound(cum_.begin(), cum_.end(), s);
    if (it == cum_.end()) return cum_.size() - 1;
    size_t k = static_cast<size_t>(it - cum_.begin());
    // first index with arc >= s; compare against the last index with arc < s
    if (k > 0 && s - cum_[k - 1] <= cum_[k] - s) {
        size_t j = k - 1;
        while (j > 0 && cum_[j - 1] == cum_[j]) --j;
        return j;
    }
    return k;
}

Mat Loop::factor_at(double s) const {
    if (s <= 0) return prefix_real_.front();
    if (s >= length()) return prefix_real_.back();
    // last k with cum_[k] <= s, then step past zero-length letters to a letter of positive length
    size_t k = static_cast<size_t>(std::upper_bound(cum_.begin(), cum_.end(), s) - cum_.begin()) - 1;
    double d = cum_[k + 1] - cum_[k];
    if (d <= 0) return prefix_real_[k];
    double t = (s - cum_[k]) / d;
    const Letter& a = w_[k];
    Mat step = to_real(GroupElement::elementary(n_, a.i, a.j, Int(a.sign)));
    return matmul(prefix_real_[k], power_factor(step, t));
}

std::vector<SPDPoint> loop_of_word(const Word& w, int n, int samples_per_edge) {
    if (samples_per_edge < 1) throw std::invalid_argument("loop_of_word: samples_per_edge must be positive");
    Loop loop(w, n);
    std::vector<SPDPoint> out;
    for (size_t k = 0; k < w.size(); ++k) {
        double a = loop.arc_at_prefix(k), b = loop.arc_at_prefix(k + 1);
        out.push_back(SPDPoint::from_factor(to_real(loop.prefix(k))));
        if (b > a)
            for (int t = 1; t < samples_per_edge; ++t) out.push_back(loop.at(a + (b - a) * t / samples_per_edge));
    }
    out.push_back(SPDPoint::from_factor(to_real(loop.prefix(w.size()))));
    return out;
}

std::pair<double, double> DiscTriangulation::polar(size_t v) const {
    auto [k, a] = ring_index(v);
    return {ring_radius(k), 2.0 * std::numbers::pi * a / ring_size[k]};
}

std::pair<int, int> DiscTriangulation::ring_index(size_t v) const {
    int k = static_cast<int>(std::upper_bound(ring_offset.begin(), ring_offset.end(), v) - ring_offset.begin()) - 1;
    return {k, static_cast<int>(v - ring_offset[k])};
}

std::vector<size_t> DiscTriangulation::boundary() const {
    std::vector<size_t> b;
    for (int a = 0; a < ring_size[rings]; ++a) b.push_back(vertex(rings, a));
    return b;
}

std::vector<ZipStep> zipper(int inner_size, int outer_size) {
    std::vector<ZipStep> out;
    int a = 0, b = 0;
    const long A = outer_size, B = inner_size;
    while (a < A || b < B) {
        bool outer = a < A && (b == B || (a + 1) * B <= (b + 1) * A);
        if (outer) {
            out.push_back({true, a, b});
            ++a;
        } else {
            if (B > 1) out.push_back({false, a, b});
            ++b;
        }
    }
    return out;
}

DiscTriangulation triangulate(double ell) {
    if (!(ell >= 1)) throw std::invalid_argument("triangulate: radius must be at least 1");
    DiscTriangulation t;
    t.radius = ell;
    t.rings = static_cast<int>(std::ceil(ell - 1e-9));
    t.ring_size.push_back(1);
    t.ring_offset.push_back(0);
    for (int k = 1; k <= t.rings; ++k) {
        t.ring_offset.push_back(t.ring_offset.back() + t.ring_size.back());
        t.ring_size.push_back(static_cast<int>(std::ceil(2.0 * std::numbers::pi * t.ring_radius(k) - 1e-9)));
    }
    for (int k = 1; k <= t.rings; ++k)
        for (const ZipStep& z : zipper(t.ring_size[k - 1], t.ring_size[k])) {
            if (z.outer) t.triangles.push_back({t.vertex(k - 1, z.b), t.vertex(k, z.a), t.vertex(k, z.a + 1)});
            else t.triangles.push_back({t.vertex(k - 1, z.b), t.vertex(k - 1, z.b + 1), t.vertex(k, z.a)});
        }
    return t;
}

Mat cone_factor(const Loop& loop, const DiscTriangulation& tri, size_t v) {
    auto [r, theta] = tri.polar(v);
    // The basepoint alpha(0) = I, so the whole theta = 0 spoke maps to I exactly.
    if (r == 0 || theta == 0) return Mat::Identity(loop.n(), loop.n());
    Mat f = loop.factor_at(theta / (2.0 * std::numbers::pi) * loop.length());
    if (r >= tri.radius) return f;
    return power_factor(f, r / tri.radius);
}

std::vector<SPDPoint> cone_disc(const Loop& loop, const DiscTriangulation& tri) {
    std::vector<SPDPoint> out;
    out.reserve(tri.vertex_count());
    for (size_t v = 0; v < tri.vertex_count(); ++v) out.push_back(SPDPoint::from_factor(cone_factor(loop, tri, v)));
    return out;
}

nlohmann::json triangulation_json(const DiscTriangulation& tri, const std::vector<SPDPoint>& images) {
    nlohmann::json j;
    j["radius"] = tri.radius;
    j["rings"] = tri.rings;
    nlohmann::json verts = nlohmann::json::array();
    for (size_t v = 0; v < tri.vertex_count(); ++v) {
        auto [r, th] = tri.polar(v);
        nlohmann::json e = {{"r", r}, {"theta", th}};
        if (v < images.size()) {
            nlohmann::json rows = nlohmann::json::array();
            for (int a = 0; a < images[v].n; ++a) {
                std::vector<double> row;
                for (int b = 0; b < images[v].n; ++b) row.push_back(images[v].P(a, b));
                rows.push_back(row);
            }
            e["P"] = rows;
        }
        verts.push_back(e);
    }
    j["vertices"] = verts;
    j["triangles"] = tri.triangles;
    return j;
}

}  // namespace slz
