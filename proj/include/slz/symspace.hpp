#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "slz/word.hpp"

namespace slz {

using Mat = Eigen::MatrixXd;

// Point of SL(n,R)/SO(n) as a unit-determinant SPD matrix P, kept together with a factor F,
// P = F F^T. Computations go through F, which has half the condition number of P.
struct SPDPoint {
    int n = 0;
    Mat P;
    Mat F;

    // Scales F to |det F| = 1. Throws std::invalid_argument for singular F.
    static SPDPoint from_factor(const Mat& F);
    // P symmetric positive definite; normalized to det 1.
    static SPDPoint from_matrix(const Mat& P);
};

SPDPoint point_of(const GroupElement& g);
SPDPoint point_of(const Mat& g);
Mat to_real(const GroupElement& g);

// sqrt(sum log^2 mu_i) over the generalized eigenvalues of (P, Q).
double dist(const SPDPoint& p, const SPDPoint& q);
SPDPoint geodesic(const SPDPoint& p, const SPDPoint& q, double t);
// P^s, the point at parameter s on the geodesic from I through P.
SPDPoint power(const SPDPoint& p, double s);
// Factor of P^s computed from a factor of P.
Mat power_factor(const Mat& F, double s);

// Piecewise-geodesic loop through the prefix products of a null plain word, parameterized
// by cumulative length in E. Letters of zero length (diagonal signs) occupy no arc.
class Loop {
public:
    Loop(const Word& w, int n);

    int n() const { return n_; }
    const Word& word() const { return w_; }
    double length() const { return cum_.back(); }
    // Cumulative length at prefix k (k = 0 .. |w|).
    double arc_at_prefix(size_t k) const { return cum_[k]; }
    // Prefix index whose arc position is nearest to s; ties go to the smaller index.
    size_t nearest_prefix(double s) const;
    // Factor of the loop point at arc position s in [0, length()].
    Mat factor_at(double s) const;
    SPDPoint at(double s) const { return SPDPoint::from_factor(factor_at(s)); }
    const GroupElement& prefix(size_t k) const { return prefix_[k]; }

private:
    int n_;
    Word w_;
    std::vector<GroupElement> prefix_;
    std::vector<Mat> prefix_real_;
    std::vector<double> cum_;
};

// Samples the loop: every prefix point plus samples_per_edge - 1 interior points per letter.
std::vector<SPDPoint> loop_of_word(const Word& w, int n, int samples_per_edge);

// Concentric unit-width annuli around the center; ring k >= 1 has ceil(2 pi k) vertices
// at angles 2 pi a / size. Annulus k (between rings k-1 and k) is triangulated by a zipper.
struct DiscTriangulation {
    double radius = 0;
    int rings = 0;
    std::vector<int> ring_size;        // ring_size[0] == 1
    std::vector<size_t> ring_offset;   // vertex id of (k, 0)
    std::vector<std::array<size_t, 3>> triangles;

    size_t vertex_count() const { return ring_offset.back() + ring_size.back(); }
    size_t vertex(int ring, int idx) const {
        return ring_offset[ring] + static_cast<size_t>(idx % ring_size[ring]);
    }
    double ring_radius(int k) const { return radius * k / rings; }
    std::pair<double, double> polar(size_t v) const;
    std::pair<int, int> ring_index(size_t v) const;
    std::vector<size_t> boundary() const;
};

// One triangle of a zipper pass over annulus k, inner ring b-indices and outer ring a-indices.
// Outer type: (inner b, outer a, outer a+1). Inner type: (inner b, inner b+1, outer a).
struct ZipStep {
    bool outer;
    int a, b;
};
std::vector<ZipStep> zipper(int inner_size, int outer_size);

DiscTriangulation triangulate(double ell);

// Image of a disc vertex under the coning map of a loop based at I: alpha(theta)^(r / radius).
Mat cone_factor(const Loop& loop, const DiscTriangulation& tri, size_t v);
std::vector<SPDPoint> cone_disc(const Loop& loop, const DiscTriangulation& tri);

nlohmann::json triangulation_json(const DiscTriangulation& tri, const std::vector<SPDPoint>& images);

}  // namespace slz
