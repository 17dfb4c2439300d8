#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "slz/certificate_json.hpp"
#include "slz/reduction.hpp"
#include "slz/symspace.hpp"
#include "slz/triangle.hpp"

namespace slz {

struct VertexLabel {
    GroupElement gamma, gamma_inv;
    Eigen::VectorXd a;
    ParabolicShape shape;  // classify_parabolic(a, t0)
};

VertexLabel label_point(const Mat& factor, double t0);
// f0 over a whole triangulation: label = rho(image).
std::vector<VertexLabel> label_vertices(const DiscTriangulation& tri, const std::vector<SPDPoint>& images, double t0);

// label(x)^-1 label(y)
GroupElement label_step(const VertexLabel& x, const VertexLabel& y);

// Triangle parabolic: the class of its first vertex, with boundaries dropped until every
// edge element lies in it. `coarsened` reports whether anything was dropped.
ParabolicShape triangle_shape(const VertexLabel& first, const std::vector<GroupElement>& edges, bool* coarsened = nullptr);

struct FillOptions {
    // Gap threshold for triangle classes. Larger values let M parts of label jumps grow like t0^(1/2),
    // which pushes thick-part triangles past L0.
    double t0 = kDefaultT0;
    // Thick-part triangles whose three edges are label jumps by signed permutations reach
    // perimeter ~60 (each jump is a constructive word of ~20 letters).
    CostModel cm{1.0, 96};
    EdgeWordOptions edge{64, false, {32, 6, true}};
    int threads = 1;
    // Freely trivial inputs are deleted directly instead of being coned.
    bool free_reduce_shortcut = true;
    bool verify = true;
    bool keep_certificate = false;
    std::ostream* cert_out = nullptr;
    // Frozen edge-structure constants: bounded M part and nPart growth per unit radius.
    int c_rho = 8;
    double c_n = 4.0;
};

struct EdgeStats {
    uint64_t interior = 0;         // interior edges with distinct endpoint labels or not
    uint64_t member_at_t0 = 0;     // g in the intersection of the unadjusted triangle classes
    uint64_t bounded = 0;          // norm_inf(mPart) <= c_rho and log2(1+|nPart|) <= c_n (1 + radius)
    uint64_t coarsened_triangles = 0;
    int64_t max_m_entry = 0;
    double max_n_log_per_radius = 0;
};

struct FillingReport {
    size_t length = 0;
    int n = 0;
    size_t triangles = 0;
    size_t nontrivial_triangles = 0;
    std::vector<uint64_t> triangle_costs;  // nonzero triangle costs, zipper order
    uint64_t collar_cost = 0;
    uint64_t total_cost = 0;
    uint64_t move_count = 0;
    uint64_t macro_count = 0;
    double loop_length = 0;
    double max_cone_step = 0;  // largest E-distance between adjacent coned vertices seen on rings
    EdgeStats edges;
    uint64_t mword_fallbacks = 0;
    bool verified = false;
    std::string verify_reason;
    double wall_ms = 0;
    std::optional<Certificate> certificate;
};

// End-to-end filling of a null plain word. Throws std::invalid_argument for bad input and
// std::runtime_error tagged with the failing stage.
FillingReport fill_word(const Word& w, int n, const FillOptions& opt = {});

// Edge statistics of the labelled disc without building words or certificates.
EdgeStats survey_edges(const Word& w, int n, const FillOptions& opt = {});

nlohmann::json report_json(const FillingReport& r);

}  // namespace slz
