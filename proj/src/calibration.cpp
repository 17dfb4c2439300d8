#include "slz/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace slz {

namespace {

Int random_magnitude(std::mt19937_64& rng, int decade) {
    // Uniform in [10^(decade-1), 10^decade) for decade <= 18.
    const uint64_t lo = decade == 1 ? 1 : static_cast<uint64_t>(std::pow(10.0L, decade - 1));
    const uint64_t hi = static_cast<uint64_t>(std::pow(10.0L, decade));
    return Int(static_cast<long long>(std::uniform_int_distribution<uint64_t>(lo, hi - 1)(rng)));
}

}  // namespace

ShortcutLaw measure_shortcut_law(const ShortcutScheme& sc, int n, int per_decade, int decades, uint64_t seed) {
    std::mt19937_64 rng(seed);
    ShortcutLaw law;
    for (int d = 1; d <= decades; ++d)
        for (int t = 0; t < per_decade; ++t) {
            Int x = random_magnitude(rng, d);
            if (rng() & 1) x = -x;
            int i = std::uniform_int_distribution<int>(1, n)(rng);
            int j = std::uniform_int_distribution<int>(1, n - 1)(rng);
            if (j >= i) ++j;
            Word w = sc.shortcut_word(i, j, x);
            Word w2 = sc.shortcut_word(i, j, x * Int(2));
            if (!(evaluate(w, n) == GroupElement::elementary(n, i, j, x))) law.all_exact = false;
            law.max_doubling_gap = std::max(law.max_doubling_gap, static_cast<long>(w2.size()) - static_cast<long>(w.size()));
            law.max_ratio = std::max(law.max_ratio, w.size() / (1.0 + std::log2(std::fabs(x.to_double()) + 1.0)));
            ++law.samples;
        }
    return law;
}

SPDPoint random_point_at(int n, double d, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Mat A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = g(rng);
    Eigen::HouseholderQR<Mat> qr(A);
    Mat K = qr.householderQ();
    Eigen::VectorXd h(n);
    for (int i = 0; i < n; ++i) h(i) = g(rng);
    h.array() -= h.mean();
    h *= (d / 2.0) / h.norm();
    Mat F = K * h.array().exp().matrix().asDiagonal();
    return SPDPoint::from_factor(F);
}

double phi_excess(const SPDPoint& x, const SPDPoint& y) {
    Eigen::VectorXd a = phi(x), b = phi(y);
    double s = 0;
    for (int i = 0; i < a.size(); ++i) {
        double t = 2.0 * std::log(a(i) / b(i));
        s += t * t;
    }
    return std::max(0.0, std::sqrt(s) - dist(x, y));
}

PhiSweep measure_c_phi(int n, int pairs, int levels, double d_lo, double d_hi, double step, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    PhiSweep out;
    const int per = std::max(1, pairs / levels);
    for (int l = 0; l < levels; ++l) {
        double d = levels == 1 ? d_lo : d_lo * std::pow(d_hi / d_lo, static_cast<double>(l) / (levels - 1));
        double worst = 0;
        for (int t = 0; t < per; ++t) {
            SPDPoint x = random_point_at(n, d, rng);
            SPDPoint e = random_point_at(n, step * u01(rng), rng);
            // Perturb x by a small displacement applied in its own frame.
            SPDPoint y = SPDPoint::from_factor(x.F * e.F);
            worst = std::max(worst, phi_excess(x, y));
        }
        out.base_distance.push_back(d);
        out.c_phi.push_back(worst);
    }
    // c_phi may be exactly zero, so it is regressed linearly against log distance.
    std::vector<double> lx;
    for (double d : out.base_distance) lx.push_back(std::log(d));
    out.slope = linear_slope(lx, out.c_phi);
    return out;
}

double measure_lambda(const Word& w, int n) {
    Loop loop(w, n);
    DiscTriangulation tri = triangulate(static_cast<double>(w.size()));
    std::vector<SPDPoint> img = cone_disc(loop, tri);
    double worst = 0;
    for (const auto& t : tri.triangles)
        for (int e = 0; e < 3; ++e) worst = std::max(worst, dist(img[t[e]], img[t[(e + 1) % 3]]));
    return worst;
}

Calibration calibrate(int n, uint64_t seed) {
    Calibration c;
    const ShortcutScheme& sc = ShortcutScheme::default_scheme();
    ShortcutLaw law = measure_shortcut_law(sc, n, 200, 18, seed);
    c.c_short = sc.c_short();
    c.K = law.max_doubling_gap;
    c.shortcut_ratio = law.max_ratio;
    PhiSweep ph = measure_c_phi(n, 500, 10, 2.0, 20.0, 1.0, seed + 1);
    c.c_phi = *std::max_element(ph.c_phi.begin(), ph.c_phi.end());
    for (Family f : {Family::ConjRelators, Family::Commutators})
        c.lambda = std::max(c.lambda, measure_lambda(generate_word(f, n, 40, run_seed(seed, f, 40, 0)), n));
    FillOptions opt;
    for (int rep = 0; rep < 2; ++rep) {
        Word w = generate_word(Family::DeepCusp, n, 150, run_seed(seed, Family::DeepCusp, 150, rep));
        EdgeStats st = survey_edges(w, n, opt);
        c.c_rho = std::max(c.c_rho, st.max_m_entry);
        c.c_n = std::max(c.c_n, st.max_n_log_per_radius);
    }
    return c;
}

nlohmann::json calibration_json(const Calibration& c) {
    return {{"c_short", c.c_short}, {"K", c.K},           {"shortcut_ratio", c.shortcut_ratio},
            {"c_phi", c.c_phi},     {"lambda", c.lambda}, {"c_rho", c.c_rho},
            {"c_n", c.c_n},         {"t0", c.t0}};
}

}  // namespace slz
