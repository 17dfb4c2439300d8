#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "slz/families.hpp"
#include "slz/shortcut.hpp"

namespace slz {

struct ShortcutLaw {
    int samples = 0;
    bool all_exact = true;      // evaluate(shortcut_word(i,j,x)) == e_ij(x) for every sample
    long max_doubling_gap = 0;  // max over samples of len(2x) - len(x)
    double max_ratio = 0;       // max len / (1 + log2(|x| + 1))
};

// Samples per_decade values of |x| in [10^(d-1), 10^d) for d = 1..decades, random signs and index pairs.
ShortcutLaw measure_shortcut_law(const ShortcutScheme& sc, int n, int per_decade, int decades, uint64_t seed);

// Random point at distance `d` from I: k diag(exp(h)) with k orthogonal and |2h| = d.
SPDPoint random_point_at(int n, double d, std::mt19937_64& rng);

// Excess of the Siegel projection over the distance of a pair:
// max(0, dist_A(phi(x), phi(y)) - dist(x, y)), with dist_A the flat distance on log a.
double phi_excess(const SPDPoint& x, const SPDPoint& y);

struct PhiSweep {
    std::vector<double> base_distance;
    std::vector<double> c_phi;  // max excess over the pairs at that base distance
    double slope = 0;           // c_phi against log base distance
};

// `pairs` pairs split evenly over `levels` base distances from d_lo to d_hi (geometric);
// partners are perturbations of size up to `step`.
PhiSweep measure_c_phi(int n, int pairs, int levels, double d_lo, double d_hi, double step, uint64_t seed);

// Largest E-distance between images of adjacent vertices of the coned disc.
double measure_lambda(const Word& w, int n);

struct Calibration {
    double c_short = 48.0;
    long K = 0;
    double shortcut_ratio = 0;
    double c_phi = 0;
    double lambda = 0;
    int64_t c_rho = 0;
    double c_n = 0;
    double t0 = kDefaultT0;
};

Calibration calibrate(int n, uint64_t seed);
nlohmann::json calibration_json(const Calibration& c);

}  // namespace slz
