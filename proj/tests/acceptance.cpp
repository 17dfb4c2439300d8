// Acceptance suite: one PASS/FAIL line per criterion. Optional arguments select criteria.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cert_fuzz.hpp"
#include "reduction_gen.hpp"
#include "slz/calibration.hpp"
#include "slz/certificate_json.hpp"
#include "slz/families.hpp"
#include "slz/unipotent.hpp"
#include "unipotent_gen.hpp"

using namespace slz;
using namespace slz::testing;

namespace {

// Pinned tolerances and frozen constants.
constexpr int kFuzzCertificates = 1000;
constexpr long kFrozenK = 64;
constexpr double kHSlopeMax = 2.3;
constexpr double kDSlopeMax = 3.3;
constexpr double kReconTol = 1e-6;
constexpr double kMembershipTol = 1e-6;
constexpr double kPhiSlopeMax = 0.05;
constexpr double kEdgeFractionMin = 0.99;
constexpr double kCostSlopeMax = 4.3;
constexpr double kTriangleSlopeMax = 2.1;
const std::vector<size_t> kScalingElls = {50, 100, 200, 500};
constexpr int kScalingReps = 5;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int prec = 3) {
    std::ostringstream os;
    os.precision(prec);
    os << v;
    return os.str();
}

Outcome presentation_soundness() {
    size_t rels = 0, null_rels = 0;
    for (const auto& r : relators(5)) {
        ++rels;
        null_rels += evaluate(r.word(5), 5).is_identity();
    }
    std::mt19937_64 rng(1001);
    int agree = 0, valid_ok = 0, accepted_mutants = 0, unsound = 0;
    for (int t = 0; t < kFuzzCertificates; ++t) {
        Certificate c = random_null_certificate(5, 1 + t % 12, rng);
        bool valid = t % 2 == 0;
        if (!valid) c = mutate(c, rng);
        bool acc = verify(c).accepted;
        agree += acc == oracle_replay(c);
        if (valid) valid_ok += acc;
        if (!valid) accepted_mutants += acc;
        if (acc && !evaluate(c.initial, 5).is_identity()) ++unsound;
    }
    Outcome o;
    o.pass = null_rels == rels && agree == kFuzzCertificates && valid_ok == kFuzzCertificates / 2 && unsound == 0;
    o.detail = std::to_string(null_rels) + "/" + std::to_string(rels) + " relators null; " + std::to_string(agree) + "/" +
               std::to_string(kFuzzCertificates) + " fuzzed verdicts match replay; " + std::to_string(accepted_mutants) +
               " mutants still legal";
    return o;
}

Outcome shortcut_law() {
    auto law = measure_shortcut_law(ShortcutScheme::default_scheme(), 5, 200, 18, 2002);
    Outcome o;
    o.pass = law.all_exact && law.samples == 200 * 18 && law.max_doubling_gap <= kFrozenK &&
             law.max_ratio <= ShortcutScheme::default_scheme().c_short();
    o.detail = std::to_string(law.samples) + " samples exact=" + (law.all_exact ? "yes" : "no") +
               " max len(2x)-len(x)=" + std::to_string(law.max_doubling_gap) + " (K=" + std::to_string(kFrozenK) +
               ") max len/(1+log2|x|)=" + fmt(law.max_ratio);
    return o;
}

struct UniRun {
    size_t d;
    double h;
    uint64_t cost;
    bool ok;
};

UniRun run_unipotent(const ParabolicShape& P, int k, int bits, uint64_t seed) {
    std::mt19937_64 rng(seed);
    Word w = random_unipotent_identity(P, k, bits, rng);
    double h = 1;
    for (const auto& a : w) h = std::max(h, static_cast<double>(a.x.bit_length()));
    Certificate c = fill_unipotent(w, P);
    auto r = verify(c);
    return {w.size(), h, r.total_cost, r.accepted && r.total_cost == c.total_cost};
}

Outcome unipotent_filler() {
    const ParabolicShape P = ParabolicShape::from_composition({1, 1, 1, 2});
    size_t runs = 0, verified = 0;
    // h sweep: fixed letter structure per seed, magnitudes over five decades.
    const std::vector<int> bits = {4, 40, 400, 4000, 40000, 400000};
    std::vector<double> hs, hc;
    size_t d_fixed = 0;
    for (uint64_t seed = 1; seed <= 4; ++seed) {
        std::vector<UniRun> rs;
        for (int b : bits) rs.push_back(run_unipotent(P, 4, b, 3000 + seed));
        for (const auto& r : rs) {
            ++runs;
            verified += r.ok;
            hs.push_back(r.h);
            hc.push_back(static_cast<double>(r.cost));
        }
        d_fixed = rs.front().d;
    }
    double h_slope = loglog_slope(hs, hc);
    // d sweep at fixed h: mean cost per letter count over d in [4, 12].
    std::map<size_t, std::vector<double>> by_d;
    for (int k = 1; k <= 9; ++k)
        for (uint64_t seed = 1; seed <= 12; ++seed) {
            UniRun r = run_unipotent(P, k, 64, 5000 + 100 * k + seed);
            ++runs;
            verified += r.ok;
            if (r.d >= 4 && r.d <= 12) by_d[r.d].push_back(static_cast<double>(r.cost));
        }
    std::vector<double> ds, dc;
    for (auto& [d, cs] : by_d) {
        double m = 0;
        for (double c : cs) m += c;
        ds.push_back(static_cast<double>(d));
        dc.push_back(m / cs.size());
    }
    double d_slope = loglog_slope(ds, dc);
    Outcome o;
    o.pass = verified == runs && h_slope <= kHSlopeMax && d_slope <= kDSlopeMax && by_d.size() >= 5;
    o.detail = std::to_string(verified) + "/" + std::to_string(runs) + " verified; slope vs h " + fmt(h_slope) +
               " (d~" + std::to_string(d_fixed) + ", max " + fmt(kHSlopeMax) + "); slope vs d " + fmt(d_slope) +
               " over " + std::to_string(by_d.size()) + " d values (max " + fmt(kDSlopeMax) + ")";
    return o;
}

Outcome siegel_reduction() {
    std::mt19937_64 rng(4004);
    std::normal_distribution<double> nd(0, 1);
    std::uniform_real_distribution<double> gap(0.0, 3.0);
    double worst_recon = 0, worst_member = 0;
    int points = 0, failures = 0;
    for (int t = 0; t < 1000; ++t) {
        Mat F;
        if (t % 2 == 0) {
            F = forward_sample(5, {gap(rng), gap(rng), gap(rng), gap(rng)}, 2 + t % 25, rng).factor;
        } else {
            F = Mat(5, 5);
            double s = 0.2 + 0.4 * (t % 10);
            for (int r = 0; r < 5; ++r)
                for (int c = 0; c < 5; ++c) F(r, c) = nd(rng) * std::exp(s * nd(rng));
        }
        ++points;
        try {
            auto x = SPDPoint::from_factor(F);
            auto d = siegel_reduce(x);
            double D = dist(point_of(GroupElement::identity(5)), x);
            worst_recon = std::max(worst_recon, reconstruction_error(x, d) / (1 + D));
            worst_member = std::max(worst_member, siegel_violation(d));
        } catch (const std::exception&) {
            ++failures;
        }
    }
    // Flag oracle on gap-constructed instances.
    const double cV = std::sqrt(5.0) * std::pow(siegel_epsilon(), -5);
    int flag_ok = 0;
    for (int t = 0; t < 100; ++t) {
        int j = 1 + t % 4;
        std::vector<double> gaps(4);
        for (auto& g : gaps) g = 0.5 * gap(rng) / 3.0;
        gaps[j - 1] = std::log(300.0) + gap(rng);
        auto s = forward_sample(5, gaps, 3 + t % 4, rng);
        auto x = SPDPoint::from_factor(s.factor);
        auto d = siegel_reduce(x);
        double lo = cV * d.aPart(j), hi = d.aPart(j - 1) / cV;
        // Lower end of the window keeps the enumeration small.
        double r = std::min(2 * lo, std::sqrt(lo * hi));
        std::vector<IntVec> rows;
        for (int k = j; k < 5; ++k) {
            IntVec v(5);
            for (int c = 0; c < 5; ++c) v[c] = d.gamma_inv(k, c);
            rows.push_back(v);
        }
        auto predicted = hermite_span(rows, 5);
        flag_ok += short_vector_span(x, r) == predicted && brute_short_span(s, r) == predicted;
    }
    Outcome o;
    o.pass = failures == 0 && worst_recon <= kReconTol && worst_member <= kMembershipTol && flag_ok == 100;
    o.detail = std::to_string(points - failures) + "/" + std::to_string(points) + " reduced; worst recon/(1+d) " +
               fmt(worst_recon) + "; worst membership excess " + fmt(worst_member) + "; flag oracle " +
               std::to_string(flag_ok) + "/100";
    return o;
}

Outcome hausdorff_stability() {
    auto sw = measure_c_phi(5, 500, 10, 2.0, 20.0, 1.0, 5005);
    double mx = *std::max_element(sw.c_phi.begin(), sw.c_phi.end());
    Outcome o;
    o.pass = std::isfinite(sw.slope) && sw.slope <= kPhiSlopeMax;
    o.detail = "500 pairs over base distance 2..20; max c_phi " + fmt(mx) + "; slope vs log distance " + fmt(sw.slope) +
               " (max " + fmt(kPhiSlopeMax) + ")";
    return o;
}

Outcome parabolic_edges() {
    FillOptions opt;  // frozen c_rho, c_n and t0
    uint64_t interior = 0, bounded = 0, member = 0, coarsened = 0;
    int64_t max_m = 0;
    double max_n = 0;
    for (size_t ell : {100, 200, 300})
        for (int rep = 0; rep < 3; ++rep) {
            Word w = generate_word(Family::DeepCusp, 5, ell, run_seed(6006, Family::DeepCusp, ell, rep));
            EdgeStats s = survey_edges(w, 5, opt);
            interior += s.interior;
            bounded += s.bounded;
            member += s.member_at_t0;
            coarsened += s.coarsened_triangles;
            max_m = std::max(max_m, s.max_m_entry);
            max_n = std::max(max_n, s.max_n_log_per_radius);
        }
    double frac = interior ? static_cast<double>(bounded) / interior : 0;
    Outcome o;
    o.pass = interior > 0 && frac >= kEdgeFractionMin;
    o.detail = fmt(100 * frac, 5) + "% of " + std::to_string(interior) + " interior edges bounded (c_rho=" +
               std::to_string(opt.c_rho) + ", c_n=" + fmt(opt.c_n) + "); membership before coarsening " +
               fmt(100.0 * member / std::max<uint64_t>(1, interior), 5) + "%; coarsened triangles " +
               std::to_string(coarsened) + "; max m entry " + std::to_string(max_m) + "; max log|n|/(1+r) " + fmt(max_n);
    return o;
}

Outcome quartic_scaling() {
    bool all_verified = true;
    std::ostringstream det;
    bool slopes_ok = true;
    for (Family f : {Family::ConjRelators, Family::ShortcutUnary, Family::Commutators}) {
        ExperimentSpec spec;
        spec.family = f;
        spec.ells = kScalingElls;
        spec.reps = kScalingReps;
        spec.seed = 7007;
        std::vector<double> x, cost, tris;
        auto t0 = std::chrono::steady_clock::now();
        run_experiment(spec, [&](const ExperimentRow& r) {
            all_verified = all_verified && r.report.verified;
            x.push_back(static_cast<double>(r.report.length));
            cost.push_back(static_cast<double>(r.report.total_cost));
            tris.push_back(static_cast<double>(r.report.triangles));
            std::fprintf(stderr, "  [7] %s ell=%zu len=%zu cost=%llu verified=%d %.1fs\n", family_name(f), r.ell,
                         r.report.length, static_cast<unsigned long long>(r.report.total_cost), r.report.verified ? 1 : 0,
                         r.report.wall_ms / 1000);
        });
        double cs = loglog_slope(x, cost), ts = loglog_slope(x, tris);
        slopes_ok = slopes_ok && cs <= kCostSlopeMax && ts <= kTriangleSlopeMax;
        det << family_name(f) << ": cost slope " << fmt(cs) << ", triangle slope " << fmt(ts) << " ("
            << fmt(seconds_since(t0), 4) << "s); ";
    }
    Outcome o;
    o.pass = all_verified && slopes_ok;
    o.detail = det.str() + (all_verified ? "all certificates verified" : "UNVERIFIED certificates");
    return o;
}

std::string strip_timing(const std::string& row) { return row.substr(0, row.rfind(',')); }

Outcome determinism() {
    bool same_cert = true, same_csv = true;
    for (Family f : {Family::ConjRelators, Family::ShortcutUnary, Family::Commutators, Family::DeepCusp}) {
        Word w1 = generate_word(f, 5, 40, run_seed(8008, f, 40, 0));
        Word w2 = generate_word(f, 5, 40, run_seed(8008, f, 40, 0));
        same_cert = same_cert && w1 == w2;
        FillOptions a = family_options(f, {}), b = a;
        a.keep_certificate = b.keep_certificate = true;
        auto ra = fill_word(w1, 5, a), rb = fill_word(w2, 5, b);
        same_cert = same_cert && certificate_to_json(*ra.certificate).dump() == certificate_to_json(*rb.certificate).dump();
    }
    ExperimentSpec spec;
    spec.family = Family::ConjRelators;
    spec.ells = {20, 40};
    spec.reps = 2;
    spec.seed = 8008;
    auto r1 = run_experiment(spec), r2 = run_experiment(spec);
    for (size_t t = 0; t < r1.size(); ++t) same_csv = same_csv && strip_timing(csv_row(r1[t])) == strip_timing(csv_row(r2[t]));
    Outcome o;
    o.pass = same_cert && same_csv && r1.size() == 4;
    o.detail = std::string("certificates ") + (same_cert ? "identical" : "DIFFER") + "; CSV rows " +
               (same_csv ? "identical" : "DIFFER") + " excluding wall_ms";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"presentation soundness", presentation_soundness},
        {"shortcut length law", shortcut_law},
        {"unipotent filler scaling", unipotent_filler},
        {"Siegel reduction", siegel_reduction},
        {"Hausdorff stability of phi", hausdorff_stability},
        {"parabolic edge structure", parabolic_edges},
        {"quartic scaling", quartic_scaling},
        {"determinism", determinism},
    };
    std::set<int> only;
    for (int a = 1; a < argc; ++a) only.insert(std::atoi(argv[a]));
    int failed = 0;
    for (size_t k = 0; k < criteria.size(); ++k) {
        int id = static_cast<int>(k) + 1;
        if (!only.empty() && !only.count(id)) continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failed += !o.pass;
        std::cout << "criterion " << id << " " << (o.pass ? "PASS" : "FAIL") << " " << criteria[k].first << " ["
                  << fmt(seconds_since(t0), 4) << "s]: " << o.detail << std::endl;
    }
    return failed ? 1 : 0;
}
