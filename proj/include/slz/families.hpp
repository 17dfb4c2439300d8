#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "slz/fill.hpp"

namespace slz {

// Null-homotopic input families; every generated word evaluates to I by construction.
enum class Family : uint8_t {
    ConjRelators,   // products of conjugated relators
    ShortcutUnary,  // shortcut_word(i,j,N) . e_ij^-N
    Commutators,    // u u^-1 u^-1 u for a bounded random word u
    DeepCusp,       // shortcut_word(i,j,x) shortcut_word(i,j,y) shortcut_word(i,j,-x-y), large x and y
};

const char* family_name(Family f);
// Accepts conj-relators | shortcut-unary | commutators | deep-cusp (and a | b | c | d).
Family parse_family(const std::string& s);

// Word of length about ell (at least ell for ConjRelators, at most ell otherwise).
Word generate_word(Family f, int n, size_t ell, uint64_t seed);

// Run seed for (family, ell, rep) derived from a base seed.
uint64_t run_seed(uint64_t base, Family f, size_t ell, int rep);

struct ExperimentSpec {
    Family family = Family::ConjRelators;
    std::vector<size_t> ells;
    int reps = 5;
    uint64_t seed = 1;
    int n = 5;
    FillOptions fill;
};

struct ExperimentRow {
    Family family = Family::ConjRelators;
    uint64_t seed = 0;
    size_t ell = 0;
    FillingReport report;
};

// Fill options used for a family: commutators are coned even though they are freely trivial.
FillOptions family_options(Family f, FillOptions base);

// Runs every (ell, rep) in order; `on_row` sees each row as it completes.
std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec,
                                          const std::function<void(const ExperimentRow&)>& on_row = {});

inline constexpr const char* kCsvSchema = "# slz-experiment-csv v1";
std::string csv_header();
std::string csv_row(const ExperimentRow& r);

// Least-squares slope of log y against log x; points with y <= 0 are dropped.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);
// Least-squares slope of y against x; NaN with fewer than two distinct x.
double linear_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace slz
