#include "commands.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "slz/calibration.hpp"
#include "slz/certificate_json.hpp"
#include "slz/families.hpp"
#include "slz/fill.hpp"
#include "slz/shortcut.hpp"

namespace slz::cli {

namespace {

using nlohmann::json;

constexpr int kOk = 0, kRejected = 1, kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Values read from the config file; flags given on the command line win.
struct Config {
    double t0 = kDefaultT0;
    int L0 = FillOptions{}.cm.L0;
    double c_mm = 1.0;
    double c_short = 48.0;
    int c_rho = FillOptions{}.c_rho;
    double c_n = FillOptions{}.c_n;
    int threads = 1;

    static Config load(const std::string& path) {
        Config c;
        if (path.empty()) return c;
        std::ifstream in(path);
        if (!in) throw UsageError("cannot open config " + path);
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw UsageError("bad config " + path + ": " + e.what());
        }
        c.t0 = j.value("t0", c.t0);
        c.L0 = j.value("L0", c.L0);
        c.c_mm = j.value("c_mm", c.c_mm);
        c.c_short = j.value("c_short", c.c_short);
        c.c_rho = j.value("c_rho", c.c_rho);
        c.c_n = j.value("c_n", c.c_n);
        c.threads = j.value("threads", c.threads);
        return c;
    }
};

std::string read_text(const std::string& path) {
    if (path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json(const std::string& path) {
    try {
        return json::parse(read_text(path));
    } catch (const json::exception& e) {
        throw UsageError("bad JSON in " + path + ": " + e.what());
    }
}

Word read_word(const std::string& path) {
    std::string text = read_text(path);
    // Newlines separate nothing; the whole file is one word.
    for (char& c : text)
        if (c == '\n' || c == '\r' || c == '\t') c = ' ';
    try {
        return parse_word(text);
    } catch (const std::exception& e) {
        throw UsageError(std::string("bad word: ") + e.what());
    }
}

Mat matrix_of(const json& rows) {
    if (!rows.is_array() || rows.empty()) throw UsageError("matrix must be a non-empty array of rows");
    const size_t n = rows.size();
    Mat m(n, n);
    for (size_t i = 0; i < n; ++i) {
        if (!rows[i].is_array() || rows[i].size() != n) throw UsageError("matrix must be square");
        for (size_t j = 0; j < n; ++j) m(i, j) = rows[i][j].get<double>();
    }
    return m;
}

json matrix_json(const Mat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (int j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
        rows.push_back(r);
    }
    return rows;
}

json group_json(const GroupElement& g) {
    json rows = json::array();
    for (int i = 0; i < g.n(); ++i) {
        json r = json::array();
        for (int j = 0; j < g.n(); ++j) {
            const Int& v = g(i, j);
            if (v.is_small()) r.push_back(v.small());
            else r.push_back(v.str());
        }
        rows.push_back(r);
    }
    return rows;
}

ShortcutScheme scheme_from(const std::string& seed, double c_short) {
    if (seed.empty()) return ShortcutScheme(ShortcutScheme::default_scheme().seed(), c_short);
    std::array<Int, 4> a;
    std::stringstream ss(seed);
    std::string tok;
    int k = 0;
    while (std::getline(ss, tok, ',')) {
        if (k >= 4) throw UsageError("--seed-matrix takes four integers a,b,c,d");
        try {
            a[k++] = Int(tok);
        } catch (const std::exception&) {
            throw UsageError("--seed-matrix: bad integer " + tok);
        }
    }
    if (k != 4) throw UsageError("--seed-matrix takes four integers a,b,c,d");
    try {
        return ShortcutScheme(a, c_short);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

std::string fill_csv(const FillingReport& r) {
    std::ostringstream os;
    os << "# slz-fill-csv v1\n"
       << "length,triangles,nontrivial_triangles,collar_cost,total_cost,move_count,macro_count,verified,wall_ms\n"
       << r.length << ',' << r.triangles << ',' << r.nontrivial_triangles << ',' << r.collar_cost << ',' << r.total_cost
       << ',' << r.move_count << ',' << r.macro_count << ',' << (r.verified ? 1 : 0) << ','
       << static_cast<long long>(std::llround(r.wall_ms)) << '\n';
    return os.str();
}

std::vector<size_t> sweep(size_t lmin, size_t lmax) {
    if (lmin == 0 || lmax < lmin) throw UsageError("need 0 < --lmin <= --lmax");
    std::vector<size_t> ells;
    for (size_t l = lmin; l < lmax; l *= 2) ells.push_back(l);
    ells.push_back(lmax);
    return ells;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Filling certificates for null words in SL(n,Z)"};
    app.require_subcommand(1);
    std::string config_path;
    if (const char* env = std::getenv("SLZ_CONFIG")) config_path = env;
    app.add_option("--config", config_path, "JSON config (default: $SLZ_CONFIG)");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "Replay a certificate");
    std::string cert_path;
    verify_cmd->add_option("certificate", cert_path, "certificate JSON ('-' for stdin)")->required();

    // fill
    auto* fill_cmd = app.add_subcommand("fill", "Fill a null word and report the cost");
    std::string word_path, emit_cert, report = "json";
    int n = 5;
    std::optional<double> t0, c_mm;
    std::optional<int> L0, threads;
    bool no_verify = false;
    fill_cmd->add_option("word", word_path, "word file ('-' for stdin)")->required();
    fill_cmd->add_option("--n", n, "dimension")->check(CLI::Range(5, 7));
    fill_cmd->add_option("--t0", t0, "gap threshold for triangle classes")->check(CLI::PositiveNumber);
    fill_cmd->add_option("--L0", L0, "atomic fill threshold")->check(CLI::Range(1, 1 << 20));
    fill_cmd->add_option("--c-mm", c_mm, "macro cost multiplier")->check(CLI::PositiveNumber);
    fill_cmd->add_option("--threads", threads, "labelling threads")->check(CLI::Range(1, 256));
    fill_cmd->add_option("--emit-cert", emit_cert, "write the certificate here");
    fill_cmd->add_option("--report", report, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    fill_cmd->add_flag("--no-verify", no_verify, "skip the streaming verifier");

    // reduce
    auto* reduce_cmd = app.add_subcommand("reduce", "Siegel-reduce a point given as matrix JSON");
    std::string matrix_path;
    reduce_cmd->add_option("matrix", matrix_path, "JSON: {\"spd\"|\"factor\"|\"group\": rows} or bare SPD rows")->required();
    reduce_cmd->add_option("--t0", t0, "gap threshold")->check(CLI::PositiveNumber);

    // shortcut
    auto* short_cmd = app.add_subcommand("shortcut", "Logarithmic word for e_ij(x)");
    int si = 1, sj = 2;
    std::string sx, seed_matrix;
    std::optional<double> c_short;
    short_cmd->add_option("--n", n, "dimension")->check(CLI::Range(3, 64));
    short_cmd->add_option("--i", si, "row")->required();
    short_cmd->add_option("--j", sj, "column")->required();
    short_cmd->add_option("--x", sx, "coefficient (decimal, any size)")->required();
    short_cmd->add_option("--seed-matrix", seed_matrix, "hyperbolic seed a,b,c,d");
    short_cmd->add_option("--c-short", c_short, "length constant")->check(CLI::PositiveNumber);

    // gen-loop
    auto* gen_cmd = app.add_subcommand("gen-loop", "Generate a null word from a family");
    std::string family = "conj-relators";
    size_t ell = 50;
    uint64_t seed = 1;
    gen_cmd->add_option("--family", family, "conj-relators|shortcut-unary|commutators|deep-cusp");
    gen_cmd->add_option("--ell", ell, "target length")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--seed", seed, "random seed");
    gen_cmd->add_option("--n", n, "dimension")->check(CLI::Range(3, 7));

    // experiment
    auto* exp_cmd = app.add_subcommand("experiment", "Sweep a family over lengths; CSV rows plus fitted slopes");
    size_t lmin = 50, lmax = 200;
    std::vector<size_t> ells;
    int reps = 5;
    std::string out_path;
    exp_cmd->add_option("--family", family, "conj-relators|shortcut-unary|commutators|deep-cusp");
    exp_cmd->add_option("--lmin", lmin, "smallest length");
    exp_cmd->add_option("--lmax", lmax, "largest length");
    exp_cmd->add_option("--ells", ells, "explicit lengths (overrides the doubling sweep)")->delimiter(',');
    exp_cmd->add_option("--reps", reps, "runs per length")->check(CLI::Range(1, 1000));
    exp_cmd->add_option("--seed", seed, "base seed");
    exp_cmd->add_option("--n", n, "dimension")->check(CLI::Range(5, 7));
    exp_cmd->add_option("--t0", t0, "gap threshold")->check(CLI::PositiveNumber);
    exp_cmd->add_option("--L0", L0, "atomic fill threshold")->check(CLI::Range(1, 1 << 20));
    exp_cmd->add_option("--c-mm", c_mm, "macro cost multiplier")->check(CLI::PositiveNumber);
    exp_cmd->add_option("--threads", threads, "labelling threads")->check(CLI::Range(1, 256));
    exp_cmd->add_option("--out", out_path, "CSV path (default stdout)");

    // calibrate
    auto* cal_cmd = app.add_subcommand("calibrate", "Measure the empirical constants and write a config");
    cal_cmd->add_option("--n", n, "dimension")->check(CLI::Range(5, 7));
    cal_cmd->add_option("--seed", seed, "random seed");
    cal_cmd->add_option("--out", out_path, "config path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        const Config cfg = Config::load(config_path);
        auto fill_options = [&]() {
            FillOptions o;
            o.t0 = t0.value_or(cfg.t0);
            o.cm.L0 = L0.value_or(cfg.L0);
            o.cm.c_mm = c_mm.value_or(cfg.c_mm);
            o.threads = threads.value_or(cfg.threads);
            o.c_rho = cfg.c_rho;
            o.c_n = cfg.c_n;
            return o;
        };

        if (*verify_cmd) {
            Certificate c;
            try {
                c = certificate_from_json(read_json(cert_path));
            } catch (const UsageError&) {
                throw;
            } catch (const std::exception& e) {
                throw UsageError(std::string("bad certificate: ") + e.what());
            }
            VerifyResult r = verify(c);
            if (r.accepted) {
                out << "accepted total_cost=" << r.total_cost << " moves=" << r.move_count << " macros=" << r.macro_count
                    << '\n';
                return kOk;
            }
            out << "rejected at step " << r.failed_step << ": " << r.reason << '\n';
            return kRejected;
        }

        if (*fill_cmd) {
            Word w = read_word(word_path);
            FillOptions o = fill_options();
            o.verify = !no_verify;
            std::ofstream cert;
            if (!emit_cert.empty()) {
                cert.open(emit_cert);
                if (!cert) throw UsageError("cannot write " + emit_cert);
                o.cert_out = &cert;
            }
            FillingReport r;
            try {
                r = fill_word(w, n, o);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            if (report == "csv") out << fill_csv(r);
            else out << report_json(r).dump(2) << '\n';
            return (!o.verify || r.verified) ? kOk : kRejected;
        }

        if (*reduce_cmd) {
            json j = read_json(matrix_path);
            Mat F;
            if (j.is_array()) {
                F = SPDPoint::from_matrix(matrix_of(j)).F;
            } else if (j.contains("spd")) {
                F = SPDPoint::from_matrix(matrix_of(j["spd"])).F;
            } else if (j.contains("factor")) {
                F = matrix_of(j["factor"]);
            } else if (j.contains("group")) {
                F = point_of(matrix_of(j["group"])).F;
            } else {
                throw UsageError("matrix JSON needs one of spd, factor, group");
            }
            SiegelDecomposition d;
            try {
                d = siegel_reduce_factor(F);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            const double t = t0.value_or(cfg.t0);
            json o;
            o["gamma"] = group_json(d.gamma);
            o["nPart"] = matrix_json(d.nPart);
            o["aPart"] = std::vector<double>(d.aPart.data(), d.aPart.data() + d.aPart.size());
            o["shape"] = classify_parabolic(d.aPart, t).composition();
            o["t0"] = t;
            o["rounds"] = d.rounds;
            out << o.dump(2) << '\n';
            return kOk;
        }

        if (*short_cmd) {
            if (si < 1 || sj < 1 || si > n || sj > n || si == sj) throw UsageError("need distinct 1 <= i, j <= n");
            Int x;
            try {
                x = Int(sx);
            } catch (const std::exception&) {
                throw UsageError("--x: bad integer " + sx);
            }
            ShortcutScheme sc = scheme_from(seed_matrix, c_short.value_or(cfg.c_short));
            Word w = sc.shortcut_word(si, sj, x);
            if (!(evaluate(w, n) == GroupElement::elementary(n, si, sj, x))) {
                err << "shortcut word does not evaluate to e_ij(x)\n";
                return kRejected;
            }
            out << format_word(w) << '\n' << "length " << w.size() << '\n';
            return kOk;
        }

        if (*gen_cmd) {
            Family f;
            try {
                f = parse_family(family);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            out << format_word(generate_word(f, n, ell, seed)) << '\n';
            return kOk;
        }

        if (*exp_cmd) {
            ExperimentSpec spec;
            try {
                spec.family = parse_family(family);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            spec.ells = ells.empty() ? sweep(lmin, lmax) : ells;
            spec.reps = reps;
            spec.seed = seed;
            spec.n = n;
            spec.fill = fill_options();
            std::ofstream file;
            if (!out_path.empty()) {
                file.open(out_path);
                if (!file) throw UsageError("cannot write " + out_path);
            }
            std::ostream& os = out_path.empty() ? out : file;
            os << csv_header() << '\n';
            std::vector<double> xs, cost, tris;
            bool all_verified = true;
            run_experiment(spec, [&](const ExperimentRow& r) {
                os << csv_row(r) << '\n' << std::flush;
                xs.push_back(static_cast<double>(r.ell));
                cost.push_back(static_cast<double>(r.report.total_cost));
                tris.push_back(static_cast<double>(r.report.triangles));
                all_verified = all_verified && r.report.verified;
            });
            os << "# slope total_cost " << loglog_slope(xs, cost) << '\n';
            os << "# slope triangles " << loglog_slope(xs, tris) << '\n';
            return all_verified ? kOk : kRejected;
        }

        if (*cal_cmd) {
            Calibration c = calibrate(n, seed);
            json j = calibration_json(c);
            j["L0"] = cfg.L0;
            j["c_mm"] = cfg.c_mm;
            // Bounds consumed by fill: the measured constants with a factor-2 margin.
            j["c_rho"] = std::max<int64_t>(1, 2 * c.c_rho);
            j["c_n"] = std::max(1.0, 2 * c.c_n);
            j["c_rho_measured"] = c.c_rho;
            j["c_n_measured"] = c.c_n;
            if (out_path.empty()) {
                out << j.dump(2) << '\n';
            } else {
                std::ofstream f(out_path);
                if (!f) throw UsageError("cannot write " + out_path);
                f << j.dump(2) << '\n';
            }
            return kOk;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << '\n';
        return kRejected;
    }
    return kUsage;
}

}  // namespace slz::cli
