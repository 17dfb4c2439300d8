#include "slz/fill.hpp"

#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>
#include <thread>

namespace slz {

VertexLabel label_point(const Mat& factor, double t0) {
    SiegelDecomposition d = siegel_reduce_factor(factor);
    VertexLabel l;
    l.gamma = std::move(d.gamma);
    l.gamma_inv = std::move(d.gamma_inv);
    l.a = d.aPart;
    l.shape = classify_parabolic(l.a, t0);
    return l;
}

std::vector<VertexLabel> label_vertices(const DiscTriangulation& tri, const std::vector<SPDPoint>& images, double t0) {
    if (images.size() != tri.vertex_count()) throw std::invalid_argument("label_vertices: image count mismatch");
    std::vector<VertexLabel> out;
    out.reserve(images.size());
    for (const auto& p : images) out.push_back(label_point(p.F, t0));
    return out;
}

GroupElement label_step(const VertexLabel& x, const VertexLabel& y) {
    if (x.gamma == y.gamma) return GroupElement::identity(x.gamma.n());
    return multiply(x.gamma_inv, y.gamma);
}

ParabolicShape triangle_shape(const VertexLabel& first, const std::vector<GroupElement>& edges, bool* coarsened) {
    const int n = first.shape.n();
    uint32_t mask = first.shape.boundaries();
    const uint32_t start = mask;
    for (const auto& g : edges) {
        if (g.is_identity()) continue;
        for (int i = 1; i < n; ++i) {
            if (!((mask >> i) & 1)) continue;
            bool ok = true;
            for (int r = i; r < n && ok; ++r)
                for (int c = 0; c < i && ok; ++c)
                    if (!g(r, c).is_zero()) ok = false;
            if (!ok) mask &= ~(1u << i);
        }
    }
    if (coarsened) *coarsened = mask != start;
    return ParabolicShape(n, mask);
}

namespace {

class StageError : public std::runtime_error {
public:
    StageError(const std::string& stage, const std::string& what) : std::runtime_error(stage + ": " + what) {}
};

// Receives global steps in order; verifies, streams and accounts them.
struct Sink {
    int n;
    const FillOptions& opt;
    std::optional<Verifier> ver;
    std::optional<CertificateWriter> writer;
    std::vector<Step> kept;
    uint64_t cost = 0, moves = 0, macros = 0;

    Sink(int n_, const Word& initial, const FillOptions& o) : n(n_), opt(o) {
        if (opt.verify) ver.emplace(n, initial, opt.cm);
        if (opt.cert_out) writer.emplace(*opt.cert_out, n, initial, opt.cm);
    }

    void add(const Step& s) {
        if (ver && !ver->apply(s)) {
            VerifyResult r = ver->finish();
            throw StageError("verify", "step " + std::to_string(r.failed_step) + " rejected: " + r.reason);
        }
        if (writer) writer->add(s);
        if (opt.keep_certificate) kept.push_back(s);
        cost += step_cost(s, opt.cm);
        ++moves;
        if (s.kind == Step::Kind::Macro) ++macros;
    }

    // Rewrites u at pos into v through the null loop u v^-1; returns the cost spent.
    uint64_t replace(size_t pos, const Word& u, const Word& v, const ParabolicShape& P) {
        if (u == v) return 0;
        uint64_t before = cost;
        Certificate c = fill_triangle(concat(u, invert_word(v)), P, opt.cm, opt.edge.m);
        add(Step::free_insert(pos + u.size(), invert_word(v)));
        for (Step s : c.steps) {
            s.pos += pos;
            add(s);
        }
        return cost - before;
    }
};

struct RingLabels {
    int k = 0;
    std::vector<VertexLabel> labels;
};

RingLabels label_ring(const Loop& loop, const DiscTriangulation& tri, int k, const FillOptions& opt) {
    RingLabels r;
    r.k = k;
    const int size = tri.ring_size[k];
    r.labels.resize(size);
    auto work = [&](int lo, int hi) {
        for (int a = lo; a < hi; ++a) r.labels[a] = label_point(cone_factor(loop, tri, tri.vertex(k, a)), opt.t0);
    };
    int th = std::max(1, std::min(opt.threads, size / 64));
    if (th == 1) {
        work(0, size);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errs(th);
        for (int t = 0; t < th; ++t)
            pool.emplace_back([&, t] {
                try {
                    work(size * t / th, size * (t + 1) / th);
                } catch (...) {
                    errs[t] = std::current_exception();
                }
            });
        for (auto& p : pool) p.join();
        for (auto& e : errs)
            if (e) std::rethrow_exception(e);
    }
    if (!r.labels[0].gamma.is_identity()) throw StageError("label", "theta = 0 spoke is not labelled I");
    return r;
}

// Shapes and edge elements of annulus k (between rings k-1 and k).
struct Annulus {
    int k = 0;
    std::vector<ZipStep> zip;
    std::vector<ParabolicShape> shape, shape0;
    std::vector<GroupElement> front;  // front[s]: element of the frontier edge before step s; front[S] = front[0]
    std::vector<GroupElement> outer_ring, inner_ring;  // ring edge elements of rings k and k-1
    std::vector<int> outer_step;  // step index of the outer-type triangle on outer ring edge a
    std::vector<int> inner_step;  // step index of the inner-type triangle on inner ring edge b
};

Annulus build_annulus(const RingLabels& inner, const RingLabels& outer, EdgeStats& stats) {
    Annulus an;
    an.k = outer.k;
    const int B = static_cast<int>(inner.labels.size()), A = static_cast<int>(outer.labels.size());
    an.zip = zipper(B, A);
    const size_t S = an.zip.size();
    auto I = [&](int b) -> const VertexLabel& { return inner.labels[b % B]; };
    auto O = [&](int a) -> const VertexLabel& { return outer.labels[a % A]; };
    for (int a = 0; a < A; ++a) an.outer_ring.push_back(label_step(O(a), O(a + 1)));
    if (B > 1)
        for (int b = 0; b < B; ++b) an.inner_ring.push_back(label_step(I(b), I(b + 1)));
    an.outer_step.assign(A, -1);
    an.inner_step.assign(B, -1);
    an.front.push_back(label_step(I(0), O(0)));
    for (size_t s = 0; s < S; ++s) {
        const ZipStep& z = an.zip[s];
        GroupElement next = z.outer ? label_step(I(z.b), O(z.a + 1)) : label_step(I(z.b + 1), O(z.a));
        std::vector<GroupElement> edges{an.front[s], next, z.outer ? an.outer_ring[z.a] : an.inner_ring[z.b]};
        bool coarse = false;
        an.shape.push_back(triangle_shape(I(z.b), edges, &coarse));
        an.shape0.push_back(I(z.b).shape);
        if (coarse) ++stats.coarsened_triangles;
        if (z.outer) an.outer_step[z.a] = static_cast<int>(s);
        else an.inner_step[z.b] = static_cast<int>(s);
        an.front.push_back(std::move(next));
    }
    return an;
}

void record_edge(EdgeStats& st, const GroupElement& g, const ParabolicShape& P0, const ParabolicShape& P0p,
                 const ParabolicShape& Q, double radius, const FillOptions& opt) {
    ++st.interior;
    if (g.is_identity()) {
        ++st.member_at_t0;
        ++st.bounded;
        return;
    }
    if (P0.intersect(P0p).contains(g)) ++st.member_at_t0;
    auto [u, m] = parabolic_decompose(g, Q);
    Int mi = norm_inf(m);
    int64_t me = mi.is_small() ? mi.small() : INT64_MAX;
    st.max_m_entry = std::max(st.max_m_entry, me);
    double nl = std::log2(1.0 + norm_inf(u).to_double());
    st.max_n_log_per_radius = std::max(st.max_n_log_per_radius, nl / (1.0 + radius));
    if (me <= opt.c_rho && nl <= opt.c_n * (1.0 + radius)) ++st.bounded;
}

DiscTriangulation ring_geometry(size_t length) {
    // Only ring geometry is needed; triangles are generated per annulus.
    DiscTriangulation tri;
    tri.radius = std::max<double>(1.0, static_cast<double>(length));
    tri.rings = static_cast<int>(std::ceil(tri.radius - 1e-9));
    tri.ring_size.push_back(1);
    tri.ring_offset.push_back(0);
    for (int k = 1; k <= tri.rings; ++k) {
        tri.ring_offset.push_back(tri.ring_offset.back() + tri.ring_size.back());
        tri.ring_size.push_back(static_cast<int>(std::ceil(2.0 * std::numbers::pi * tri.ring_radius(k) - 1e-9)));
    }
    return tri;
}

void check_input(const Word& w, int n) {
    if (n < 5) throw std::invalid_argument("fill_word: n >= 5 required");
    if (!is_plain(w)) throw std::invalid_argument("fill_word: input must be a plain word");
    for (const auto& a : w)
        if ((a.kind == Letter::Kind::Diag && a.dn != n) || (a.kind == Letter::Kind::Elem && (a.i > n || a.j > n)))
            throw std::invalid_argument("fill_word: letter " + format_letter(a) + " outside dimension");
    if (!evaluate(w, n).is_identity()) throw std::invalid_argument("fill_word: word does not represent I");
}

}  // namespace

EdgeStats survey_edges(const Word& w, int n, const FillOptions& opt) {
    check_input(w, n);
    EdgeStats st;
    if (w.empty()) return st;
    Loop loop(w, n);
    DiscTriangulation tri = ring_geometry(w.size());
    RingLabels ring_in = label_ring(loop, tri, tri.rings - 1, opt);
    Annulus an_cur = build_annulus(ring_in, label_ring(loop, tri, tri.rings, opt), st);
    for (int k = tri.rings; k >= 1; --k) {
        std::optional<RingLabels> ring_in2;
        std::optional<Annulus> an_next;
        if (k >= 2) {
            ring_in2 = label_ring(loop, tri, k - 2, opt);
            an_next = build_annulus(*ring_in2, ring_in, st);
            for (size_t b = 0; b < an_cur.inner_ring.size(); ++b) {
                int s1 = an_cur.inner_step[b], s2 = an_next->outer_step[b];
                record_edge(st, an_cur.inner_ring[b], an_cur.shape0[s1], an_next->shape0[s2],
                            an_cur.shape[s1].intersect(an_next->shape[s2]), tri.ring_radius(k - 1), opt);
            }
        }
        for (size_t s = 1; s < an_cur.zip.size(); ++s)
            record_edge(st, an_cur.front[s], an_cur.shape0[s - 1], an_cur.shape0[s],
                        an_cur.shape[s - 1].intersect(an_cur.shape[s]), tri.ring_radius(k) - 0.5, opt);
        if (k >= 2) {
            ring_in = std::move(*ring_in2);
            an_cur = std::move(*an_next);
        }
    }
    return st;
}

FillingReport fill_word(const Word& w, int n, const FillOptions& opt) {
    auto t_start = std::chrono::steady_clock::now();
    check_input(w, n);

    FillingReport rep;
    rep.length = w.size();
    rep.n = n;
    Sink sink(n, w, opt);
    const uint64_t fallbacks0 = m_word_stats().fallback;

    auto finish = [&]() {
        rep.total_cost = sink.cost;
        rep.move_count = sink.moves;
        rep.macro_count = sink.macros;
        if (sink.ver) {
            VerifyResult r = sink.ver->finish();
            rep.verified = r.accepted;
            rep.verify_reason = r.reason;
        }
        if (sink.writer) sink.writer->finish(sink.cost);
        if (opt.keep_certificate) {
            Certificate c;
            c.n = n;
            c.initial = w;
            c.steps = std::move(sink.kept);
            c.cost_model = opt.cm;
            c.total_cost = sink.cost;
            rep.certificate = std::move(c);
        }
        rep.mword_fallbacks = m_word_stats().fallback - fallbacks0;
        rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t_start).count();
        return rep;
    };

    if (w.empty()) return finish();
    if (opt.free_reduce_shortcut && free_reduce(w).empty()) {
        Rewriter rw(n, w, opt.cm);
        size_t i = 0;
        while (!rw.word().empty()) {
            if (i + 1 < rw.word().size() && are_inverse(rw.word()[i], rw.word()[i + 1])) {
                sink.add(Step::free_delete(i, 2));
                rw.apply(Step::free_delete(i, 2));
                if (i > 0) --i;
            } else {
                ++i;
            }
        }
        return finish();
    }

    Loop loop(w, n);
    rep.loop_length = loop.length();
    DiscTriangulation tri = ring_geometry(w.size());
    const int R = tri.rings;
    const ParabolicShape G = ParabolicShape::whole(n);
    MWordOptions plain_m = opt.edge.m;
    plain_m.fallback = true;

    try {
        // Rings R, R-1, R-2 and annuli R, R-1 are live at any time.
        RingLabels ring_out = label_ring(loop, tri, R, opt);
        RingLabels ring_in = label_ring(loop, tri, R - 1, opt);
        Annulus an_cur = build_annulus(ring_in, ring_out, rep.edges);

        // Outer ring words: plain, inside the adjacent triangle's class.
        std::vector<Word> ring_words(ring_out.labels.size());
        {
            EdgeWordOptions eo = opt.edge;
            eo.all_plain = true;
            eo.m = plain_m;
            for (size_t a = 0; a < ring_words.size(); ++a) {
                const ParabolicShape& P = an_cur.shape[an_cur.outer_step[a]];
                ring_words[a] = edge_word(an_cur.outer_ring[a], P, P, eo);
            }
        }

        // Collar: w -> product of outer ring words, one quadrilateral per boundary arc.
        {
            const size_t A = ring_words.size();
            std::vector<size_t> anchor(A + 1);
            std::vector<Word> conn(A + 1);
            for (size_t a = 0; a < A; ++a) {
                double s = loop.length() * static_cast<double>(a) / static_cast<double>(A);
                anchor[a] = a == 0 ? 0 : loop.nearest_prefix(s);
                GroupElement c = multiply(invert(loop.prefix(anchor[a])), ring_out.labels[a].gamma);
                conn[a] = m_word(c, G, plain_m);
            }
            anchor[A] = w.size();
            for (size_t a = 1; a <= A; ++a) anchor[a] = std::max(anchor[a], anchor[a - 1]);
            size_t pos = 0;
            for (size_t a = 0; a < A; ++a) {
                Word X = invert_word(conn[a]);
                for (size_t t = anchor[a]; t < anchor[a + 1]; ++t) X.push_back(w[t]);
                Word Y = concat(ring_words[a], invert_word(conn[a + 1]));
                try {
                    rep.collar_cost += sink.replace(pos, X, Y, G);
                } catch (const StageError&) {
                    throw;
                } catch (const std::exception& e) {
                    throw StageError("collar", "quad " + std::to_string(a) + ", loop length " +
                                                   std::to_string(X.size() + Y.size()) + ": " + e.what());
                }
                pos += ring_words[a].size();
            }
        }

        std::vector<Word> outer_words = std::move(ring_words);
        for (int k = R; k >= 1; --k) {
            // an_cur = annulus k; build annulus k-1 to get words for ring k-1.
            std::optional<RingLabels> ring_in2;
            std::optional<Annulus> an_next;
            if (k >= 2) {
                ring_in2 = label_ring(loop, tri, k - 2, opt);
                an_next = build_annulus(*ring_in2, ring_in, rep.edges);
            }
            const double radius = tri.ring_radius(k);
            // Ring k-1 edge words (shared by annulus k inner triangles and annulus k-1 outer triangles).
            std::vector<Word> inner_words;
            if (k >= 2) {
                for (size_t b = 0; b < an_cur.inner_ring.size(); ++b) {
                    const ParabolicShape& P1 = an_cur.shape[an_cur.inner_step[b]];
                    const ParabolicShape& P2 = an_next->shape[an_next->outer_step[b]];
                    record_edge(rep.edges, an_cur.inner_ring[b], an_cur.shape0[an_cur.inner_step[b]],
                                an_next->shape0[an_next->outer_step[b]], P1.intersect(P2), tri.ring_radius(k - 1), opt);
                    inner_words.push_back(edge_word(an_cur.inner_ring[b], P1, P2, opt.edge));
                }
            }
            // Zipper over annulus k.
            const size_t S = an_cur.zip.size();
            std::vector<Word> front_words(S + 1);
            for (size_t s = 1; s < S; ++s) {
                const ParabolicShape& P1 = an_cur.shape[s - 1];
                const ParabolicShape& P2 = an_cur.shape[s];
                record_edge(rep.edges, an_cur.front[s], an_cur.shape0[s - 1], an_cur.shape0[s], P1.intersect(P2), radius - 0.5, opt);
                front_words[s] = edge_word(an_cur.front[s], P1, P2, opt.edge);
            }
            if (!an_cur.front[0].is_identity()) throw StageError("assemble", "theta = 0 spoke element is not I");
            size_t pos = 0;
            for (size_t s = 0; s < S; ++s) {
                const ZipStep& z = an_cur.zip[s];
                const Word& fw = front_words[s];
                const Word& nf = front_words[s + 1];
                uint64_t c;
                Word u = z.outer ? concat(fw, outer_words[z.a]) : fw;
                Word v = z.outer ? nf : concat(inner_words[z.b], nf);
                try {
                    c = sink.replace(pos, u, v, an_cur.shape[s]);
                } catch (const StageError&) {
                    throw;
                } catch (const std::exception& e) {
                    throw StageError("triangle", "annulus " + std::to_string(k) + " step " + std::to_string(s) + " in " +
                                                     an_cur.shape[s].str() + ", boundary " + format_word(concat(u, invert_word(v))) +
                                                     ": " + e.what());
                }
                if (!z.outer) pos += inner_words[z.b].size();
                ++rep.triangles;
                if (c > 0) {
                    ++rep.nontrivial_triangles;
                    rep.triangle_costs.push_back(c);
                }
            }
            outer_words = std::move(inner_words);
            if (k >= 2) {
                ring_out = std::move(ring_in);
                ring_in = std::move(*ring_in2);
                an_cur = std::move(*an_next);
            }
        }
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("fill: ") + e.what());
    }
    finish();
    if (opt.verify && !rep.verified) throw std::runtime_error("verify: " + rep.verify_reason);
    return rep;
}

nlohmann::json report_json(const FillingReport& r) {
    nlohmann::json j;
    j["length"] = r.length;
    j["n"] = r.n;
    j["triangles"] = r.triangles;
    j["nontrivial_triangles"] = r.nontrivial_triangles;
    j["collar_cost"] = r.collar_cost;
    j["total_cost"] = r.total_cost;
    j["move_count"] = r.move_count;
    j["macro_count"] = r.macro_count;
    j["loop_length"] = r.loop_length;
    j["verified"] = r.verified;
    if (!r.verify_reason.empty()) j["verify_reason"] = r.verify_reason;
    j["mword_fallbacks"] = r.mword_fallbacks;
    uint64_t mx = 0;
    for (auto c : r.triangle_costs) mx = std::max(mx, c);
    j["max_triangle_cost"] = mx;
    j["edges"] = {{"interior", r.edges.interior},
                  {"member_at_t0", r.edges.member_at_t0},
                  {"bounded", r.edges.bounded},
                  {"coarsened_triangles", r.edges.coarsened_triangles},
                  {"max_m_entry", r.edges.max_m_entry},
                  {"max_n_log_per_radius", r.edges.max_n_log_per_radius}};
    j["wall_ms"] = r.wall_ms;
    return j;
}

}  // namespace slz
