#include "slz/reduction.hpp"

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>

namespace slz {

namespace {

// Entries of a small matrix packed as int8; dimensions up to 7.
constexpr int kMaxN = 7;
using Key = std::array<int8_t, kMaxN * kMaxN>;

struct KeyHash {
    size_t operator()(const Key& k) const {
        uint64_t h = 1469598103934665603ULL;
        for (int8_t b : k) h = (h ^ static_cast<uint8_t>(b)) * 1099511628211ULL;
        return h;
    }
};

std::optional<Key> key_of(const GroupElement& g) {
    if (g.n() > kMaxN) return std::nullopt;
    Key k{};
    for (size_t t = 0; t < g.entries().size(); ++t) {
        const Int& v = g.entries()[t];
        if (!v.is_small() || v.small() < -127 || v.small() > 127) return std::nullopt;
        k[t] = static_cast<int8_t>(v.small());
    }
    return k;
}

// a * b on packed keys; false when an entry leaves the int8 range.
bool key_mul(const Key& a, const Key& b, int n, Key& out) {
    out.fill(0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int s = 0;
            for (int t = 0; t < n; ++t) s += a[i * n + t] * b[t * n + j];
            if (s < -127 || s > 127) return false;
            out[i * n + j] = static_cast<int8_t>(s);
        }
    return true;
}

std::vector<Letter> generators(const ParabolicShape& P) {
    std::vector<Letter> gens;
    for (auto [i, j] : P.chi_M()) {
        gens.push_back(Letter::elem(i, j, 1));
        gens.push_back(Letter::elem(i, j, -1));
    }
    const int n = P.n();
    for (uint32_t mask = 1; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) % 2) continue;
        std::vector<int> s(n, 1);
        for (int t = 0; t < n; ++t)
            if ((mask >> t) & 1) s[t] = -1;
        gens.push_back(Letter::diag(s));
    }
    return gens;
}

Key letter_key(const Letter& a, int n) { return *key_of(evaluate(Word{a}, n)); }

// Shortest words for every element within kBall letters of I, built breadth first.
struct Ball {
    static constexpr int kBall = 3;
    int n;
    std::vector<Letter> gens;
    std::vector<Key> gen_inv;  // matrices of inverse generators
    std::unordered_map<Key, Word, KeyHash> words;
    std::vector<std::pair<Key, const Word*>> rim;  // inverse matrices of the elements at distance kBall

    explicit Ball(const ParabolicShape& P) : n(P.n()), gens(generators(P)) {
        for (const auto& s : gens) gen_inv.push_back(letter_key(s.inverse(), n));
        std::vector<Key> gen_key;
        for (const auto& s : gens) gen_key.push_back(letter_key(s, n));
        Key id = *key_of(GroupElement::identity(n));
        std::vector<std::pair<Key, Word>> frontier{{id, {}}};
        words.emplace(id, Word{});
        for (int r = 0; r < kBall; ++r) {
            std::vector<std::pair<Key, Word>> next;
            for (const auto& [g, w] : frontier)
                for (size_t a = 0; a < gens.size(); ++a) {
                    Key h;
                    if (!key_mul(g, gen_key[a], n, h) || words.count(h)) continue;
                    Word v = w;
                    v.push_back(gens[a]);
                    words.emplace(h, v);
                    next.emplace_back(h, std::move(v));
                }
            frontier = std::move(next);
        }
        for (const auto& [k, w] : words)
            if (static_cast<int>(w.size()) == kBall) rim.emplace_back(*key_of(evaluate(invert_word(w), n)), &w);
    }

    const Word* find(const Key& k) const {
        auto it = words.find(k);
        return it == words.end() ? nullptr : &it->second;
    }
};

struct Tables {
    std::mutex mu;
    std::map<std::pair<int, uint32_t>, std::unique_ptr<Ball>> balls;
    std::unordered_map<Key, Word, KeyHash> memo[1u << kMaxN];
    std::unordered_map<Key, int, KeyHash> failed[1u << kMaxN];  // largest radius searched without success
    std::unordered_map<Key, Word, KeyHash> built[1u << kMaxN];  // constructive words
    MWordStats stats;
};

Tables& tables() {
    static Tables t;
    return t;
}

const Ball& ball_for(const ParabolicShape& P) {
    Tables& t = tables();
    auto& slot = t.balls[{P.n(), P.boundaries()}];
    if (!slot) slot = std::make_unique<Ball>(P);
    return *slot;
}

// Bidirectional search: w = u v with u in the ball and |v| <= radius - kBall.
std::optional<Word> search(const Key& m, const Ball& ball, int radius) {
    if (const Word* w = ball.find(m)) return *w;
    const size_t G = ball.gens.size();
    const int n = ball.n;
    Key h1, h;
    if (radius >= Ball::kBall + 1)
        for (size_t a = 0; a < G; ++a) {
            if (!key_mul(m, ball.gen_inv[a], n, h)) continue;
            if (const Word* w = ball.find(h)) {
                Word out = *w;
                out.push_back(ball.gens[a]);
                return out;
            }
        }
    if (radius >= Ball::kBall + 2)
        for (size_t a = 0; a < G; ++a) {
            if (!key_mul(m, ball.gen_inv[a], n, h1)) continue;
            for (size_t b = 0; b < G; ++b) {
                if (!key_mul(h1, ball.gen_inv[b], n, h)) continue;
                if (const Word* w = ball.find(h)) {
                    Word out = *w;
                    out.push_back(ball.gens[b]);
                    out.push_back(ball.gens[a]);
                    return out;
                }
            }
        }
    if (radius >= 2 * Ball::kBall) {
        // m = u v with both in the ball: v^-1 ranges over the rim.
        for (const auto& [vinv, v] : ball.rim) {
            if (!key_mul(m, vinv, n, h)) continue;
            if (const Word* u = ball.find(h))
                if (u->size() == static_cast<size_t>(Ball::kBall)) return concat(*u, *v);
        }
    }
    return std::nullopt;
}

// Column Euclid inside each block, then a diagonal sign letter.
Word constructive(const GroupElement& m0, const ParabolicShape& P) {
    const int n = m0.n();
    GroupElement m = m0;
    std::vector<std::tuple<int, int, Int>> ops;  // right multiplication by e_kl(q)
    auto colop = [&](int k, int l, const Int& q) {  // column l += q column k (0-based)
        if (q.is_zero()) return;
        m.right_mul_elementary(k + 1, l + 1, q);
        ops.emplace_back(k + 1, l + 1, q);
    };
    auto tq = [](const Int& a, const Int& b) {
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
        return Int(q);
    };
    std::vector<int> comp = P.composition();
    int s = 0;
    for (int d : comp) {
        int e = s + d;
        for (int i = s; i < e - 1; ++i)
            for (int j = i + 1; j < e; ++j)
                while (!m(i, j).is_zero()) {
                    if (m(i, i).is_zero()) {
                        colop(j, i, Int(1));
                        continue;
                    }
                    colop(i, j, -tq(m(i, j), m(i, i)));
                    if (!m(i, j).is_zero()) colop(j, i, -tq(m(i, i), m(i, j)));
                }
        for (int j = s; j < e; ++j)
            for (int r = j + 1; r < e; ++r)
                if (!m(r, j).is_zero()) colop(r, j, -(m(r, j) * m(r, r)));
        s = e;
    }
    Word w;
    std::vector<int> signs(n, 1);
    bool neg = false;
    for (int i = 0; i < n; ++i)
        if (m(i, i).sign() < 0) signs[i] = -1, neg = true;
    if (neg) w.push_back(Letter::diag(signs));
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        auto& [k, l, q] = *it;
        if (!abs(q).is_small() || abs(q).small() > 1000000) throw std::runtime_error("m_word: fallback too long");
        int sg = q.sign() < 0 ? 1 : -1;  // inverse of e_kl(q)
        for (int64_t t = 0; t < abs(q).small(); ++t) w.push_back(Letter::elem(k, l, sg));
    }
    return w;
}

}  // namespace

Word m_word(const GroupElement& m, const ParabolicShape& P, const MWordOptions& opt) {
    if (m.n() != P.n()) throw std::invalid_argument("m_word: dimension mismatch");
    if (!P.contains_M(m)) throw std::invalid_argument("m_word: element is not in M_P for " + P.str());
    if (m.is_identity()) return {};
    Tables& t = tables();
    auto k = key_of(m);
    bool small = k && norm_inf(m) <= Int(opt.max_entry);
    std::unique_lock lock(t.mu);
    if (small) {
        auto& memo = t.memo[P.boundaries()];
        auto& failed = t.failed[P.boundaries()];
        auto it = memo.find(*k);
        if (it != memo.end() && static_cast<int>(it->second.size()) <= opt.radius) return it->second;
        auto f = failed.find(*k);
        if (f == failed.end() || f->second < opt.radius) {
            const Ball& ball = ball_for(P);
            if (auto w = search(*k, ball, opt.radius)) {
                ++t.stats.searched;
                memo[*k] = *w;
                return *w;
            }
            failed[*k] = opt.radius;
        }
    }
    if (!opt.fallback)
        throw std::runtime_error("m_word: no word within radius " + std::to_string(opt.radius) + " for " + m.str());
    ++t.stats.fallback;
    if (small) {
        auto& built = t.built[P.boundaries()];
        auto it = built.find(*k);
        if (it == built.end()) it = built.emplace(*k, constructive(m, P)).first;
        return it->second;
    }
    lock.unlock();
    return constructive(m, P);
}

MWordStats m_word_stats() {
    Tables& t = tables();
    std::lock_guard lock(t.mu);
    return t.stats;
}

Word edge_word(const GroupElement& g, const ParabolicShape& P, const ParabolicShape& Pp, const EdgeWordOptions& opt) {
    if (g.is_identity()) return {};
    ParabolicShape Q = P.intersect(Pp);
    auto [u, m] = parabolic_decompose(g, Q);
    std::vector<std::pair<int, int>> order = Q.chi_N();
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return Q.block_of(a.first) > Q.block_of(b.first); });
    Word w;
    for (auto [i, j] : order) {
        const Int& x = u(i - 1, j - 1);
        if (x.is_zero()) continue;
        bool in_m = P.in_M(i, j) || Pp.in_M(i, j);
        if (opt.all_plain || (in_m && abs(x) <= Int(opt.plain_max))) {
            if (!x.is_small() || std::abs(x.small()) > 1000000) throw std::runtime_error("edge_word: plain power too long");
            for (int64_t t = 0; t < abs(x).small(); ++t) w.push_back(Letter::elem(i, j, x.sign()));
        } else {
            w.push_back(Letter::shortcut(i, j, x));
        }
    }
    Word w2 = m_word(m, Q, opt.m);
    w.insert(w.end(), w2.begin(), w2.end());
    return w;
}

}  // namespace slz
