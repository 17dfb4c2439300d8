#include "slz/parabolic.hpp"

#include <sstream>
#include <stdexcept>

namespace slz {

ParabolicShape::ParabolicShape(int n, uint32_t boundaries) : n_(n), mask_(boundaries & ((1u << n) - 2u)) {
    if (n < 1 || n > 31) throw std::invalid_argument("ParabolicShape: bad dimension");
    block_.resize(n);
    int b = 0;
    for (int i = 1; i <= n; ++i) {
        block_[i - 1] = b;
        if (mask_ & (1u << i)) ++b;
    }
}

ParabolicShape ParabolicShape::from_composition(const std::vector<int>& dims) {
    int n = 0;
    uint32_t mask = 0;
    for (size_t t = 0; t < dims.size(); ++t) {
        if (dims[t] < 1) throw std::invalid_argument("composition parts must be positive");
        n += dims[t];
        if (t + 1 < dims.size()) mask |= (1u << n);
    }
    return ParabolicShape(n, mask);
}

ParabolicShape ParabolicShape::borel(int n) { return ParabolicShape(n, (1u << n) - 2u); }

std::vector<int> ParabolicShape::composition() const {
    std::vector<int> d;
    int run = 0;
    for (int i = 1; i <= n_; ++i) {
        ++run;
        if (i == n_ || (mask_ & (1u << i))) {
            d.push_back(run);
            run = 0;
        }
    }
    return d;
}

std::vector<std::pair<int, int>> ParabolicShape::chi_N() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 1; i <= n_; ++i)
        for (int j = 1; j <= n_; ++j)
            if (in_N(i, j)) out.emplace_back(i, j);
    return out;
}

std::vector<std::pair<int, int>> ParabolicShape::chi_M() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 1; i <= n_; ++i)
        for (int j = 1; j <= n_; ++j)
            if (in_M(i, j)) out.emplace_back(i, j);
    return out;
}

std::vector<std::pair<int, int>> ParabolicShape::chi_N_block(int q) const {
    std::vector<std::pair<int, int>> out;
    for (int i = 1; i <= n_; ++i)
        if (block_of(i) == q)
            for (int j = 1; j <= n_; ++j)
                if (in_N(i, j)) out.emplace_back(i, j);
    return out;
}

bool ParabolicShape::contains(const GroupElement& g) const {
    for (int r = 0; r < n_; ++r)
        for (int c = 0; c < n_; ++c)
            if (block_[r] > block_[c] && !g(r, c).is_zero()) return false;
    return true;
}

bool ParabolicShape::contains_N(const GroupElement& g) const {
    for (int r = 0; r < n_; ++r)
        for (int c = 0; c < n_; ++c) {
            if (block_[r] < block_[c]) continue;
            const Int& v = g(r, c);
            if (r == c ? !(v.is_small() && v.small() == 1) : !v.is_zero()) return false;
        }
    return true;
}

bool ParabolicShape::contains_M(const GroupElement& g) const {
    for (int r = 0; r < n_; ++r)
        for (int c = 0; c < n_; ++c)
            if (block_[r] != block_[c] && !g(r, c).is_zero()) return false;
    return true;
}

ParabolicShape ParabolicShape::finest_containing(const GroupElement& g) {
    const int n = g.n();
    uint32_t mask = 0;
    for (int i = 1; i < n; ++i) {
        bool ok = true;
        for (int r = i; r < n && ok; ++r)
            for (int c = 0; c < i && ok; ++c)
                if (!g(r, c).is_zero()) ok = false;
        if (ok) mask |= (1u << i);
    }
    return ParabolicShape(n, mask);
}

std::string ParabolicShape::str() const {
    std::ostringstream os;
    os << "U(";
    auto d = composition();
    for (size_t t = 0; t < d.size(); ++t) os << (t ? "," : "") << d[t];
    os << ")";
    return os.str();
}

}  // namespace slz
