#include "slz/group_element.hpp"

#include <sstream>
#include <stdexcept>

namespace slz {

Int determinant(int n, const std::vector<Int>& entries) {
    std::vector<Int> m = entries;
    Int prev(1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k * n + k].is_zero()) {
            int p = k + 1;
            while (p < n && m[p * n + k].is_zero()) ++p;
            if (p == n) return Int(0);
            for (int c = 0; c < n; ++c) std::swap(m[k * n + c], m[p * n + c]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                Int v = m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j];
                m[i * n + j] = Int::divexact(v, prev);
            }
        }
        prev = m[k * n + k];
    }
    Int d = m[(n - 1) * n + (n - 1)];
    return sign < 0 ? -d : d;
}

GroupElement::GroupElement(const std::vector<IntVec>& rows) {
    n_ = static_cast<int>(rows.size());
    if (n_ < 1) throw std::invalid_argument("GroupElement: empty matrix");
    a_.reserve(n_ * n_);
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != n_) throw std::invalid_argument("GroupElement: not square");
        for (const auto& v : r) a_.push_back(v);
    }
    if (determinant(n_, a_) != Int(1)) throw std::invalid_argument("GroupElement: determinant != 1");
}

GroupElement GroupElement::identity(int n) {
    GroupElement g;
    g.n_ = n;
    g.a_.assign(n * n, Int(0));
    for (int i = 0; i < n; ++i) g.a_[i * n + i] = Int(1);
    return g;
}

GroupElement GroupElement::elementary(int n, int i, int j, const Int& x) {
    if (i < 1 || j < 1 || i > n || j > n || i == j)
        throw std::invalid_argument("elementary: bad index pair");
    GroupElement g = identity(n);
    g.a_[(i - 1) * n + (j - 1)] = x;
    return g;
}

GroupElement GroupElement::diagonal_signs(const std::vector<int>& signs) {
    int n = static_cast<int>(signs.size());
    int neg = 0;
    GroupElement g = identity(n);
    for (int i = 0; i < n; ++i) {
        if (signs[i] != 1 && signs[i] != -1) throw std::invalid_argument("diagonal_signs: entry not +-1");
        if (signs[i] < 0) {
            ++neg;
            g.a_[i * n + i] = Int(-1);
        }
    }
    if (neg % 2) throw std::invalid_argument("diagonal_signs: odd number of -1");
    return g;
}

GroupElement GroupElement::from_trusted(int n, std::vector<Int> entries) {
    GroupElement g;
    g.n_ = n;
    g.a_ = std::move(entries);
    return g;
}

bool GroupElement::is_identity() const {
    for (int r = 0; r < n_; ++r)
        for (int c = 0; c < n_; ++c) {
            const Int& v = a_[r * n_ + c];
            if (r == c ? !(v.is_small() && v.small() == 1) : !v.is_zero()) return false;
        }
    return true;
}

void GroupElement::right_mul_elementary(int i, int j, const Int& x) {
    for (int r = 0; r < n_; ++r) {
        const Int& src = a_[r * n_ + (i - 1)];
        if (!src.is_zero()) a_[r * n_ + (j - 1)] += x * src;
    }
}

void GroupElement::right_mul_diag(const std::vector<int>& signs) {
    for (int c = 0; c < n_; ++c)
        if (signs[c] < 0)
            for (int r = 0; r < n_; ++r) a_[r * n_ + c] = -a_[r * n_ + c];
}

std::string GroupElement::str() const {
    std::ostringstream os;
    os << "[";
    for (int r = 0; r < n_; ++r) {
        os << (r ? ",[" : "[");
        for (int c = 0; c < n_; ++c) os << (c ? "," : "") << a_[r * n_ + c];
        os << "]";
    }
    os << "]";
    return os.str();
}

size_t GroupElement::hash() const {
    size_t h = static_cast<size_t>(n_);
    for (const auto& v : a_) h ^= v.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

GroupElement multiply(const GroupElement& a, const GroupElement& b) {
    if (a.n() != b.n()) throw std::invalid_argument("multiply: dimension mismatch");
    const int n = a.n();
    std::vector<Int> out(n * n);
    for (int r = 0; r < n; ++r)
        for (int k = 0; k < n; ++k) {
            const Int& x = a(r, k);
            if (x.is_zero()) continue;
            for (int c = 0; c < n; ++c) {
                const Int& y = b(k, c);
                if (!y.is_zero()) out[r * n + c] += x * y;
            }
        }
    return GroupElement::from_trusted(n, std::move(out));
}

GroupElement invert(const GroupElement& a) {
    const int n = a.n();
    std::vector<IntVec> rows(n, IntVec(2 * n));
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) rows[r][c] = a(r, c);
        rows[r][n + r] = Int(1);
    }
    // A unimodular matrix has Hermite form I, so the right half becomes the inverse.
    detail::hermite_rows(rows, n);
    std::vector<Int> out(n * n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out[r * n + c] = rows[r][n + c];
    return GroupElement::from_trusted(n, std::move(out));
}

Int norm2sq(const GroupElement& a) {
    Int s(0);
    for (const auto& v : a.entries()) s += v * v;
    return s;
}

Int norm_inf(const GroupElement& a) {
    Int m(0);
    for (const auto& v : a.entries()) {
        Int x = abs(v);
        if (x > m) m = x;
    }
    return m;
}

}  // namespace slz
