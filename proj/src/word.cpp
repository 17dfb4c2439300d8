#include "slz/word.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace slz {

Letter Letter::elem(int i, int j, int sign) {
    if (i < 1 || j < 1 || i == j || i > 32 || j > 32) throw std::invalid_argument("elem: bad index pair");
    if (sign != 1 && sign != -1) throw std::invalid_argument("elem: sign must be +-1");
    Letter a;
    a.kind = Kind::Elem;
    a.i = static_cast<int8_t>(i);
    a.j = static_cast<int8_t>(j);
    a.sign = static_cast<int8_t>(sign);
    return a;
}

Letter Letter::diag(const std::vector<int>& signs) {
    if (signs.empty() || signs.size() > 32) throw std::invalid_argument("diag: bad dimension");
    Letter a;
    a.kind = Kind::Diag;
    a.dn = static_cast<int8_t>(signs.size());
    int neg = 0;
    for (size_t k = 0; k < signs.size(); ++k) {
        if (signs[k] == -1) {
            a.dmask |= (1u << k);
            ++neg;
        } else if (signs[k] != 1) {
            throw std::invalid_argument("diag: entries must be +-1");
        }
    }
    if (neg % 2) throw std::invalid_argument("diag: odd number of -1 entries");
    return a;
}

Letter Letter::shortcut(int i, int j, const Int& x) {
    if (i < 1 || j < 1 || i == j || i > 32 || j > 32) throw std::invalid_argument("shortcut: bad index pair");
    Letter a;
    a.kind = Kind::Short;
    a.i = static_cast<int8_t>(i);
    a.j = static_cast<int8_t>(j);
    a.x = x;
    return a;
}

std::vector<int> Letter::diag_signs() const {
    std::vector<int> s(dn, 1);
    for (int k = 0; k < dn; ++k)
        if (dmask & (1u << k)) s[k] = -1;
    return s;
}

Letter Letter::inverse() const {
    Letter b = *this;
    if (kind == Kind::Elem) b.sign = static_cast<int8_t>(-sign);
    else if (kind == Kind::Short) b.x = -x;
    return b;
}

bool operator==(const Letter& a, const Letter& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case Letter::Kind::Elem: return a.i == b.i && a.j == b.j && a.sign == b.sign;
    case Letter::Kind::Diag: return a.dn == b.dn && a.dmask == b.dmask;
    case Letter::Kind::Short: return a.i == b.i && a.j == b.j && a.x == b.x;
    }
    return false;
}

bool is_plain(const Word& w) {
    for (const auto& a : w)
        if (!a.is_plain()) return false;
    return true;
}

bool are_inverse(const Letter& a, const Letter& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
    case Letter::Kind::Elem: return a.i == b.i && a.j == b.j && a.sign == -b.sign;
    // Diag letters are involutions.
    case Letter::Kind::Diag: return a.dn == b.dn && a.dmask == b.dmask;
    case Letter::Kind::Short: return a.i == b.i && a.j == b.j && a.x == -b.x;
    }
    return false;
}

void evaluate_into(GroupElement& g, const Word& w, size_t begin, size_t end) {
    const int n = g.n();
    for (size_t k = begin; k < end; ++k) {
        const Letter& a = w[k];
        switch (a.kind) {
        case Letter::Kind::Elem:
            if (a.i > n || a.j > n) throw std::invalid_argument("evaluate: index exceeds dimension");
            g.right_mul_elementary(a.i, a.j, Int(a.sign));
            break;
        case Letter::Kind::Diag:
            if (a.dn != n) throw std::invalid_argument("evaluate: diag dimension mismatch");
            g.right_mul_diag(a.diag_signs());
            break;
        case Letter::Kind::Short:
            if (a.i > n || a.j > n) throw std::invalid_argument("evaluate: index exceeds dimension");
            g.right_mul_elementary(a.i, a.j, a.x);
            break;
        }
    }
}

GroupElement evaluate(const Word& w, int n) {
    GroupElement g = GroupElement::identity(n);
    evaluate_into(g, w, 0, w.size());
    return g;
}

Word free_reduce(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (const auto& a : w) {
        if (!out.empty() && are_inverse(out.back(), a)) out.pop_back();
        else out.push_back(a);
    }
    return out;
}

Word invert_word(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
    return out;
}

Word concat(const Word& u, const Word& v) {
    Word out = u;
    out.insert(out.end(), v.begin(), v.end());
    return out;
}

Word slice(const Word& w, size_t begin, size_t len) {
    return Word(w.begin() + begin, w.begin() + begin + len);
}

std::string format_letter(const Letter& a) {
    std::string s;
    switch (a.kind) {
    case Letter::Kind::Elem:
        s = "e" + std::to_string(a.i) + "," + std::to_string(a.j);
        if (a.sign < 0) s += "^-1";
        break;
    case Letter::Kind::Diag:
        s = "d[";
        for (int k = 0; k < a.dn; ++k) {
            if (k) s += ",";
            s += (a.dmask & (1u << k)) ? "-1" : "1";
        }
        s += "]";
        break;
    case Letter::Kind::Short:
        s = "E" + std::to_string(a.i) + "," + std::to_string(a.j) + "[" + a.x.str() + "]";
        break;
    }
    return s;
}

std::string format_word(const Word& w) {
    std::string s;
    for (size_t k = 0; k < w.size(); ++k) {
        if (k) s += ' ';
        s += format_letter(w[k]);
    }
    return s;
}

namespace {

int parse_index(const std::string& t, size_t& p) {
    size_t start = p;
    while (p < t.size() && std::isdigit(static_cast<unsigned char>(t[p]))) ++p;
    if (p == start || p - start > 2) throw std::invalid_argument("bad index in token: " + t);
    return std::stoi(t.substr(start, p - start));
}

void expect(const std::string& t, size_t& p, char c) {
    if (p >= t.size() || t[p] != c) throw std::invalid_argument("malformed token: " + t);
    ++p;
}

}  // namespace

Letter parse_letter(const std::string& t) {
    if (t.empty()) throw std::invalid_argument("empty token");
    size_t p = 1;
    if (t[0] == 'e' || t[0] == 'E') {
        int i = parse_index(t, p);
        expect(t, p, ',');
        int j = parse_index(t, p);
        if (t[0] == 'e') {
            if (p == t.size()) return Letter::elem(i, j, 1);
            if (t.compare(p, std::string::npos, "^-1") == 0) return Letter::elem(i, j, -1);
            throw std::invalid_argument("malformed token: " + t);
        }
        expect(t, p, '[');
        size_t close = t.find(']', p);
        if (close == std::string::npos || close + 1 != t.size()) throw std::invalid_argument("malformed token: " + t);
        return Letter::shortcut(i, j, Int(t.substr(p, close - p)));
    }
    if (t[0] == 'd') {
        expect(t, p, '[');
        if (t.back() != ']') throw std::invalid_argument("malformed token: " + t);
        std::vector<int> signs;
        std::stringstream ss(t.substr(p, t.size() - 1 - p));
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item == "1" || item == "+1") signs.push_back(1);
            else if (item == "-1") signs.push_back(-1);
            else throw std::invalid_argument("malformed diag entry in: " + t);
        }
        return Letter::diag(signs);
    }
    throw std::invalid_argument("unknown token: " + t);
}

Word parse_word(const std::string& line) {
    Word w;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) w.push_back(parse_letter(tok));
    return w;
}

void GapWord::move_gap(size_t pos) {
    while (gs_ > pos) buf_[--ge_] = std::move(buf_[--gs_]);
    while (gs_ < pos) buf_[gs_++] = std::move(buf_[ge_++]);
}

void GapWord::reserve_gap(size_t need) {
    if (ge_ - gs_ >= need) return;
    size_t tail = buf_.size() - ge_;
    size_t grow = std::max(need, buf_.size() + 16);
    Word nb;
    nb.reserve(buf_.size() + grow);
    for (size_t t = 0; t < gs_; ++t) nb.push_back(std::move(buf_[t]));
    size_t ngs = nb.size();
    nb.resize(ngs + (ge_ - gs_) + grow);
    size_t nge = nb.size();
    nb.resize(nge + tail);
    for (size_t t = 0; t < tail; ++t) nb[nge + t] = std::move(buf_[ge_ + t]);
    buf_ = std::move(nb);
    gs_ = ngs;
    ge_ = nge;
}

void GapWord::replace(size_t pos, size_t len, const Word& by) {
    if (pos + len > size()) throw std::out_of_range("GapWord::replace");
    move_gap(pos);
    ge_ += len;
    reserve_gap(by.size());
    for (const auto& a : by) buf_[gs_++] = a;
}

Word GapWord::to_word() const {
    Word w;
    w.reserve(size());
    for (size_t t = 0; t < size(); ++t) w.push_back((*this)[t]);
    return w;
}

}  // namespace slz
