#include "slz/integer.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <stdexcept>

namespace slz {

namespace {

mpz_class mpz_of(int64_t v) {
    mpz_class z;
    mpz_set_si(z.get_mpz_t(), static_cast<long>(v));
    return z;
}

}  // namespace

Int::Int(const std::string& decimal) {
    mpz_class z;
    if (decimal.empty() || z.set_str(decimal, 10) != 0)
        throw std::invalid_argument("bad integer literal: " + decimal);
    assign(z);
}

void Int::assign(const mpz_class& z) {
    if (mpz_fits_slong_p(z.get_mpz_t())) {
        v_ = mpz_get_si(z.get_mpz_t());
        big_.reset();
    } else {
        v_ = 0;
        big_ = std::make_unique<mpz_class>(z);
    }
}

mpz_class Int::to_mpz() const { return big_ ? *big_ : mpz_of(v_); }

std::string Int::str() const { return big_ ? big_->get_str(10) : std::to_string(v_); }

double Int::to_double() const { return big_ ? big_->get_d() : static_cast<double>(v_); }

int Int::sign() const {
    if (big_) return sgn(*big_);
    return (v_ > 0) - (v_ < 0);
}

size_t Int::bit_length() const {
    if (big_) return mpz_sizeinbase(big_->get_mpz_t(), 2);
    if (v_ == 0) return 0;
    uint64_t u = v_ < 0 ? uint64_t(0) - uint64_t(v_) : uint64_t(v_);
    return 64 - __builtin_clzll(u);
}

double Int::log2_plus2() const {
    if (!big_) return std::log2(std::fabs(static_cast<double>(v_)) + 2.0);
    long exp = 0;
    double m = mpz_get_d_2exp(&exp, big_->get_mpz_t());
    return std::log2(std::fabs(m)) + static_cast<double>(exp);
}

size_t Int::hash() const {
    if (!big_) return std::hash<int64_t>{}(v_);
    return std::hash<std::string>{}(big_->get_str(16));
}

Int Int::operator-() const {
    if (!big_ && v_ != INT64_MIN) return Int(static_cast<long long>(-v_));
    return Int(mpz_class(-to_mpz()));
}

Int& Int::operator+=(const Int& o) {
    int64_t r;
    if (!big_ && !o.big_ && !__builtin_add_overflow(v_, o.v_, &r)) {
        v_ = r;
        return *this;
    }
    assign(to_mpz() + o.to_mpz());
    return *this;
}

Int& Int::operator-=(const Int& o) {
    int64_t r;
    if (!big_ && !o.big_ && !__builtin_sub_overflow(v_, o.v_, &r)) {
        v_ = r;
        return *this;
    }
    assign(to_mpz() - o.to_mpz());
    return *this;
}

Int& Int::operator*=(const Int& o) {
    int64_t r;
    if (!big_ && !o.big_ && !__builtin_mul_overflow(v_, o.v_, &r)) {
        v_ = r;
        return *this;
    }
    assign(to_mpz() * o.to_mpz());
    return *this;
}

bool operator==(const Int& a, const Int& b) {
    if (!a.big_ && !b.big_) return a.v_ == b.v_;
    if (!a.big_ || !b.big_) return false;
    return *a.big_ == *b.big_;
}

std::strong_ordering operator<=>(const Int& a, const Int& b) {
    if (!a.big_ && !b.big_) return a.v_ <=> b.v_;
    int c = cmp(a.to_mpz(), b.to_mpz());
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Int Int::floor_div(const Int& a, const Int& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    if (!a.big_ && !b.big_ && !(a.v_ == INT64_MIN && b.v_ == -1)) {
        int64_t q = a.v_ / b.v_;
        if ((a.v_ % b.v_ != 0) && ((a.v_ < 0) != (b.v_ < 0))) --q;
        return Int(static_cast<long long>(q));
    }
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
    return Int(q);
}

Int Int::divexact(const Int& a, const Int& b) {
    if (!a.big_ && !b.big_ && !(a.v_ == INT64_MIN && b.v_ == -1))
        return Int(static_cast<long long>(a.v_ / b.v_));
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
    return Int(q);
}

Int Int::gcd(const Int& a, const Int& b) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.to_mpz().get_mpz_t(), b.to_mpz().get_mpz_t());
    return Int(g);
}

void Int::ext_gcd(const Int& a, const Int& b, Int& g, Int& s, Int& t) {
    mpz_class gg, ss, tt;
    mpz_gcdext(gg.get_mpz_t(), ss.get_mpz_t(), tt.get_mpz_t(), a.to_mpz().get_mpz_t(),
               b.to_mpz().get_mpz_t());
    g = Int(gg);
    s = Int(ss);
    t = Int(tt);
}

Int Int::isqrt(const Int& a) {
    if (a.sign() < 0) throw std::domain_error("isqrt of negative");
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), a.to_mpz().get_mpz_t());
    return Int(r);
}

Int Int::pow2(unsigned k) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
    return Int(r);
}

Int Int::pow10(unsigned k) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, k);
    return Int(r);
}

Int abs(const Int& a) { return a.sign() < 0 ? -a : a; }

std::ostream& operator<<(std::ostream& os, const Int& a) { return os << a.str(); }

}  // namespace slz
