#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>

#include <gmpxx.h>

namespace slz {

// Signed integer of unbounded size. Values that fit in int64 never allocate.
// Invariant: big_ is null iff the value fits in int64.
class Int {
public:
    Int() = default;
    Int(int v) : v_(v) {}
    Int(long v) : v_(v) {}
    Int(long long v) : v_(v) {}
    explicit Int(const mpz_class& z) { assign(z); }
    explicit Int(const std::string& decimal);

    Int(const Int& o) : v_(o.v_), big_(o.big_ ? std::make_unique<mpz_class>(*o.big_) : nullptr) {}
    Int(Int&&) noexcept = default;
    Int& operator=(const Int& o) {
        if (this != &o) {
            v_ = o.v_;
            big_ = o.big_ ? std::make_unique<mpz_class>(*o.big_) : nullptr;
        }
        return *this;
    }
    Int& operator=(Int&&) noexcept = default;

    bool is_small() const { return !big_; }
    int64_t small() const { return v_; }
    mpz_class to_mpz() const;
    std::string str() const;
    double to_double() const;
    int sign() const;
    bool is_zero() const { return !big_ && v_ == 0; }
    // Number of bits of |x|; 0 for zero.
    size_t bit_length() const;
    // log2(|x| + 2) in double precision.
    double log2_plus2() const;
    size_t hash() const;

    Int operator-() const;
    Int& operator+=(const Int& o);
    Int& operator-=(const Int& o);
    Int& operator*=(const Int& o);

    friend Int operator+(Int a, const Int& b) { return a += b; }
    friend Int operator-(Int a, const Int& b) { return a -= b; }
    friend Int operator*(Int a, const Int& b) { return a *= b; }

    friend bool operator==(const Int& a, const Int& b);
    friend std::strong_ordering operator<=>(const Int& a, const Int& b);

    // Rounds toward negative infinity.
    static Int floor_div(const Int& a, const Int& b);
    // Requires b | a.
    static Int divexact(const Int& a, const Int& b);
    static Int gcd(const Int& a, const Int& b);
    // g = gcd(a,b) = s*a + t*b.
    static void ext_gcd(const Int& a, const Int& b, Int& g, Int& s, Int& t);
    static Int isqrt(const Int& a);
    static Int pow2(unsigned k);
    static Int pow10(unsigned k);

private:
    void assign(const mpz_class& z);
    int64_t v_ = 0;
    std::unique_ptr<mpz_class> big_;
};

Int abs(const Int& a);
std::ostream& operator<<(std::ostream& os, const Int& a);

struct IntHash {
    size_t operator()(const Int& a) const { return a.hash(); }
};

}  // namespace slz
