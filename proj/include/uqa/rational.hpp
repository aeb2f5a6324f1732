#pragma once

#include <gmpxx.h>
#include <ostream>
#include <stdexcept>
#include <string>

namespace uqa {

// Exact rational scalar. Always reduced, denominator > 0, zero is 0/1.
// Immutable in spirit: all operations return fresh values; safe to share
// across threads for reading.
class Rat {
public:
    Rat() : v_(0) {}
    Rat(long n) : v_(n) {}
    Rat(long num, long den) : v_(num, den) {
        if (den == 0) throw std::invalid_argument("Rat: zero denominator");
        v_.canonicalize();
    }
    explicit Rat(const mpq_class& v) : v_(v) { v_.canonicalize(); }

    // Accepts "p" or "p/q" with q > 0 after reduction.
    static Rat parse(const std::string& s) {
        mpq_class v;
        if (v.set_str(s, 10) != 0) throw std::invalid_argument("Rat: bad literal '" + s + "'");
        v.canonicalize();
        return Rat(v);
    }

    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }
    std::string str() const { return v_.get_str(); }
    const mpq_class& raw() const { return v_; }

    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.is_zero()) throw std::domain_error("Rat: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
    friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
    friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
    friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }
    friend Rat operator-(const Rat& a) { Rat r; r.v_ = -a.v_; return r; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.v_; }

private:
    mpq_class v_;
};

inline Rat inv(const Rat& a) { return Rat(1) / a; }

// n! as an exact scalar.
inline Rat factorial(int n) {
    Rat r(1);
    for (int k = 2; k <= n; ++k) r *= Rat(k);
    return r;
}

} // namespace uqa
