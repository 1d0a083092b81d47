#include "confring/scalar.hpp"

namespace confring {

std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t s = a + b;  // p fits in 32 bits, no overflow
    return s >= p ? s - p : s;
}

std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a >= b ? a - b : a + p - b;
}

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p) {
    if (a % p == 0)
        throw domain_error("division by zero mod " + std::to_string(p));
    // extended Euclid on (a, p)
    long long t = 0, newt = 1;
    long long r = static_cast<long long>(p), newr = static_cast<long long>(a % p);
    while (newr != 0) {
        long long q = r / newr;
        long long tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (t < 0) t += static_cast<long long>(p);
    return static_cast<std::uint64_t>(t);
}

Scalar Scalar::from_int(long v, std::uint32_t p) {
    Scalar s;
    s.p_ = p;
    if (p == 0) {
        s.q_ = v;
        s.r_ = 0;
    } else {
        long long m = v % static_cast<long long>(p);
        if (m < 0) m += p;
        s.r_ = static_cast<std::uint64_t>(m);
    }
    return s;
}

Scalar Scalar::from_mpq(const mpq_class& q) {
    Scalar s;
    s.p_ = 0;
    s.q_ = q;
    s.q_.canonicalize();
    s.r_ = 0;
    return s;
}

Scalar Scalar::fraction(long num, long den) {
    if (den == 0) throw domain_error("zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return from_mpq(q);
}

bool Scalar::is_zero() const {
    return p_ == 0 ? q_ == 0 : r_ == 0;
}

bool Scalar::is_one() const {
    return p_ == 0 ? q_ == 1 : r_ == 1 % p_;
}

bool Scalar::is_negative() const {
    return p_ == 0 && q_ < 0;
}

const mpq_class& Scalar::rat() const {
    if (p_ != 0) throw domain_error("residue scalar has no rational value");
    return q_;
}

void Scalar::check_same_mode(const Scalar& o) const {
    if (p_ != o.p_)
        throw domain_error("coefficient mode mismatch");
}

Scalar Scalar::operator-() const {
    Scalar s(*this);
    if (p_ == 0)
        s.q_ = -q_;
    else
        s.r_ = r_ == 0 ? 0 : p_ - r_;
    return s;
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same_mode(o);
    Scalar s(*this);
    if (p_ == 0)
        s.q_ = q_ + o.q_;
    else
        s.r_ = mod_add(r_, o.r_, p_);
    return s;
}

Scalar Scalar::operator-(const Scalar& o) const {
    check_same_mode(o);
    Scalar s(*this);
    if (p_ == 0)
        s.q_ = q_ - o.q_;
    else
        s.r_ = mod_sub(r_, o.r_, p_);
    return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
    check_same_mode(o);
    Scalar s(*this);
    if (p_ == 0)
        s.q_ = q_ * o.q_;
    else
        s.r_ = mod_mul(r_, o.r_, p_);
    return s;
}

Scalar Scalar::operator/(const Scalar& o) const {
    check_same_mode(o);
    if (o.is_zero()) throw domain_error("division by zero");
    Scalar s(*this);
    if (p_ == 0)
        s.q_ = q_ / o.q_;
    else
        s.r_ = mod_mul(r_, mod_inv(o.r_, p_), p_);
    return s;
}

bool Scalar::operator==(const Scalar& o) const {
    if (p_ != o.p_) return false;
    return p_ == 0 ? q_ == o.q_ : r_ == o.r_;
}

std::string Scalar::str() const {
    if (p_ == 0) return q_.get_str();
    return std::to_string(r_);
}

}  // namespace confring
