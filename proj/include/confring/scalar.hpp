#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace confring {

// Bad arguments, unsupported coefficient modes, parse failures.  The CLI
// maps this to exit code 2.
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A search or sweep ran out of its configured budget.  CLI exit code 3.
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Exact coefficient: arbitrary-precision rational (prime() == 0) or a
// residue mod a fixed prime.  Mixing modes in arithmetic is an error, not a
// silent coercion.
class Scalar {
  public:
    Scalar() : r_(0), p_(0) {}  // rational zero

    static Scalar zero(std::uint32_t p) { return from_int(0, p); }
    static Scalar one(std::uint32_t p) { return from_int(1, p); }
    static Scalar from_int(long v, std::uint32_t p = 0);
    static Scalar from_mpq(const mpq_class& q);
    // num/den over the rationals; den != 0.
    static Scalar fraction(long num, long den);

    std::uint32_t prime() const { return p_; }
    bool rational_mode() const { return p_ == 0; }
    bool is_zero() const;
    bool is_one() const;
    // True for rationals < 0; residues are never negative.
    bool is_negative() const;

    const mpq_class& rat() const;
    std::uint64_t residue() const { return r_; }

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    // Division by zero (including values that vanish mod p) is an error.
    Scalar operator/(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    Scalar inverse() const { return one(p_) / *this; }

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // "3", "-1/2", residues as canonical representative "4".
    std::string str() const;

  private:
    void check_same_mode(const Scalar& o) const;

    mpq_class q_;       // payload when p_ == 0
    std::uint64_t r_;   // payload when p_ != 0, always < p_
    std::uint32_t p_;   // 0 = rational mode, else the prime
};

// Residue arithmetic helpers (64-bit values, 128-bit intermediates).
std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p);  // throws on a == 0

}  // namespace confring
