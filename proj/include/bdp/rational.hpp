#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

namespace bdp {

// Exact rational number. All lengths, budgets, offsets and costs in the
// library are Rationals; no floating point touches any decision.
//
// Invariants: always in lowest terms with a positive denominator (GMP
// canonical form). The integer parts are arbitrary precision, so arithmetic
// never overflows; chains of adds/multiplies only grow digit counts.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}                     // NOLINT: implicit by design
    Rational(long n, long d);                       // throws on d == 0
    explicit Rational(const mpq_class& q) : v_(q) {}

    // Parses "num", "-num" or "num/den" (den > 0 after canonicalization).
    // Throws Error(ParseError) on malformed input or a zero denominator.
    static Rational parse(const std::string& text);

    // Lowest-terms decimal form: "n" when the denominator is 1, else "n/d".
    std::string str() const;

    const mpq_class& raw() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_negative() const { return sgn(v_) < 0; }
    bool is_integer() const { return v_.get_den() == 1; }

    int sign() const { return sgn(v_); }
    Rational abs() const { return Rational(mpq_class(::abs(v_))); }

    // <0, 0, >0 as *this compares to o; one mpq comparison for call sites
    // that need a three-way answer.
    int compare(const Rational& o) const { return mpq_cmp(v_.get_mpq_t(), o.v_.get_mpq_t()); }

    // Largest integer <= value. Throws if it does not fit a long
    // (never the case for the magnitudes this library produces).
    long floor_long() const;

    double approx() const { return v_.get_d(); } // diagnostics only

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
    friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
    friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
    friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t()) == 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t()) < 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

private:
    mpq_class v_;
};

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Rational& r);

} // namespace bdp
