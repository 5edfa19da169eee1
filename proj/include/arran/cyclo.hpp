#pragma once

#include <cstdint>
#include <vector>

#include "arran/rational.hpp"

namespace arran::exact {

unsigned euler_phi(unsigned n);
std::vector<unsigned> divisors(unsigned n);

// Coefficients of the N-th cyclotomic polynomial, little-endian, monic,
// length phi(N)+1. Cached.
const std::vector<Rational>& cyclotomic_polynomial(unsigned n);

// Element of Q(zeta_N) in the power basis 1, x, ..., x^(phi(N)-1) of
// Q[x]/Phi_N(x). Coefficient vector always has length phi(N).
class Cyclo {
public:
    Cyclo() : order_(1), c_(1, Rational(0)) {}
    explicit Cyclo(const Rational& r) : order_(1), c_(1, r) {}
    explicit Cyclo(long n) : order_(1), c_(1, Rational(n)) {}
    Cyclo(unsigned order, std::vector<Rational> coeffs); // validates length

    static Cyclo zero() { return Cyclo(); }
    static Cyclo one() { return Cyclo(Rational(1)); }
    // zeta_N^k as an element of Q(zeta_N)
    static Cyclo root_of_unity(unsigned n, long k);

    unsigned order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_one() const;
    // True when the value lies in Q (all power-basis coefficients above the
    // constant term vanish).
    bool is_rational() const;
    // Constant term; meaningful as the full value only when is_rational().
    const Rational& rational_part() const { return c_[0]; }

    // Re-expresses the value in Q(zeta_M); requires order() | M.
    Cyclo embedded(unsigned m) const;

    Cyclo operator-() const;
    Cyclo inverse() const; // throws non_invertible on zero
    Cyclo pow(long e) const;

    friend Cyclo operator+(const Cyclo& a, const Cyclo& b);
    friend Cyclo operator-(const Cyclo& a, const Cyclo& b);
    friend Cyclo operator*(const Cyclo& a, const Cyclo& b);
    friend Cyclo operator/(const Cyclo& a, const Cyclo& b);
    Cyclo& operator+=(const Cyclo& b) { return *this = *this + b; }
    Cyclo& operator-=(const Cyclo& b) { return *this = *this - b; }
    Cyclo& operator*=(const Cyclo& b) { return *this = *this * b; }

    // Equality across orders compares after embedding into Q(zeta_lcm).
    friend bool operator==(const Cyclo& a, const Cyclo& b);
    friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

private:
    unsigned order_;
    std::vector<Rational> c_;
};

// Brings both values into Q(zeta_lcm(orders)).
std::pair<Cyclo, Cyclo> promote(const Cyclo& a, const Cyclo& b);

// Deterministic total order used for canonical sorting: compares coefficient
// vectors lexicographically after embedding into a common field.
bool lex_less(const Cyclo& a, const Cyclo& b);

} // namespace arran::exact
