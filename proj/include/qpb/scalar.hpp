#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

#include "qpb/errors.hpp"

namespace qpb {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Dense integer polynomial in the internal variable r, with q = r^2.
/// Odd powers of r carry the half powers q^(1/2), q^(3/2), ... needed by the
/// dual pairing; everything else lives in even degrees.
struct Poly {
    std::vector<Int> c;  // c[i] is the coefficient of r^i; no trailing zeros

    Poly() = default;
    explicit Poly(Int constant);

    bool isZero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    const Int& leading() const { return c.back(); }

    bool operator==(const Poly&) const = default;
};

Poly polyAdd(const Poly& a, const Poly& b);
Poly polySub(const Poly& a, const Poly& b);
Poly polyNeg(const Poly& a);
Poly polyMul(const Poly& a, const Poly& b);
Poly polyMulInt(const Poly& a, const Int& k);
Poly polyShift(const Poly& a, int k);  // multiply by r^k, k >= 0
Int polyContent(const Poly& a);       // gcd of coefficients, >= 0 (0 for zero poly)
Poly polyPrimitive(const Poly& a);    // a / content(a)
/// Primitive gcd with positive leading coefficient (primitive-PRS). gcd(0,0) = 0.
Poly polyGcd(Poly a, Poly b);
/// Exact quotient a / b; throws Error if b does not divide a over Q[r].
Poly polyDivExact(const Poly& a, const Poly& b);

/// An exact element of Q(q^(1/2)) in canonical form: scale * num / den with
/// scale a rational, num and den primitive integer polynomials in r,
/// polyGcd(num, den) = 1 and den with positive leading coefficient.
/// The zero value is 0 * 0 / 1. Two values are equal iff their fields are.
class RatQ {
public:
    RatQ();  // zero

    static RatQ zero();
    static RatQ one();
    static RatQ ofInt(long v);
    static RatQ ofRational(const Rational& v);
    static RatQ ofFraction(long num, long den);
    static RatQ q();
    static RatQ qPow(int k);  // q^k, any sign
    static RatQ rPow(int k);  // q^(k/2), any sign
    static RatQ lambda();  // q^-1 - q
    /// The 4D+ coefficient on w1 in d(beta), d(delta): (q^-1 (lambda^2+1) - 1) / lambda.
    /// This is the value forced by the Leibniz rule on the determinant
    /// relation; bigQPrinted() keeps the variant with the transposed factor
    /// for the flagged comparison in reports.
    static RatQ bigQ();
    static RatQ bigQPrinted();  // (lambda^2 (q^-1 + 1) - 1) / lambda

    RatQ operator+(const RatQ& o) const;
    RatQ operator-(const RatQ& o) const;
    RatQ operator-() const;
    RatQ operator*(const RatQ& o) const;
    RatQ operator/(const RatQ& o) const;  // throws DivisionByZero
    RatQ inv() const;                     // throws DivisionByZero
    RatQ pow(int k) const;

    RatQ& operator+=(const RatQ& o) { return *this = *this + o; }
    RatQ& operator-=(const RatQ& o) { return *this = *this - o; }
    RatQ& operator*=(const RatQ& o) { return *this = *this * o; }

    bool operator==(const RatQ&) const = default;
    bool isZero() const;
    bool isOne() const;

    /// Exact value at q = q0. Requires only integer powers of q (throws Error
    /// on stray half powers) and a non-vanishing denominator (PoleAtPoint).
    Rational evalAt(const Rational& q0) const;

    /// Re-runs canonicalization; the result must equal *this (used by tests).
    RatQ renormalized() const;

    std::string str() const;

    const Rational& scale() const { return scale_; }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

private:
    RatQ(Rational scale, Poly num, Poly den, bool canonicalize);
    void canonicalize();

    Rational scale_;
    Poly num_;
    Poly den_;
};

std::string renderRational(const Rational& v);

}  // namespace qpb
