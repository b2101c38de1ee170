#include "qpb/scalar.hpp"

#include <algorithm>
#include <sstream>

namespace qpb {

namespace {

void trim(std::vector<Int>& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

Int intGcd(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a  mod  b, computed over Z.
Poly pseudoRem(Poly a, const Poly& b) {
    const int db = b.degree();
    const Int& lb = b.leading();
    while (!a.isZero() && a.degree() >= db) {
        const int shift = a.degree() - db;
        const Int la = a.leading();
        Poly scaled = polyMulInt(a, lb);
        Poly sub = polyShift(polyMulInt(b, la), shift);
        a = polySub(scaled, sub);
        trim(a.c);
    }
    return a;
}

}  // namespace

Poly::Poly(Int constant) {
    if (constant != 0) c.push_back(std::move(constant));
}

Poly polyAdd(const Poly& a, const Poly& b) {
    Poly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), Int(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    trim(r.c);
    return r;
}

Poly polySub(const Poly& a, const Poly& b) { return polyAdd(a, polyNeg(b)); }

Poly polyNeg(const Poly& a) {
    Poly r = a;
    for (auto& x : r.c) x = -x;
    return r;
}

Poly polyMul(const Poly& a, const Poly& b) {
    if (a.isZero() || b.isZero()) return Poly();
    Poly r;
    r.c.assign(a.c.size() + b.c.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    trim(r.c);
    return r;
}

Poly polyMulInt(const Poly& a, const Int& k) {
    if (k == 0) return Poly();
    Poly r = a;
    for (auto& x : r.c) x *= k;
    return r;
}

Poly polyShift(const Poly& a, int k) {
    if (a.isZero()) return a;
    Poly r;
    r.c.assign(a.c.size() + static_cast<std::size_t>(k), Int(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i + static_cast<std::size_t>(k)] = a.c[i];
    return r;
}

Int polyContent(const Poly& a) {
    Int g = 0;
    for (const auto& x : a.c) g = intGcd(g, x);
    return g;
}

Poly polyPrimitive(const Poly& a) {
    Int g = polyContent(a);
    if (g == 0 || g == 1) return a;
    Poly r = a;
    for (auto& x : r.c) x /= g;
    return r;
}

Poly polyGcd(Poly a, Poly b) {
    a = polyPrimitive(a);
    b = polyPrimitive(b);
    if (a.isZero()) return b.isZero() || b.leading() > 0 ? b : polyNeg(b);
    if (b.isZero()) return a.leading() > 0 ? a : polyNeg(a);
    if (a.degree() < b.degree()) std::swap(a, b);
    while (true) {
        Poly r = pseudoRem(a, b);
        if (r.isZero()) break;
        if (r.degree() == 0) return Poly(Int(1));
        a = b;
        b = polyPrimitive(r);
    }
    return b.leading() > 0 ? b : polyNeg(b);
}

Poly polyDivExact(const Poly& a, const Poly& b) {
    if (b.isZero()) throw Error("polyDivExact: division by zero polynomial");
    if (a.isZero()) return Poly();
    // Long division over Q, then verify integrality and zero remainder.
    std::vector<Rational> rem(a.c.size());
    for (std::size_t i = 0; i < a.c.size(); ++i) rem[i] = Rational(a.c[i]);
    const int db = b.degree();
    const Rational lb = Rational(b.leading());
    int da = a.degree();
    std::vector<Rational> quot(static_cast<std::size_t>(da - db + 1), Rational(0));
    while (da >= db) {
        Rational f = rem[static_cast<std::size_t>(da)] / lb;
        quot[static_cast<std::size_t>(da - db)] = f;
        for (int i = 0; i <= db; ++i)
            rem[static_cast<std::size_t>(da - db + i)] -= f * Rational(b.c[static_cast<std::size_t>(i)]);
        while (da >= 0 && rem[static_cast<std::size_t>(da)] == 0) --da;
    }
    for (int i = 0; i <= da; ++i)
        if (rem[static_cast<std::size_t>(i)] != 0) throw Error("polyDivExact: not divisible");
    Poly q;
    q.c.reserve(quot.size());
    for (const auto& x : quot) {
        if (boost::multiprecision::denominator(x) != 1) throw Error("polyDivExact: non-integer quotient");
        q.c.push_back(boost::multiprecision::numerator(x));
    }
    trim(q.c);
    return q;
}

RatQ::RatQ() : scale_(0), num_(), den_(Int(1)) {}

RatQ::RatQ(Rational scale, Poly num, Poly den, bool doCanon)
    : scale_(std::move(scale)), num_(std::move(num)), den_(std::move(den)) {
    if (doCanon) canonicalize();
}

namespace {

int lowestDegree(const Poly& p) {
    for (std::size_t i = 0; i < p.c.size(); ++i)
        if (p.c[i] != 0) return static_cast<int>(i);
    return -1;
}

Poly shiftDown(const Poly& p, int k) {
    Poly r;
    r.c.assign(p.c.begin() + k, p.c.end());
    return r;
}

bool isMonomialPoly(const Poly& p) {
    int nonzero = 0;
    for (const auto& x : p.c) nonzero += (x != 0);
    return nonzero == 1;
}

}  // namespace

void RatQ::canonicalize() {
    if (den_.isZero()) throw DivisionByZero();
    if (scale_ == 0 || num_.isZero()) {
        scale_ = 0;
        num_ = Poly();
        den_ = Poly(Int(1));
        return;
    }
    // Strip the common power of r (folds Laurent cancellation cheaply).
    int low = std::min(lowestDegree(num_), lowestDegree(den_));
    if (low > 0) {
        num_ = shiftDown(num_, low);
        den_ = shiftDown(den_, low);
    }
    // Fold contents into the rational scale, keep num/den primitive.
    Int cn = polyContent(num_);
    Int cd = polyContent(den_);
    scale_ *= Rational(cn, cd);
    num_ = polyPrimitive(num_);
    den_ = polyPrimitive(den_);
    // After the strip, a monomial side shares no further factor.
    if (!isMonomialPoly(num_) && !isMonomialPoly(den_) && den_.degree() > 0) {
        Poly g = polyGcd(num_, den_);
        if (g.degree() > 0) {
            num_ = polyDivExact(num_, g);
            den_ = polyDivExact(den_, g);
        }
    }
    if (den_.leading() < 0) {
        den_ = polyNeg(den_);
        num_ = polyNeg(num_);
    }
    if (num_.leading() < 0) {
        num_ = polyNeg(num_);
        scale_ = -scale_;
    }
}

RatQ RatQ::zero() { return RatQ(); }
RatQ RatQ::one() { return ofInt(1); }

RatQ RatQ::ofInt(long v) { return ofRational(Rational(v)); }

RatQ RatQ::ofRational(const Rational& v) { return RatQ(v, Poly(Int(1)), Poly(Int(1)), true); }

RatQ RatQ::ofFraction(long num, long den) { return ofRational(Rational(num, den)); }

RatQ RatQ::q() { return rPow(2); }

RatQ RatQ::qPow(int k) { return rPow(2 * k); }

RatQ RatQ::rPow(int k) {
    if (k >= 0) return RatQ(Rational(1), polyShift(Poly(Int(1)), k), Poly(Int(1)), true);
    return RatQ(Rational(1), Poly(Int(1)), polyShift(Poly(Int(1)), -k), true);
}

RatQ RatQ::lambda() { return qPow(-1) - q(); }

RatQ RatQ::bigQ() {
    RatQ l = lambda();
    return (qPow(-1) * (l * l + one()) - one()) / l;
}

RatQ RatQ::bigQPrinted() {
    RatQ l = lambda();
    return (l * l * (qPow(-1) + one()) - one()) / l;
}

RatQ RatQ::operator+(const RatQ& o) const {
    if (isZero()) return o;
    if (o.isZero()) return *this;
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    // scale*num/den + scale'*num'/den' over the common denominator den*den'.
    Int p1 = numerator(scale_), q1 = denominator(scale_);
    Int p2 = numerator(o.scale_), q2 = denominator(o.scale_);
    if (den_ == o.den_) {
        Poly n = polyAdd(polyMulInt(num_, p1 * q2), polyMulInt(o.num_, p2 * q1));
        return RatQ(Rational(1, q1 * q2), std::move(n), den_, true);
    }
    Poly left = polyMulInt(polyMul(num_, o.den_), p1 * q2);
    Poly right = polyMulInt(polyMul(o.num_, den_), p2 * q1);
    Poly n = polyAdd(left, right);
    return RatQ(Rational(1, q1 * q2), std::move(n), polyMul(den_, o.den_), true);
}

RatQ RatQ::operator-(const RatQ& o) const { return *this + (-o); }

RatQ RatQ::operator-() const {
    RatQ r = *this;
    r.scale_ = -r.scale_;
    return r;
}

RatQ RatQ::operator*(const RatQ& o) const {
    if (isZero() || o.isZero()) return RatQ();
    return RatQ(scale_ * o.scale_, polyMul(num_, o.num_), polyMul(den_, o.den_), true);
}

RatQ RatQ::inv() const {
    if (isZero()) throw DivisionByZero();
    return RatQ(Rational(1) / scale_, den_, num_, true);
}

RatQ RatQ::operator/(const RatQ& o) const { return *this * o.inv(); }

RatQ RatQ::pow(int k) const {
    if (k == 0) return one();
    RatQ base = k > 0 ? *this : inv();
    int n = k > 0 ? k : -k;
    RatQ acc = one();
    for (int i = 0; i < n; ++i) acc = acc * base;
    return acc;
}

bool RatQ::isZero() const { return scale_ == 0; }

bool RatQ::isOne() const { return *this == one(); }

namespace {

/// Evaluates a poly in r at q = q0, requiring even degrees only.
Rational evalEven(const Poly& p, const Rational& q0) {
    Rational acc(0);
    Rational power(1);
    for (std::size_t i = 0; i < p.c.size(); ++i) {
        if (p.c[i] != 0) {
            if (i % 2 != 0) throw Error("evalAt on a value with half powers of q");
            acc += Rational(p.c[i]) * power;
        }
        if (i % 2 == 1) power *= q0;
    }
    return acc;
}

}  // namespace

Rational RatQ::evalAt(const Rational& q0) const {
    if (isZero()) return Rational(0);
    Rational d = evalEven(den_, q0);
    if (d == 0) {
        std::ostringstream os;
        os << q0;
        throw PoleAtPoint(os.str());
    }
    Rational n = evalEven(num_, q0);
    return scale_ * n / d;
}

RatQ RatQ::renormalized() const { return RatQ(scale_, num_, den_, true); }

std::string renderRational(const Rational& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

namespace {

/// Renders scale * poly as a Laurent polynomial in q with half powers,
/// where rshift is subtracted from each r-degree first. Ascending powers.
std::string renderLaurent(const Rational& scale, const Poly& p, int rshift) {
    std::string out;
    bool first = true;
    for (std::size_t i = 0; i < p.c.size(); ++i) {
        if (p.c[i] == 0) continue;
        Rational coef = scale * Rational(p.c[i]);
        int rdeg = static_cast<int>(i) - rshift;
        bool neg = coef < 0;
        if (neg) coef = -coef;
        std::string power;
        if (rdeg == 2) {
            power = "q";
        } else if (rdeg != 0) {
            if (rdeg % 2 == 0) {
                power = "q^" + std::to_string(rdeg / 2);
            } else {
                power = "q^(" + std::to_string(rdeg) + "/2)";
            }
        }
        std::string body;
        if (power.empty()) {
            body = renderRational(coef);
        } else if (coef == 1) {
            body = power;
        } else {
            body = renderRational(coef) + "*" + power;
        }
        if (first) {
            out = (neg ? "-" : "") + body;
            first = false;
        } else {
            out += (neg ? " - " : " + ") + body;
        }
    }
    return out.empty() ? "0" : out;
}

bool isMonomial(const Poly& p) {
    int nonzero = 0;
    for (const auto& x : p.c) nonzero += (x != 0);
    return nonzero == 1;
}

}  // namespace

std::string RatQ::str() const {
    if (isZero()) return "0";
    if (isMonomial(den_)) {
        // Fold q^-k denominators into the Laurent rendering.
        int shift = den_.degree();
        Rational s = scale_ / Rational(den_.leading());
        return renderLaurent(s, num_, shift);
    }
    std::string numStr = renderLaurent(scale_, num_, 0);
    std::string denStr = renderLaurent(Rational(1), den_, 0);
    bool simpleNum = isMonomial(num_);
    if (simpleNum) return numStr + "/(" + denStr + ")";
    return "(" + numStr + ")/(" + denStr + ")";
}

}  // namespace qpb
