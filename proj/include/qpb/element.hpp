#pragma once

#include <map>
#include <string>

#include "qpb/presentation.hpp"

namespace qpb {

/// A finite linear combination of normal monomials of a presented algebra.
/// Equality is literal equality of the term maps.
class Element {
public:
    Element() = default;
    explicit Element(PresPtr p) : pres_(std::move(p)) {}
    Element(PresPtr p, RawTerms terms) : pres_(std::move(p)), terms_(std::move(terms)) { prune(); }

    static Element zero(PresPtr p) { return Element(std::move(p)); }
    static Element unit(PresPtr p) { return scalar(std::move(p), RatQ::one()); }
    static Element scalar(PresPtr p, const RatQ& c);
    /// The (already normal) generator monomial g^e.
    static Element generator(PresPtr p, int g, int e = 1);
    /// Normalizes an arbitrary word.
    static Element word(PresPtr p, const Word& w, const RatQ& c = RatQ::one());

    const PresPtr& presentation() const { return pres_; }
    const RawTerms& terms() const { return terms_; }
    bool isZero() const { return terms_.empty(); }
    bool isScalar() const;
    RatQ scalarValue() const;  // coefficient of the unit monomial
    std::size_t termCount() const { return terms_.size(); }

    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element operator-() const;
    Element operator*(const Element& o) const;
    Element scaled(const RatQ& c) const;
    Element pow(int n) const;

    bool operator==(const Element& o) const;
    bool operator!=(const Element& o) const { return !(*this == o); }

    /// Exact coefficient evaluation at q = q0 (classical-limit fingerprint).
    std::map<Monomial, Rational> specializeQ(const Rational& q0) const;

    std::string str() const;

private:
    void prune();
    void checkSame(const Element& o) const;

    PresPtr pres_;
    RawTerms terms_;
};

std::string renderMonomial(const Presentation& p, const Monomial& m);
std::string renderTerms(const Presentation& p, const RawTerms& terms);

/// An algebra map between presented algebras, given by generator images.
/// Images of inverse letters must be registered explicitly where needed.
struct AlgebraMap {
    std::string name;
    PresPtr src;
    PresPtr dst;
    std::map<int, Element> images;     // generator -> image
    std::map<int, Element> invImages;  // generator -> image of its inverse

    Element apply(const Element& x) const;
    Element applyMonomial(const Monomial& m, const RatQ& c = RatQ::one()) const;
    /// Checks that every defining relation of src maps to zero.
    bool respectsRelations(std::string* firstFailure = nullptr) const;
};

AlgebraMap composeMaps(const AlgebraMap& outer, const AlgebraMap& inner);
AlgebraMap identityMap(const PresPtr& p);

}  // namespace qpb
