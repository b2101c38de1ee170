#pragma once

#include <map>
#include <tuple>

#include "qpb/element.hpp"

namespace qpb {

/// Finite linear combination of monomial tensors over a pair of presentations.
struct TensorElement {
    PresPtr left;
    PresPtr right;
    std::map<std::pair<Monomial, Monomial>, RatQ> terms;

    static TensorElement zero(PresPtr l, PresPtr r) { return {std::move(l), std::move(r), {}}; }
    static TensorElement simple(PresPtr l, PresPtr r, const Monomial& lm, const Monomial& rm,
                                const RatQ& c);
    static TensorElement of(const Element& l, const Element& r);

    bool isZero() const { return terms.empty(); }
    void addTerm(const Monomial& lm, const Monomial& rm, const RatQ& c);

    TensorElement operator+(const TensorElement& o) const;
    TensorElement operator-(const TensorElement& o) const;
    TensorElement operator*(const TensorElement& o) const;  // (a@b)(c@d) = ac@bd
    TensorElement scaled(const RatQ& c) const;
    bool operator==(const TensorElement& o) const;

    std::string str() const;
};

/// Applies algebra maps to the tensor legs (nullptr = identity).
TensorElement mapTensor(const TensorElement& te, const AlgebraMap* leftMap, const AlgebraMap* rightMap);

/// Triple tensors, used for iterated coproducts and coactions.
struct Tensor3 {
    PresPtr p1, p2, p3;
    std::map<std::tuple<Monomial, Monomial, Monomial>, RatQ> terms;

    static Tensor3 zero(PresPtr a, PresPtr b, PresPtr c) { return {std::move(a), std::move(b), std::move(c), {}}; }
    void addTerm(const Monomial& a, const Monomial& b, const Monomial& c, const RatQ& v);
    Tensor3 operator+(const Tensor3& o) const;
    Tensor3 operator-(const Tensor3& o) const;
    bool isZero() const { return terms.empty(); }
    bool operator==(const Tensor3& o) const;
    std::string str() const;
};

}  // namespace qpb
