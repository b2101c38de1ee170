#pragma once

#include <memory>

#include "qpb/tensor.hpp"

namespace qpb {

/// Hopf (or bi-)algebra structure data on a presentation. Images are stored
/// per letter (generator, sign), so invertible generators carry explicit
/// images for their inverses. The antipode map may be absent (bialgebras).
struct HopfData {
    PresPtr pres;
    std::map<std::pair<int, int>, TensorElement> coproductImages;
    std::map<std::pair<int, int>, RatQ> counitImages;
    std::map<std::pair<int, int>, Element> antipodeImages;
    bool hasAntipode = false;
};

TensorElement coproduct(const Element& x);
RatQ counit(const Element& x);
Element antipode(const Element& x);
/// (Delta (x) id) Delta and (id (x) Delta) Delta.
Tensor3 coproduct2Left(const Element& x);
Tensor3 coproduct2Right(const Element& x);

struct HopfCheckResult {
    bool ok = true;
    std::string firstFailure;
    long monomialsChecked = 0;
};

/// Coassociativity, counit and antipode identities on all normal monomials
/// with total |degree| <= maxDegree and exponents bounded by `bound`.
HopfCheckResult checkHopfAxioms(const PresPtr& p, int maxDegree, int bound);

/// Attaches Hopf data to the factory presentations. The O_q(SL_2) and O_q(P)
/// antipodes are solved from the antipode axiom over a degree-1 ansatz, not
/// hard-coded.
void attachHopfOqSl2(const std::shared_ptr<Presentation>& sl2);
void attachHopfUqSl2(const std::shared_ptr<Presentation>& uq);
/// O_q(P) data is obtained by pushing O_q(SL_2) data through the projection.
void attachHopfOqP(const std::shared_ptr<Presentation>& oqp, const PresPtr& sl2,
                   const AlgebraMap& pi);

/// A Hopf-algebra quotient A -> H with a generator-level section.
struct HopfProjection {
    AlgebraMap pi;
    AlgebraMap section;                     // H -> A, pi∘section = id on generators
    std::vector<Element> idealGenerators;   // generators of ker pi, in A
};

/// Builds and verifies the quotient projection: checks pi is an algebra map,
/// that the ideal generators span a Hopf ideal ((pi(x)pi)Delta g = 0,
/// eps(g) = 0, pi(S(g)) = 0), and that pi intertwines the structure maps on
/// generators. Throws NotAHopfIdeal / AxiomViolation.
HopfProjection buildHopfQuotient(const PresPtr& A, const PresPtr& H, AlgebraMap pi,
                                 AlgebraMap section, std::vector<Element> idealGens);

/// A right H-comodule algebra structure delta_R : A -> A (x) H.
struct Coaction {
    PresPtr A;
    PresPtr H;
    std::map<std::pair<int, int>, TensorElement> images;

    TensorElement apply(const Element& x) const;
    TensorElement applyMonomial(const Monomial& m, const RatQ& c = RatQ::one()) const;
    /// (delta_R (x) id) delta_R, landing in A (x) H (x) H.
    Tensor3 applyIterated(const Element& x) const;
    bool isCoinvariant(const Element& x) const;
};

Coaction coactionFromQuotient(const HopfProjection& proj);
/// H coacting on itself by the coproduct.
Coaction coactionFromCoproduct(const PresPtr& h);

struct CoactionCheckResult {
    bool ok = true;
    std::string firstFailure;
    long checked = 0;
};

/// Comodule axioms and the algebra-map property on a monomial window.
CoactionCheckResult checkComoduleAxioms(const Coaction& c, int maxDegree, int bound);

/// Basis of { x : delta_R(x) = x (x) 1 } over the monomial window of the given
/// coaction weight (all weights when absent), |exponents| <= bound and total
/// absolute degree <= maxAbs. Exact nullspace computation.
std::vector<Element> coinvariantBasis(const Coaction& c, std::optional<int> weight, int maxAbs,
                                      int bound);

/// The fundamental splitting m -> m0 S(m1) (x) m2 for H coacting on itself.
TensorElement coinvariantSplit(const Element& x);
/// Inverse: mbar (x) h -> mbar h.
Element coinvariantSplitInverse(const TensorElement& te);

/// The dual pairing between U_q(sl2) and O_q(SL_2) (zero-default ansatz for
/// values the table does not list).
struct DualPairing {
    PresPtr U;
    PresPtr A;

    RatQ pair(const Element& u, const Element& x) const;
    Element convolve(const Element& f, const Element& x) const;  // f*x = x1 <f, x2>

    RatQ pairLetterWord(int gen, int sign, const Word& unitWord) const;

    std::map<std::pair<std::pair<int, int>, int>, RatQ> letterValues;  // ((Ugen,sign), Agen) -> value
};

DualPairing buildPairing(const PresPtr& uq, const PresPtr& sl2);

}  // namespace qpb
