#pragma once

#include <optional>

#include "qpb/hopf.hpp"
#include "qpb/linalg.hpp"

namespace qpb {

class Calculus;
using CalcPtr = std::shared_ptr<const Calculus>;

/// Element of a calculus bimodule in left normal form: a finite map from
/// basis-form labels to left coefficients.
struct OneForm {
    CalcPtr calc;
    std::map<int, Element> comps;

    static OneForm zero(CalcPtr c) { return {std::move(c), {}}; }
    static OneForm basis(CalcPtr c, int label);

    bool isZero() const;
    void addTerm(int label, const Element& e);
    OneForm operator+(const OneForm& o) const;
    OneForm operator-(const OneForm& o) const;
    OneForm scaled(const RatQ& c) const;
    bool operator==(const OneForm& o) const;
    std::string str() const;
};

/// Right coaction on the basis forms: Delta_R(w^i) = sum_j w^j (x) mat[i][j].
struct FormCoaction {
    PresPtr H;
    std::vector<std::vector<Element>> mat;
};

/// A FODC descriptor: base algebra, ordered form basis, commutation tables per
/// generator letter, differential table, optional coaction data.
class Calculus {
public:
    std::string name;
    PresPtr base;
    std::vector<std::string> labels;
    /// letter (gen, sign) -> matrix T with w^i * g = sum_j T[i][j] w^j
    std::map<std::pair<int, int>, std::vector<std::vector<Element>>> tables;
    /// letter -> components of d(letter)
    std::map<std::pair<int, int>, std::map<int, Element>> dTable;
    /// label -> expression sum_i a_i d(b_i) evaluating to that basis form
    std::map<int, std::vector<std::pair<Element, Element>>> formExprs;
    std::optional<FormCoaction> formCoaction;
    std::shared_ptr<const Coaction> coaction;  // base-algebra coaction, if covariant

    int labelCount() const { return static_cast<int>(labels.size()); }
    int labelIndex(const std::string& l) const;
    const std::vector<std::vector<Element>>& table(int gen, int sign) const;
};

OneForm rightMulLetter(const OneForm& w, int gen, int sign);
OneForm rightMul(const OneForm& w, const Element& x);
OneForm rightMulWord(const OneForm& w, const Word& word);
OneForm leftMul(const Element& x, const OneForm& w);
/// Leibniz differential of a normal-form element.
OneForm differentiate(const CalcPtr& c, const Element& x);
/// Leibniz differential of a raw word (used by well-definedness checks).
OneForm differentiateWord(const CalcPtr& c, const Word& w, const RatQ& coef = RatQ::one());

struct WellDefinedReport {
    bool ok = true;
    std::string firstFailure;
    long checked = 0;
};

/// For every defining relation: the right actions of both sides agree on every
/// basis form, and the differentials of both sides agree.
WellDefinedReport checkWellDefined(const CalcPtr& c);

/// Completes a partially given calculus by solving for the commutation-table
/// columns of the listed generators with a degree-1 homogeneous ansatz. The
/// linear system imposes right-action well-definedness and d(r) = 0 on every
/// relation; conditions quadratic in the unknowns are verified afterwards.
/// Throws NoSolution / AmbiguousSolution / InconsistentTable.
void solveTables(Calculus& c, const std::vector<int>& unknownGens);

/// The 4D+ bicovariant calculus on O_q(SL_2), with the alpha and gamma columns
/// and the differential table taken as given data and the beta/delta columns
/// solved. If a coaction is supplied the form coaction matrix is computed and
/// its well-definedness is cross-checked on independent expressions.
CalcPtr build4dPlus(const PresPtr& sl2, std::shared_ptr<const Coaction> coaction);

/// For each basis form, an expression sum_i a_i d(b_i) equal to it, found by
/// linear solve over the monomial window; certifies Gamma = A dA.
/// Throws NotGenerated when a form is not reachable in the window.
std::map<int, std::vector<std::pair<Element, Element>>> solveFormsFromD(const CalcPtr& c,
                                                                        int windowDeg, int bound);

/// Element of Gamma (x) H.
struct GammaTensor {
    CalcPtr calc;
    PresPtr H;
    std::map<std::tuple<int, Monomial, Monomial>, RatQ> terms;

    static GammaTensor zero(CalcPtr c, PresPtr h) { return {std::move(c), std::move(h), {}}; }
    void addTerm(int label, const Monomial& am, const Monomial& hm, const RatQ& v);
    GammaTensor operator+(const GammaTensor& o) const;
    GammaTensor operator-(const GammaTensor& o) const;
    bool isZero() const { return terms.empty(); }
    bool operator==(const GammaTensor& o) const;
    std::string str() const;
};

/// Right coaction a d a' -> a0 d a'0 (x) a1 a'1 evaluated on an A·dA expression.
GammaTensor coactRightExpr(const CalcPtr& c, const std::vector<std::pair<Element, Element>>& expr);
/// Right coaction of a one-form through the precomputed form-coaction matrix.
GammaTensor coactRight(const OneForm& w);

/// Computes the form-coaction matrix from the stored expressions and verifies
/// well-definedness against a second independent expression where available.
/// Throws IllDefinedCoaction.
FormCoaction computeFormCoaction(const CalcPtr& c, int windowDeg, int bound);

/// Solves the form-coaction matrix from the right H-colinearity of d on
/// generators alone (linear, table-independent).
FormCoaction computeFormCoactionFromColinearity(const Calculus& c, int hWindowAbs, int hBound);

/// Quotient calculus along a Hopf projection (Prop. 3.3 ii). Labels whose
/// classes vanish are eliminated; surviving labels carry pushed tables.
CalcPtr quotientCalculus(const CalcPtr& c, const HopfProjection& proj, int windowDeg, int bound);

/// Pullback calculus along an algebra map iota: B -> A (Prop. 3.3 i),
/// computed on a monomial window; the basis forms are d(iota(m)) for tracked
/// monomials m. Throws NotFreeInWindow when no free basis emerges.
struct PullbackResult {
    CalcPtr calc;                  // calculus on B
    std::vector<Monomial> origin;  // basis form k is d(iota(origin[k]))
};
PullbackResult pullbackCalculus(const CalcPtr& c, const AlgebraMap& iota, int windowDeg, int bound);

/// Tensor-product presentation A (x) A' (generators of A', shifted, commute
/// with those of A) and the tensor calculus of Prop. 3.2.
PresPtr tensorPresentation(const PresPtr& A, const PresPtr& B);
CalcPtr tensorCalculus(const CalcPtr& cA, const CalcPtr& cB);

/// Degree-truncated universal-calculus oracle: d_u(x) = 1 (x) x - x (x) 1.
TensorElement universalD(const PresPtr& p, const Element& x);
/// mu applied to a tensor (kernel membership check).
Element tensorMu(const TensorElement& t);
/// Verifies that a (x) b -> a d(b) defines a surjection of the windowed
/// universal calculus onto the target calculus intertwining the differentials.
bool universalQuotientExists(const PresPtr& p, const CalcPtr& target, int windowDeg, int bound);

/// Horizontal, coinvariant and base forms at a window (Observation 3.14).
struct HorizontalReport {
    int dimHorizontal = 0;
    int dimCoinvariant = 0;
    int dimIntersection = 0;
    int dimBase = 0;
    bool intersectionEqualsBase = false;
};
HorizontalReport horizontalForms(const CalcPtr& c, const AlgebraMap& iotaB, int windowDeg,
                                 int bound);

}  // namespace qpb
