#pragma once

#include "qpb/engine.hpp"
#include "qpb/smash.hpp"

namespace qpb {

/// Sorted index set naming a basic open: U_I = U_{i1} ∩ ... ∩ U_{ir}.
/// The empty index set denotes the whole space M. U_J ⊆ U_I iff I ⊆ J.
struct OpenIndex {
    std::vector<int> I;

    static OpenIndex wholeSpace() { return {}; }
    static OpenIndex of(std::initializer_list<int> ix);
    bool isWholeSpace() const { return I.empty(); }
    bool subsetOf(const OpenIndex& o) const;  // as index sets
    std::string str() const;
    auto operator<=>(const OpenIndex&) const = default;
};

/// All basic opens of the n-chart cover, ordered by refinement depth.
std::vector<OpenIndex> basicOpens(int n);

/// The empty open set carries the zero algebra; every restriction into it is
/// the zero map.
struct ZeroSection {
    bool contains(const Element&) const { return true; }
};

/// The assembled quantum principal bundle over P^1: the structure sheaf O_M,
/// the bundle sheaf F_G, and the calculus sheaves, with their restrictions.
struct P1Bundle {
    const Engine* eng = nullptr;

    std::map<OpenIndex, PresPtr> FG;
    std::map<OpenIndex, PresPtr> OM;  // the whole-space entry is the equalizer; see omGlobalBasis
    std::map<OpenIndex, std::shared_ptr<const Coaction>> coactions;
    std::map<OpenIndex, CalcPtr> upsG;
    std::map<OpenIndex, CalcPtr> upsM;
    std::map<OpenIndex, std::vector<Monomial>> upsMOrigin;
    std::map<OpenIndex, AlgebraMap> iotaOM;  // O_M(U) -> F_G(U)
    std::map<std::pair<OpenIndex, OpenIndex>, AlgebraMap> rFG;  // restriction, I subset J
    std::map<std::pair<OpenIndex, OpenIndex>, AlgebraMap> rOM;
    std::vector<Element> omGlobalBasis;  // equalizer basis for O_M(M), in B1 coords
    ZeroSection emptyOpen;

    const AlgebraMap& restrictionFG(const OpenIndex& from, const OpenIndex& to) const;
    const AlgebraMap& restrictionOM(const OpenIndex& from, const OpenIndex& to) const;
    /// Restriction of forms: coefficients through rFG, labels preserved (ups_G),
    /// or basis forms mapped through d of the restricted origin (ups_M).
    OneForm restrictFormG(const OpenIndex& from, const OpenIndex& to, const OneForm& w) const;
    OneForm restrictFormM(const OpenIndex& from, const OpenIndex& to, const OneForm& w) const;
};

P1Bundle buildP1Bundle(const Engine& e);

struct SheafLawReport {
    bool ok = true;
    std::string firstFailure;
    long checked = 0;
};

/// Identity and composition laws on every chain, algebra-map property of the
/// restrictions, and H-colinearity where coactions exist.
SheafLawReport checkPresheafLaws(const P1Bundle& b, int degree, int bound);

struct GluingReport {
    bool separation = false;         // F_G: kernel of (r1, r2) on the window is 0
    bool gluing = false;             // F_G: matching pairs lift to the window
    bool equalizerIsConstants = false;  // O_M global sections
    int equalizerDim = 0;
    std::string witness;
};

GluingReport checkGluing(const P1Bundle& b, const Config& cfg);

struct CoinvariantSheafReport {
    bool ok = true;
    std::string firstFailure;
    std::map<OpenIndex, int> dims;
};

/// F_G^{coH}(U_I) = O_M(U_I) at the window, for every basic open.
CoinvariantSheafReport checkCoinvariantSubsheaf(const P1Bundle& b, const Config& cfg);

struct BaseFormsSheafReport {
    bool ok = true;
    std::string firstFailure;
    std::map<OpenIndex, HorizontalReport> perOpen;
};

/// Upsilon_M = Upsilon^hor ∩ Upsilon^coH at the window on U_1 and U_2.
BaseFormsSheafReport checkBaseFormsSubsheaf(const P1Bundle& b, const Config& cfg);

struct ConstantStructureReport {
    bool isomorphic = false;
    CalcPtr common;  // the common O_q(P) calculus (the quotient calculus)
    std::string witness;
};

/// The two calculi induced on O_q(P) by the charts' cleaving maps, matched to
/// the quotient calculus (Prop. 4.4).
ConstantStructureReport constantStructureCalculus(const P1Bundle& b, int windowDeg, int bound);

/// (id (x) pi) Delta(s) = s (x) pi(s).
bool quantumSectionCheck(const Engine& e, const Element& s);

}  // namespace qpb
