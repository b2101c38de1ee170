#pragma once

#include "qpb/fodc.hpp"

namespace qpb {

/// Cleaving map of a trivial extension: a right H-colinear algebra map
/// j : H -> A_loc with convolution inverse j∘S.
struct CleavingMap {
    std::string name;
    PresPtr H;
    PresPtr Aloc;
    AlgebraMap j;
    std::shared_ptr<const Coaction> coaction;  // on Aloc over H

    Element apply(const Element& h) const { return j.apply(h); }
    Element applyInverse(const Element& h) const;  // j∘S
};

struct CleavingCheck {
    bool ok = true;
    std::string firstFailure;
};

/// Algebra map + colinearity on generators, convolution inverse on a monomial
/// window, unitality, and the Lemma 2.7 identity
/// delta_R(j^-1 h) = j^-1(h2) (x) S(h1).
CleavingCheck verifyCleaving(const CleavingMap& cm, int maxDegree, int bound);

/// Identification of B with the coinvariant subalgebra of A_loc: iota embeds,
/// contract inverts on the image (monomial-wise).
struct BaseEmbedding {
    PresPtr B;
    PresPtr Aloc;
    AlgebraMap iota;
    std::map<Monomial, std::pair<Monomial, RatQ>> contractTable;  // A-mon -> (B-mon, scale)

    Element contract(const Element& x) const;  // throws NotCoinvariant off the image
};

BaseEmbedding makeBaseEmbedding(const PresPtr& B, const PresPtr& Aloc, const AlgebraMap& iota,
                                int bound);

/// h |> b = j(h1) b j^-1(h2), landing back in B.
Element triangle(const CleavingMap& cm, const BaseEmbedding& be, const Element& h,
                 const Element& b);

/// Everything needed to run the smash-product calculus over one chart.
struct SmashContext {
    CleavingMap cm;
    BaseEmbedding base;
    CalcPtr calcA;               // localized calculus on Aloc
    CalcPtr calcB;               // pullback calculus on B
    std::vector<Monomial> calcBOrigin;  // basis form k of calcB is d(iota(origin[k]))
    CalcPtr calcH;               // chart-induced calculus on H (pullback along j)
    std::vector<Monomial> calcHOrigin;  // basis form l of calcH is d(j(origin[l]))

    /// Exact decomposition machinery for Gamma = theta_Gamma(Gamma_#); built
    /// lazily on a window. mutable caches, guarded by single-threaded build.
    struct Decomposition;
    mutable std::shared_ptr<Decomposition> decomp;
};

/// Elements of B#H are tensors with the twisted product.
using SmashElement = TensorElement;

SmashElement smashUnit(const SmashContext& ctx);
SmashElement smashOf(const SmashContext& ctx, const Element& b, const Element& h);
SmashElement smashMul(const SmashContext& ctx, const SmashElement& x, const SmashElement& y);

Element theta(const SmashContext& ctx, const SmashElement& x);     // b#h -> b j(h)
SmashElement thetaInv(const SmashContext& ctx, const Element& a);  // a0 j^-1(a1) # a2

/// Element of Gamma_# = Gamma_B (x) H  (+)  B (x) Gamma_H.
struct SmashForm {
    std::map<std::tuple<int, Monomial, Monomial>, RatQ> bPart;  // (B-label, B-mon, H-mon)
    std::map<std::tuple<Monomial, int, Monomial>, RatQ> hPart;  // (B-mon, H-label, H-mon)

    bool isZero() const { return bPart.empty() && hPart.empty(); }
    void addB(int label, const Monomial& bm, const Monomial& hm, const RatQ& v);
    void addH(const Monomial& bm, int label, const Monomial& hm, const RatQ& v);
    SmashForm operator+(const SmashForm& o) const;
    SmashForm operator-(const SmashForm& o) const;
    SmashForm scaled(const RatQ& c) const;
    bool operator==(const SmashForm& o) const;
    std::string str(const SmashContext& ctx) const;
};

/// d_#(a) = d_B(a0 j^-1(a1)) (x) a2 + a0 j^-1(a1) (x) d_H(a2).
SmashForm dSmash(const SmashContext& ctx, const Element& a);
/// Left and right A-actions on Gamma_#, defined by exact theta_Gamma
/// transport (the printed eq. (125) is inconsistent with theta_Gamma; the
/// discrepancy is surfaced by eq125Discrepancy below).
SmashForm smashLeftMul(const SmashContext& ctx, const Element& a, const SmashForm& xi);
SmashForm smashRightMul(const SmashContext& ctx, const SmashForm& xi, const Element& a);

OneForm thetaGamma(const SmashContext& ctx, const SmashForm& xi);
/// Exact inverse of theta_Gamma: decomposes a localized one-form into
/// Gamma_B (x) H (+) B (x) Gamma_H on the window. Throws RoundTripFailure
/// when the form escapes the window span.
SmashForm thetaGammaInv(const SmashContext& ctx, const OneForm& w);

/// Evaluates the paper's printed left-action formula on a witness and returns
/// the two theta_Gamma images (printed-action image, true product); they
/// differ, which the smash suite reports as a flagged check.
std::pair<OneForm, OneForm> eq125Discrepancy(const SmashContext& ctx);

struct CorrespondenceReport {
    bool ok = true;
    std::string firstFailure;
    int roundTrips = 0;
};

/// Runs constructions 1. and 2. of the smash theorem in both orders and
/// verifies the round trips on deterministic random samples.
CorrespondenceReport correspondenceCheck(const SmashContext& ctx, int samples, int windowDeg,
                                         int bound);

}  // namespace qpb
