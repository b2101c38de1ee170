#pragma once

#include "qpb/fodc.hpp"

namespace qpb {

/// An Ore localization realized as an enlarged rewriting system with verified
/// confluence, together with the embedding of the base algebra.
struct LocalizedPresentation {
    PresPtr pres;
    AlgebraMap embed;  // base -> localized
};

/// Localizes at the named generator. Supported: alpha and gamma on the
/// O_q(SL_2) family (alpha-localization eliminates delta), u on B_1, t on
/// O_q(P) (already invertible; identity). Throws UnsupportedOreElement.
LocalizedPresentation localize(const PresPtr& p, const std::string& genName);

/// Extends a coaction to the localization: delta_R(g^-1) = delta_R(g)^-1,
/// which must be a single invertible monomial tensor.
Coaction extendCoaction(const Coaction& c, const PresPtr& localized, const std::string& genName);

/// Extends a calculus to the localization: the new table column T(g^-1) is
/// solved from (w^i g^-1) g = w^i by back-substitution over the triangular
/// table, and d(g^-1) = -g^-1 d(g) g^-1.
CalcPtr extendCalculus(const CalcPtr& c, const LocalizedPresentation& loc,
                       const std::string& genName,
                       std::shared_ptr<const Coaction> localizedCoaction);

/// Iterated localization at two generators with an order-independence check:
/// identical rule sets and identical embeddings on a randomized sample.
/// Throws OrderDependenceDetected.
LocalizedPresentation iterateLocalization(const PresPtr& p, const std::string& g1,
                                          const std::string& g2, int samples);

/// Certifies that two calculi on H are isomorphic to a reference calculus on
/// H (and hence to each other) by transporting d-tables: Theta(d_i h) = d_ref h
/// extended H-linearly. Verifies bijectivity, H-bilinearity (table matching)
/// and right H-colinearity on a window. Throws NotIsomorphic.
struct CalculusMatching {
    // images of the source basis forms in the reference calculus
    std::vector<OneForm> images;
};
/// With requireBijective = false this certifies a (possibly non-injective)
/// morphism of calculi over id_H, e.g. the canonical surjection of a chart
/// pullback onto the quotient calculus.
CalculusMatching matchCalculus(const CalcPtr& src, const PullbackResult& srcOrigin,
                               const CalcPtr& reference, int windowDeg, int bound,
                               bool requireBijective = true);

bool inducedCalculiIsomorphic(const CalcPtr& c1, const PullbackResult& o1, const CalcPtr& c2,
                              const PullbackResult& o2, int windowDeg, int bound,
                              std::string* witness = nullptr);

}  // namespace qpb
