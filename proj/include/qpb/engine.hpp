#pragma once

#include "qpb/config.hpp"
#include "qpb/factory.hpp"
#include "qpb/fodc.hpp"
#include "qpb/hopf.hpp"
#include "qpb/ore.hpp"

namespace qpb {

struct SmashContext;

/// Builds and owns every algebra, Hopf structure, coaction and calculus of
/// the quantum-P^1 instance. Construction is eager per group and memoized;
/// the assembled objects are immutable afterwards.
class Engine {
public:
    explicit Engine(Config cfg = Config{});

    const Config& config() const { return cfg_; }

    // presented algebras
    PresPtr sl2() const { return sl2_; }
    PresPtr oqp() const { return oqp_; }
    PresPtr uq() const { return uq_; }
    PresPtr b1() const { return b1_; }
    PresPtr b2() const { return b2_; }
    PresPtr a1() const { return a1_.pres; }
    PresPtr a2() const { return a2_.pres; }
    PresPtr a12() const { return a12_.pres; }
    PresPtr b12() const { return b12_.pres; }

    const LocalizedPresentation& locA1() const { return a1_; }
    const LocalizedPresentation& locA2() const { return a2_; }
    const LocalizedPresentation& locA12() const { return a12_; }   // A1[gamma^-1]
    const LocalizedPresentation& locA21() const { return a21_; }   // A2[alpha^-1]
    const LocalizedPresentation& locB12() const { return b12_; }

    const HopfProjection& projection() const { return proj_; }
    const DualPairing& pairing() const { return pairing_; }

    std::shared_ptr<const Coaction> coactionOnA() const { return coactA_; }
    std::shared_ptr<const Coaction> coactionOnA1() const { return coactA1_; }
    std::shared_ptr<const Coaction> coactionOnA2() const { return coactA2_; }
    std::shared_ptr<const Coaction> coactionOnA12() const { return coactA12_; }

    CalcPtr calc4d() const { return calc4d_; }     // on O_q(SL_2)
    CalcPtr calcP() const { return calcP_; }       // quotient calculus on O_q(P)
    CalcPtr calcA1() const { return calcA1_; }     // localized, on A_1
    CalcPtr calcA2() const { return calcA2_; }
    CalcPtr calcA12() const { return calcA12_; }
    const PullbackResult& calcB1() const { return calcB1_; }   // on B_1
    const PullbackResult& calcB2() const { return calcB2_; }   // on B_2
    const PullbackResult& calcB12() const { return calcB12_; }  // on B_12
    /// Chart-induced calculi on H = O_q(P): pullbacks along the cleaving maps
    /// (free of rank 3; each surjects onto the rank-2 quotient calculus).
    const PullbackResult& calcHU1() const { return calcH1_; }
    const PullbackResult& calcHU2() const { return calcH2_; }
    AlgebraMap cleavingJ1() const;
    AlgebraMap cleavingJ2() const;

    // base coordinates
    Element u() const;  // gamma alpha^-1 in A_1
    Element v() const;  // alpha gamma^-1 in A_2

    AlgebraMap iotaB1() const;  // B_1 -> A_1
    AlgebraMap iotaB2() const;  // B_2 -> A_2
    AlgebraMap iotaB12() const; // B_12 -> A_12

    const SmashContext& smashU1() const;
    const SmashContext& smashU2() const;

private:
    Config cfg_;
    PresPtr sl2_, oqp_, uq_, b1_, b2_;
    LocalizedPresentation a1_, a2_, a12_, a21_, b12_;
    HopfProjection proj_;
    DualPairing pairing_;
    std::shared_ptr<const Coaction> coactA_, coactA1_, coactA2_, coactA12_, coactP_;
    CalcPtr calc4d_, calcP_, calcA1_, calcA2_, calcA12_;
    PullbackResult calcB1_, calcB2_, calcB12_, calcH1_, calcH2_;
    mutable std::shared_ptr<SmashContext> smash1_, smash2_;
};

}  // namespace qpb
