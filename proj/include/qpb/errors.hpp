#pragma once

#include <stdexcept>
#include <string>

namespace qpb {

/// Base class for all engine errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero in Q(q)") {}
};

struct PoleAtPoint : Error {
    explicit PoleAtPoint(const std::string& at) : Error("denominator vanishes at q = " + at) {}
};

struct StepLimitExceeded : Error {
    explicit StepLimitExceeded(const std::string& pres)
        : Error("rewrite step budget exceeded in presentation " + pres) {}
};

struct PresentationMismatch : Error {
    PresentationMismatch() : Error("elements belong to different presentations") {}
};

struct NoHopfData : Error {
    explicit NoHopfData(const std::string& pres) : Error("presentation " + pres + " carries no Hopf data") {}
};

struct AxiomViolation : Error {
    explicit AxiomViolation(const std::string& what) : Error("axiom violation: " + what) {}
};

struct NotAHopfIdeal : Error {
    explicit NotAHopfIdeal(const std::string& what) : Error("not a Hopf ideal: " + what) {}
};

struct InconsistentTable : Error {
    explicit InconsistentTable(const std::string& what) : Error("inconsistent calculus table: " + what) {}
};

struct NoSolution : Error {
    explicit NoSolution(const std::string& what) : Error("linear system has no solution: " + what) {}
};

struct AmbiguousSolution : Error {
    explicit AmbiguousSolution(const std::string& what)
        : Error("linear system has a positive-dimensional solution space: " + what) {}
};

struct NotGenerated : Error {
    explicit NotGenerated(const std::string& what) : Error("form not generated by A·dA in window: " + what) {}
};

struct NotFreeInWindow : Error {
    explicit NotFreeInWindow(const std::string& what) : Error("sub-bimodule not free over window: " + what) {}
};

struct IllDefinedCoaction : Error {
    explicit IllDefinedCoaction(const std::string& what) : Error("coaction ill-defined: " + what) {}
};

struct UnsupportedOreElement : Error {
    explicit UnsupportedOreElement(const std::string& g)
        : Error("no verified Ore normal form for localization at " + g) {}
};

struct NotInvertibleCoactionImage : Error {
    explicit NotInvertibleCoactionImage(const std::string& g)
        : Error("coaction image of " + g + " is not invertible") {}
};

struct TableNotInvertible : Error {
    explicit TableNotInvertible(const std::string& g) : Error("commutation table of " + g + " is not invertible") {}
};

struct OrderDependenceDetected : Error {
    explicit OrderDependenceDetected(const std::string& what) : Error("localization order dependence: " + what) {}
};

struct NotIsomorphic : Error {
    explicit NotIsomorphic(const std::string& witness) : Error("calculi not isomorphic: " + witness) {}
};

struct NotCoinvariant : Error {
    explicit NotCoinvariant(const std::string& what) : Error("element not coinvariant: " + what) {}
};

struct RoundTripFailure : Error {
    explicit RoundTripFailure(const std::string& what) : Error("round trip failed: " + what) {}
};

struct CorrespondenceFailure : Error {
    explicit CorrespondenceFailure(const std::string& what) : Error("correspondence check failed: " + what) {}
};

struct GluingFailure : Error {
    explicit GluingFailure(const std::string& what) : Error("sheaf gluing failed: " + what) {}
};

struct LawViolation : Error {
    explicit LawViolation(const std::string& what) : Error("presheaf law violated: " + what) {}
};

struct IdentityViolation : Error {
    explicit IdentityViolation(const std::string& what) : Error("subsheaf identity violated: " + what) {}
};

struct ParseError : Error {
    ParseError(const std::string& what, std::size_t column)
        : Error(what + " at column " + std::to_string(column)), column(column) {}
    std::size_t column;
};

struct UnknownSuite : Error {
    explicit UnknownSuite(const std::string& name) : Error("unknown verification suite: " + name) {}
};

struct IoError : Error {
    explicit IoError(const std::string& what) : Error("i/o error: " + what) {}
};

}  // namespace qpb
