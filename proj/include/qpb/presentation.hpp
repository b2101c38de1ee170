#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qpb/monomial.hpp"
#include "qpb/scalar.hpp"

namespace qpb {

class Element;
struct HopfData;

using RawTerms = std::map<Monomial, RatQ>;

/// Left-hand side of a rewrite rule: one letter (unary elimination) or two
/// adjacent letters, each taken with exponent +-1.
struct RuleKey {
    int g1;
    int s1;
    int g2 = -1;  // -1 marks a unary rule
    int s2 = 0;

    auto operator<=>(const RuleKey&) const = default;
};

/// A defining relation, kept for well-definedness checks and the relations
/// suite. Both sides are raw (unnormalized) word combinations, so checks
/// exercise the rewriter: lhs word == sum of coef * word on the rhs.
struct DefiningRelation {
    std::string name;
    Word lhs;
    std::vector<std::pair<Word, RatQ>> rhs;
};

/// A presented algebra over Q(q) with a terminating rewrite system producing
/// canonical normal forms. Immutable once shared.
class Presentation : public std::enable_shared_from_this<Presentation> {
public:
    explicit Presentation(std::string name) : name_(std::move(name)) {}

    const std::string& name() const { return name_; }
    const std::vector<GeneratorInfo>& generators() const { return gens_; }
    int generatorCount() const { return static_cast<int>(gens_.size()); }
    const GeneratorInfo& gen(int i) const { return gens_[static_cast<std::size_t>(i)]; }
    int generatorIndex(const std::string& name) const;   // -1 if absent
    std::optional<std::pair<int, int>> letterByName(const std::string& name) const;  // (gen, sign)

    long stepBudget() const { return stepBudget_; }
    void setStepBudget(long b) { stepBudget_ = b; }
    const std::string& terminationNote() const { return terminationNote_; }
    const std::vector<DefiningRelation>& relations() const { return relations_; }
    const std::map<RuleKey, RawTerms>& rules() const { return rules_; }

    // --- construction (factories only; presentations are frozen afterwards)
    int addGenerator(GeneratorInfo info);
    void addRule(RuleKey key, RawTerms rhs);
    /// Adds the rewrite hi*lo -> c*lo*hi (requires hi > lo in generator order)
    /// together with the inverse-letter variants for every invertible
    /// generator involved; inverting one letter inverts the scalar.
    void addSwapRule(int hiGen, int loGen, const RatQ& c);
    void addRelation(DefiningRelation rel);
    void setTerminationNote(std::string s) { terminationNote_ = std::move(s); }
    void attachHopf(std::shared_ptr<const HopfData> h) { hopf_ = std::move(h); }

    const HopfData& hopf() const;
    bool hasHopf() const { return hopf_ != nullptr; }

    // --- rewriting
    /// Normalizes coef * word; throws StepLimitExceeded past the budget.
    RawTerms normalizeWord(const Word& w, const RatQ& coef = RatQ::one()) const;
    RawTerms normalizeTerms(const RawTerms& terms) const;
    bool isNormal(const Monomial& m) const;

    // --- gradings and enumeration
    int degreeOf(const Monomial& m) const;
    int weightOf(const Monomial& m) const;
    /// All normal monomials of the given total degree, |exponent| <= bound.
    std::vector<Monomial> basisOfDegree(int degree, int bound) const;
    /// All normal monomials with sum of |exponents| <= maxAbs, each |e| <= bound,
    /// optionally restricted to a fixed coaction weight.
    std::vector<Monomial> monomialWindow(int maxAbs, int bound, std::optional<int> weight = {}) const;

private:
    friend class Element;

    std::string name_;
    std::vector<GeneratorInfo> gens_;
    std::map<RuleKey, RawTerms> rules_;
    std::vector<DefiningRelation> relations_;
    std::string terminationNote_;
    long stepBudget_ = 1000000;
    std::shared_ptr<const HopfData> hopf_;
};

using PresPtr = std::shared_ptr<const Presentation>;

/// Exhaustive local-confluence check: every word over unit letters up to the
/// given length whose one-step reducts exist must reduce to a single normal
/// form along every reduction order.
struct ConfluenceReport {
    long wordsChecked = 0;
    std::vector<std::string> violations;
    bool clean() const { return violations.empty(); }
};

ConfluenceReport checkConfluence(const PresPtr& p, int maxOverlapLen, int threads = 0);

}  // namespace qpb
