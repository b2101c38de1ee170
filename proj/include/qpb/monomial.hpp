#pragma once

#include <compare>
#include <string>
#include <vector>

namespace qpb {

/// One generator of a presented algebra. index is the position in the
/// presentation's total order used by rewriting.
struct GeneratorInfo {
    std::string name;
    std::string invName;  // rendering name for negative powers, "" if none
    bool invertible = false;
    int degree = 1;  // total-degree grading
    int weight = 0;  // coaction-weight grading
};

/// A letter of a word: generator index and a nonzero exponent.
struct Letter {
    int gen;
    int exp;
    bool operator==(const Letter&) const = default;
};

using Word = std::vector<Letter>;

/// Canonical monomial: factors sorted by strictly increasing generator index,
/// all exponents nonzero. The empty product is the unit.
struct Monomial {
    std::vector<std::pair<int, int>> factors;  // (generator index, exponent)

    static Monomial unit() { return Monomial{}; }
    static Monomial gen(int g, int e = 1) {
        Monomial m;
        if (e != 0) m.factors.push_back({g, e});
        return m;
    }

    bool isUnit() const { return factors.empty(); }
    int exponentOf(int g) const {
        for (const auto& [gen, e] : factors)
            if (gen == g) return e;
        return 0;
    }

    Word word() const {
        Word w;
        w.reserve(factors.size());
        for (const auto& [g, e] : factors) w.push_back({g, e});
        return w;
    }

    auto operator<=>(const Monomial&) const = default;
};

}  // namespace qpb
